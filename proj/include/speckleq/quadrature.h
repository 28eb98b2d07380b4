// Copyright 2026 The speckleq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPECKLEQ_QUADRATURE_H
#define SPECKLEQ_QUADRATURE_H

#include <functional>
#include <limits>

namespace speckleq {

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod on [a, b]; b may be +infinity.
double integrate(const Integrand &f, double a, double b, double tolerance = 1e-13);

/// Tanh-sinh on [a, b], suited to integrable endpoint singularities.
double integrate_endpoint_singular(const Integrand &f, double a, double b, double tolerance = 1e-13);

/// Integral of f over [0, b] computed as the integral of 2u f(u^2) over [0, sqrt(b)]. Removes
/// x^(-1/2)-type and logarithmic singularities at the origin.
double integrate_sqrt_origin(const Integrand &f, double b = std::numeric_limits<double>::infinity(),
                             double tolerance = 1e-13);

}  // namespace speckleq

#endif
