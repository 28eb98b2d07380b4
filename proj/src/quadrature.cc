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

#include "speckleq/quadrature.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

namespace speckleq {

double integrate(const Integrand &f, double a, double b, double tolerance) {
    if (a == b) {
        return 0.0;
    }
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, tolerance);
}

double integrate_endpoint_singular(const Integrand &f, double a, double b, double tolerance) {
    if (a == b) {
        return 0.0;
    }
    thread_local boost::math::quadrature::tanh_sinh<double> rule;
    return rule.integrate([&f](double t) { return f(t); }, a, b, tolerance);
}

double integrate_sqrt_origin(const Integrand &f, double b, double tolerance) {
    double ub = std::isinf(b) ? b : std::sqrt(b);
    return integrate([&f](double u) { return u == 0 ? 0.0 : 2.0 * u * f(u * u); }, 0.0, ub, tolerance);
}

}  // namespace speckleq
