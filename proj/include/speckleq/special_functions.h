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

#ifndef SPECKLEQ_SPECIAL_FUNCTIONS_H
#define SPECKLEQ_SPECIAL_FUNCTIONS_H

namespace speckleq {

/// Modified Bessel function of the second kind K_nu(z) for nu >= 0, z > 0.
/// Temme's series for z < 2, Steed's continued fraction otherwise, then upward recurrence in
/// order. Throws DomainError for z <= 0 or nu < 0.
double bessel_k(double nu, double z);

/// log K_nu(z), finite wherever K_nu(z) would overflow or underflow a double.
double log_bessel_k(double nu, double z);

/// 1/Gamma(1 + mu) and 1/Gamma(1 - mu) for |mu| <= 1/2 along with the Temme combinations
/// gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu) and gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2.
struct TemmeGammas {
    double gam1;
    double gam2;
    double inv_gamma_plus;
    double inv_gamma_minus;
};
TemmeGammas temme_gammas(double mu);

}  // namespace speckleq

#endif
