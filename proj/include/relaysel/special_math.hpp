/*
   Copyright 2026 The relaysel Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

namespace relaysel {

/// Modified Bessel function of the second kind, order one.
///
/// Power series for x <= 2, Steed's continued fraction above that. Relative
/// error is below 1e-12 on (0, 700]; results that underflow come back as 0.
/// Throws std::domain_error for x <= 0 or non-finite x.
double bessel_k1(double x);

/// 1 - x K1(x), evaluated without cancellation for small x.
///
/// The AF end-to-end SNR CDF is a small difference from one at high power;
/// this keeps its relative accuracy when x K1(x) is close to 1. Defined at 0.
double one_minus_x_bessel_k1(double x);

/// ln(n!) via lgamma.
double log_factorial(unsigned n);

/// ln C(n, k). Throws std::domain_error if k > n or n > 10^6.
double log_binomial(unsigned n, unsigned k);

}  // namespace relaysel
