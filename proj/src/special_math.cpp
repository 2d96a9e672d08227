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

#include "relaysel/special_math.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace relaysel {

namespace {

constexpr double kSeriesCutoff = 2.0;
constexpr int kMaxTerms = 200;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr unsigned kExactBinomialLimit = 66;

void require_positive(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw std::domain_error("bessel_k1: argument must be positive and finite");
    }
}

// Series pieces shared by K1 and 1 - x K1 for x <= 2:
//   I1(x)    = (x/2) sum_k (x^2/4)^k / (k! (k+1)!)
//   tail(x)  = sum_k [psi(k+1) + psi(k+2)] (x^2/4)^k / (k! (k+1)!)
struct SmallArgSeries {
    double i1 = 0.0;
    double tail = 0.0;
};

SmallArgSeries small_arg_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;  // (x^2/4)^k / (k! (k+1)!)
    double psi_k1 = -std::numbers::egamma;        // psi(k+1)
    double psi_k2 = 1.0 - std::numbers::egamma;   // psi(k+2)
    double sum_i = 0.0;
    double sum_tail = 0.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        sum_i += term;
        const double t = (psi_k1 + psi_k2) * term;
        sum_tail += t;
        if (std::abs(term) < kEps * std::abs(sum_i) && std::abs(t) < kEps * std::abs(sum_tail)) {
            break;
        }
        term *= q / ((k + 1.0) * (k + 2.0));
        psi_k1 += 1.0 / (k + 1.0);
        psi_k2 += 1.0 / (k + 2.0);
    }
    return {0.5 * x * sum_i, sum_tail};
}

// Steed's method (continued fraction CF2, Temme normalisation) for K0, K1 at x >= 2.
double k1_continued_fraction(double x) {
    constexpr double a1 = 0.25;  // 1/4 - mu^2 with mu = 0
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 10 * kMaxTerms; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) {
            break;
        }
    }
    h *= a1;
    const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
    return k0 * (x + 0.5 - h) / x;
}

}  // namespace

double bessel_k1(double x) {
    require_positive(x);
    if (x <= kSeriesCutoff) {
        const auto s = small_arg_series(x);
        return 1.0 / x + std::log(0.5 * x) * s.i1 - 0.25 * x * s.tail;
    }
    return k1_continued_fraction(x);
}

double one_minus_x_bessel_k1(double x) {
    if (x == 0.0) {
        return 0.0;  // x K1(x) -> 1
    }
    require_positive(x);
    if (x <= kSeriesCutoff) {
        const auto s = small_arg_series(x);
        return -x * std::log(0.5 * x) * s.i1 + 0.25 * x * x * s.tail;
    }
    return 1.0 - x * k1_continued_fraction(x);
}

double log_factorial(unsigned n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

__extension__ typedef unsigned __int128 Wide;

double log_binomial(unsigned n, unsigned k) {
    if (k > n) {
        throw std::domain_error("log_binomial: k must not exceed n");
    }
    if (n > 1000000U) {
        throw std::domain_error("log_binomial: n exceeds supported range");
    }
    if (k == 0 || k == n) {
        return 0.0;
    }
    if (n <= kExactBinomialLimit) {
        // C(66, 33) < 2^63; the running product stays exact in 128 bits.
        const unsigned kk = k < n - k ? k : n - k;
        Wide c = 1;
        for (unsigned i = 1; i <= kk; ++i) {
            c = c * (n - kk + i) / i;
        }
        return std::log(static_cast<double>(c));
    }
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace relaysel
