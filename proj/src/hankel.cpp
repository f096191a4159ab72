#include "helm/hankel.hpp"

#include <cmath>
#include <stdexcept>

namespace helm {

namespace {

constexpr double euler_gamma = 0.57721566490153286060651209008240243;

using cd = std::complex<double>;

// J_0 and Y_0 by their ascending series; reliable for |z| <~ 14.
cd h0_series(cd z) {
    const cd q = -0.25 * z * z;  // (-z^2/4)
    cd term(1.0, 0.0);
    cd j0 = term;
    cd ysum(0.0, 0.0);  // sum (-1)^{k+1} H_k (z^2/4)^k / (k!)^2
    double harmonic = 0.0;
    for (int k = 1; k <= 60; ++k) {
        term *= q / static_cast<double>(k * k);
        harmonic += 1.0 / k;
        j0 += term;
        ysum += -term * harmonic;  // (-1)^{k+1}(z^2/4)^k/(k!)^2 = -term
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(j0))) break;
    }
    const cd y0 = (2.0 / M_PI) * ((std::log(0.5 * z) + euler_gamma) * j0 + ysum);
    return j0 + cd(0.0, 1.0) * y0;
}

// Large-argument asymptotic expansion, valid for Im z >= 0, |z| >~ 12:
// H_0^(1)(z) ~ sqrt(2/(pi z)) e^{i(z - pi/4)} sum_k (-i)^k [(2k-1)!!]^2 / (k! (8z)^k)
cd h0_asymptotic(cd z) {
    cd sum(1.0, 0.0);
    cd term(1.0, 0.0);
    double prev = 1.0;
    for (int k = 1; k <= 24; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= cd(0.0, -1.0) * (odd * odd) / (8.0 * k) / z;
        const double mag = std::abs(term);
        if (mag > prev) break;  // divergent tail of the asymptotic series
        sum += term;
        prev = mag;
        if (mag < 1e-16) break;
    }
    const cd amp = std::sqrt(2.0 / (M_PI * z));
    const cd phase = std::exp(cd(0.0, 1.0) * z - cd(0.0, M_PI / 4.0));
    return amp * phase * sum;
}

}  // namespace

cd hankel0_first(cd z) {
    if (z == cd(0.0, 0.0))
        throw std::domain_error("hankel0_first: argument must be nonzero");
    return std::abs(z) <= 12.0 ? h0_series(z) : h0_asymptotic(z);
}

}  // namespace helm
