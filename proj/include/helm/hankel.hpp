#pragma once

#include <complex>

namespace helm {

/**
 * Hankel function of the first kind H_0^(1)(z) for complex argument with
 * Im z >= 0 (upper half plane, where the outgoing kernel lives).
 *
 * Power series for J_0 and Y_0 at moderate |z|; the standard large-argument
 * asymptotic expansion beyond.  Accuracy ~1e-9 near the crossover, better
 * elsewhere.
 */
std::complex<double> hankel0_first(std::complex<double> z);

}  // namespace helm
