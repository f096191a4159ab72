#pragma once

#include <array>
#include <optional>

#include "helm/grid.hpp"

namespace helm {

/**
 * FaddeevParams: the symbol data (k, gamma, tau) with the derived shell
 * radius r_kg = (k^2 + |gamma|^2)^(1/2).
 */
struct FaddeevParams {
    double k = 1.0;
    std::array<double, 3> gamma{0.0, 0.0, 0.0};
    double tau = 0.0;

    double gamma_norm2() const {
        return gamma[0] * gamma[0] + gamma[1] * gamma[1] + gamma[2] * gamma[2];
    }
    double r_kg() const { return std::sqrt(k * k + gamma_norm2()); }
    bool has_drift() const { return gamma_norm2() > 0.0; }

    // Centers of the admissible windows: eps0 = min{r_kg/4, 1}/2 and
    // tau = eps0^2 / 2 (signed).
    double default_eps0() const { return 0.5 * std::min(r_kg() / 4.0, 1.0); }
    double default_tau(int sign = +1) const {
        const double e = default_eps0();
        return 0.5 * sign * e * e;
    }
};

/**
 * ShellCutoff: smooth indicator of the frequency shell |xi| ~ r0, i.e.
 * psi(|r - r0| / eps0) with psi = 1 on B(0,1/2) and supp psi in B(0,1).
 */
struct ShellCutoff {
    double r0 = 1.0;
    double eps0 = 0.125;

    // The underlying profile psi on [0, infinity).
    static double psi(double t);
    // psi(|r - r0| / eps0).
    double at(double r) const { return psi(std::abs(r - r0) / eps0); }
};

/** The Faddeev symbol m(xi) = |xi|^2 - k^2 - |gamma|^2 + 2i gamma.xi - i tau. */
cplx symbol_m(std::span<const double> xi, const FaddeevParams& params);

/**
 * Regularized resolvent (I - Laplace)^{s/2} H_{k,gamma,tau}: the lattice
 * multiplier (1+|xi|^2)^{s/2} / m(xi).  Requires tau != 0 and s in [0, 2].
 * When gamma != 0 the Nyquist modes are zeroed first (the 2i gamma.xi term
 * is odd in xi).
 */
SpectralField regularized_apply(const SpectralField& f, const FaddeevParams& params,
                                double s);

/**
 * Shell-split pairing <(I-Laplace)^{s/2} H f, g> decomposed into the
 * off-shell part I1, the frozen-on-shell part I2 (spectral data evaluated
 * at radius r0 along each lattice direction), and the difference part I3.
 * By construction I1 + I2 + I3 equals the direct multiplier pairing.
 */
struct ShellSplit {
    cplx I1{0.0, 0.0};
    cplx I2{0.0, 0.0};
    cplx I3{0.0, 0.0};

    cplx total() const { return I1 + I2 + I3; }
};

ShellSplit shell_split_pairing(const SpectralField& f, const SpectralField& g,
                               const FaddeevParams& params, double s,
                               const ShellCutoff& cutoff);

/** Direct multiplier pairing <(I-Laplace)^{s/2} H f, g> for cross-checks. */
cplx direct_pairing(const SpectralField& f, const SpectralField& g,
                    const FaddeevParams& params, double s);

/**
 * Evaluate the semi-discrete Fourier transform of a physical field at an
 * arbitrary (off-lattice) frequency: the trigonometric interpolant of fhat.
 */
cplx eval_fourier(const SpectralField& f_phys, std::span<const double> xi);

// --- limiting absorption ---------------------------------------------------

enum class LapBackend {
    automatic,   // free_space when gamma = 0, lattice otherwise
    lattice,     // Richardson extrapolation of the lattice multiplier
    free_space,  // damped free-space kernel convolution, extrapolated in tau
};

struct LimitResult {
    SpectralField field;              // extrapolated H^{+/-} f
    std::vector<double> increments;   // Cauchy increments along the schedule
    double error_estimate = 0.0;      // last extrapolation increment
    bool converged = false;           // increments decreased monotonically
};

/**
 * Limiting-absorption operator H^{+/-}_{k,gamma} f: Richardson-style
 * extrapolation of H_{k,gamma,tau} f along a decreasing tau schedule
 * (default tau_n = eps0^2 2^{-n}, n = 1..8).  Sign selects the boundary
 * value (+ outgoing, - incoming).
 *
 * Sign convention: H^{+/-} = -(Laplace + k^2 +/- i0)^{-1}, so for gamma = 0,
 * d = 3 the + limit is convolution with the outgoing kernel e^{ikr}/(4 pi r).
 */
LimitResult limiting_apply(const SpectralField& f, double k,
                           const std::array<double, 3>& gamma, int sign,
                           const std::vector<double>& schedule = {},
                           LapBackend backend = LapBackend::automatic,
                           double s = 0.0);

/**
 * Free-space outgoing Green convolution u(x) = sum_y G_k(x-y) g(y) h^d with
 *   d = 3: G_k(r) = e^{ikr} / (4 pi r)
 *   d = 2: G_k(r) = (i/4) H_0^(1)(k r)
 * evaluated as an exact circulant sum on a 2x zero-padded grid; the diagonal
 * cell uses the analytic cell average of the kernel singularity.
 */
SpectralField green_convolve(const SpectralField& g, double k);

/** Same convolution with a complex wavenumber kappa (Im kappa >= 0). */
SpectralField free_space_apply(const SpectralField& g, cplx kappa);

/**
 * Relative L^2 residual of the conjugation identity
 *   e^{gamma.x} (Laplace + r_kg^2 + 2 gamma.grad) f = (Laplace + k^2) e^{gamma.x} f,
 * both sides evaluated spectrally.  Guard: |gamma| L <= 30.
 */
double conjugation_residual(const SpectralField& f, double k,
                            const std::array<double, 3>& gamma);

// Pointwise multiplication by e^{+/- gamma.x} (sign via the gamma argument).
SpectralField exp_drift(const SpectralField& f, const std::array<double, 3>& gamma);

}  // namespace helm
