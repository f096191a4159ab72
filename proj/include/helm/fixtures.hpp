#pragma once

#include <cstdint>
#include <random>

#include "helm/grid.hpp"
#include "helm/littlewood_paley.hpp"

namespace helm {

/**
 * Deterministic synthetic fields.  Every generator consumes a
 * std::mt19937_64 stream in flat-index order, so a given (grid, seed)
 * reproduces the same field byte for byte on every platform with IEEE
 * doubles.
 */
namespace fixtures {

// Complex Gaussian frequency content restricted to |xi| <= cutoff, returned
// in the physical representation.
inline SpectralField random_band_limited(const Grid& grid, double cutoff,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField fh(grid, Rep::frequency);
    double xi[3];
    for (std::size_t i = 0; i < fh.size(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        coords_xi(grid, i, xi);
        double r2 = 0.0;
        for (int a = 0; a < grid.d; ++a) r2 += xi[a] * xi[a];
        if (r2 <= cutoff * cutoff) fh.v[i] = cplx(re, im);
    }
    return transform(fh, Rep::physical);
}

// Smooth frequency envelope exp(-|xi|^2 / (2 w^2)) times Gaussian noise,
// truncated at |xi| <= cutoff; physically smooth and effectively localized.
inline SpectralField random_smooth(const Grid& grid, double w, double cutoff,
                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField fh(grid, Rep::frequency);
    double xi[3];
    for (std::size_t i = 0; i < fh.size(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        coords_xi(grid, i, xi);
        double r2 = 0.0;
        for (int a = 0; a < grid.d; ++a) r2 += xi[a] * xi[a];
        if (r2 <= cutoff * cutoff)
            fh.v[i] = cplx(re, im) * std::exp(-0.5 * r2 / (w * w));
    }
    return transform(fh, Rep::physical);
}

// Compactly supported C-infinity radial bump: 1 at the origin, 0 for
// |x - c| >= R, built from the plateau transition.
inline SpectralField radial_bump(const Grid& grid, double R,
                                 const std::array<double, 3>& center = {0, 0, 0},
                                 double amplitude = 1.0) {
    SpectralField out(grid, Rep::physical);
    double x[3];
    for (std::size_t i = 0; i < out.size(); ++i) {
        coords_x(grid, i, x);
        double r2 = 0.0;
        for (int a = 0; a < grid.d; ++a)
            r2 += (x[a] - center[a]) * (x[a] - center[a]);
        out.v[i] = amplitude * smooth_step_down(std::sqrt(r2) / R);
    }
    return out;
}

// Lattice plane wave e^{i xi0 . x} with per-axis mode numbers m (so
// xi0 = (pi/L) m).
inline SpectralField plane_wave(const Grid& grid, const std::array<int, 3>& m) {
    SpectralField out(grid, Rep::physical);
    double x[3];
    for (std::size_t i = 0; i < out.size(); ++i) {
        coords_x(grid, i, x);
        double phase = 0.0;
        for (int a = 0; a < grid.d; ++a) phase += (M_PI / grid.L) * m[a] * x[a];
        out.v[i] = std::polar(1.0, phase);
    }
    return out;
}

// Rough coefficient synthesis: random block amplitudes with prescribed
// dyadic decay 2^{-n alpha}, targeting Besov regularity alpha.  Physical
// envelope keeps the support inside B(0, R).
inline SpectralField block_decay_field(const Grid& grid, const PartitionPair& pp,
                                       double alpha, double R,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField fh(grid, Rep::frequency);
    double xi[3];
    for (std::size_t i = 0; i < fh.size(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        coords_xi(grid, i, xi);
        double r2 = 0.0;
        for (int a = 0; a < grid.d; ++a) r2 += xi[a] * xi[a];
        const double r = std::sqrt(r2);
        // Dyadic decay profile ~ (1 + |xi|)^{-alpha} realizes 2^{-n alpha}
        // amplitudes across blocks; keep a margin below the top block.
        if (r <= 0.75 * std::ldexp(1.0, pp.jmax))
            fh.v[i] = cplx(re, im) * std::pow(1.0 + r, -alpha);
    }
    SpectralField f = transform(fh, Rep::physical);
    if (R > 0.0) {
        double x[3];
        for (std::size_t i = 0; i < f.size(); ++i) {
            coords_x(grid, i, x);
            double r2 = 0.0;
            for (int a = 0; a < grid.d; ++a) r2 += x[a] * x[a];
            f.v[i] *= smooth_step_down((std::sqrt(r2) - 0.5 * R) / (0.5 * R));
        }
    }
    return f;
}

// Frequency field with a smooth radial profile that vanishes identically
// on the annulus {|r - r0| <= gap} (spectral-gap fixture).
inline SpectralField spectral_gap_field(const Grid& grid, double r0, double gap,
                                        double cutoff, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField fh(grid, Rep::frequency);
    double xi[3];
    for (std::size_t i = 0; i < fh.size(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        coords_xi(grid, i, xi);
        double r2 = 0.0;
        for (int a = 0; a < grid.d; ++a) r2 += xi[a] * xi[a];
        const double r = std::sqrt(r2);
        // Smooth notch: 0 on |r - r0| <= gap, 1 beyond 2 gap.
        const double notch = 1.0 - smooth_step_down((std::abs(r - r0) - gap) / gap);
        const double envelope = std::exp(-0.5 * r2 / (cutoff * cutoff));
        fh.v[i] = cplx(re, im) * notch * envelope;
    }
    return transform(fh, Rep::physical);
}

// Scale a field to unit L^2 norm (no-op on the zero field).
inline SpectralField unit_l2(SpectralField f) {
    const double n = l2_norm(f);
    if (n > 0.0)
        for (auto& c : f.v) c /= n;
    return f;
}

}  // namespace fixtures
}  // namespace helm
