#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace helm {

using cplx = std::complex<double>;

/**
 * Grid: truncated periodic discretization of R^d.
 *
 * The box is [-L, L)^d sampled at N points per axis with spacing h = 2L/N,
 * physical points x_j = -L + j*h.  The frequency lattice is xi = (pi/L)*m
 * with m in {-N/2, ..., N/2 - 1}, stored in the same centered order, so
 * flat index j along an axis corresponds to mode m = j - N/2.
 */
struct Grid {
    int d = 0;       // spatial dimension, 2 or 3
    int N = 0;       // points per axis (even)
    double L = 0.0;  // half box-length
    double h = 0.0;  // spacing 2L/N

    std::size_t size() const {
        std::size_t n = 1;
        for (int a = 0; a < d; ++a) n *= static_cast<std::size_t>(N);
        return n;
    }
    // Physical coordinate of per-axis index j in 0..N-1.
    double x_of(int j) const { return -L + h * j; }
    // Frequency of per-axis index j in 0..N-1 (centered order).
    double xi_of(int j) const { return (M_PI / L) * (j - N / 2); }
    // Largest per-axis lattice frequency magnitude.
    double xi_max() const { return (M_PI / L) * (N / 2); }

    bool operator==(const Grid&) const = default;
};

Grid make_grid(int d, int N, double L);

enum class Rep { physical, frequency };

/**
 * SpectralField: complex field over a Grid in either the physical or the
 * frequency representation (tagged).  Storage is row-major over the d axes.
 */
struct SpectralField {
    Grid grid;
    Rep rep = Rep::physical;
    std::vector<cplx> v;

    SpectralField() = default;
    SpectralField(const Grid& g, Rep r)
        : grid(g), rep(r), v(g.size(), cplx(0.0, 0.0)) {}

    std::size_t size() const { return v.size(); }
    cplx& operator[](std::size_t i) { return v[i]; }
    const cplx& operator[](std::size_t i) const { return v[i]; }
};

/** WeightSpec: the weight <lambda*x>^(sign*eta) on the physical grid. */
struct WeightSpec {
    double eta = 0.0;   // exponent, >= 0
    int sign = +1;      // +1 or -1
    double lambda = 1.0;  // rescale parameter, > 0
};

// Decompose flat index into per-axis indices (row-major).
inline void unflatten(const Grid& g, std::size_t flat, int* idx) {
    for (int a = g.d - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % g.N);
        flat /= g.N;
    }
}
inline std::size_t flatten(const Grid& g, const int* idx) {
    std::size_t f = 0;
    for (int a = 0; a < g.d; ++a) f = f * g.N + idx[a];
    return f;
}

// Physical / frequency coordinates of a flat index.
inline void coords_x(const Grid& g, std::size_t flat, double* x) {
    int idx[3];
    unflatten(g, flat, idx);
    for (int a = 0; a < g.d; ++a) x[a] = g.x_of(idx[a]);
}
inline void coords_xi(const Grid& g, std::size_t flat, double* xi) {
    int idx[3];
    unflatten(g, flat, idx);
    for (int a = 0; a < g.d; ++a) xi[a] = g.xi_of(idx[a]);
}

/**
 * Unitary-with-measure discrete Fourier transform.
 *
 * Forward:  fhat(xi_m) = (2*pi)^(-d/2) h^d sum_j f(x_j) e^{-i xi_m . x_j}
 * Inverse:  f(x_j) = (2*pi)^(-d/2) (pi/L)^d sum_m fhat(xi_m) e^{+i xi_m . x_j}
 *
 * With these normalizations the round trip is exact and Parseval holds:
 *   sum_j |f|^2 h^d = sum_m |fhat|^2 (pi/L)^d.
 * The direction is implied by the field tag; a mismatch throws.
 */
SpectralField transform(const SpectralField& f, Rep target);

// Convenience: return the field in the requested representation.
inline SpectralField as_rep(const SpectralField& f, Rep target) {
    return f.rep == target ? f : transform(f, target);
}

/** Pointwise weight field <lambda*x>^(sign*eta) on the physical grid. */
SpectralField weight_field(const WeightSpec& w, const Grid& grid);

/**
 * Riemann-sum weighted L^p norm || f * w ||_p with cell measure h^d;
 * p = infinity (use weighted_lp_norm(f, inf_p, w)) takes the max.
 */
double weighted_lp_norm(const SpectralField& f, double p, const WeightSpec& w);

inline constexpr double inf_p = std::numeric_limits<double>::infinity();

/** Fourier multiplier: inverse transform of symbol(xi) * fhat(xi). */
using Symbol = std::function<cplx(std::span<const double>)>;
SpectralField apply_multiplier(const SpectralField& f, const Symbol& symbol);

// Same, returning the frequency-representation result (skips the final
// inverse transform); used by norm code that stays in frequency space.
SpectralField apply_multiplier_freq(const SpectralField& f, const Symbol& symbol);

// --- field arithmetic helpers -------------------------------------------

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(cplx s, const SpectralField& a);
SpectralField pointwise(const SpectralField& a, const SpectralField& b);

/** L^2 norm with the natural cell measure (h^d or (pi/L)^d). */
double l2_norm(const SpectralField& f);
double max_abs(const SpectralField& f);

/** Relative L^2 distance ||a-b|| / max(||a||, ||b||); 0 if both vanish. */
double rel_l2_error(const SpectralField& a, const SpectralField& b);

}  // namespace helm
