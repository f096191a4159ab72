#include "helm/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>

namespace helm {

Grid make_grid(int d, int N, double L) {
    if (d != 2 && d != 3)
        throw std::invalid_argument("make_grid: dimension must be 2 or 3");
    if (N < 4 || (N % 2) != 0)
        throw std::invalid_argument("make_grid: N must be even and >= 4");
    if (!(L > 0.0))
        throw std::invalid_argument("make_grid: L must be positive");
    Grid g;
    g.d = d;
    g.N = N;
    g.L = L;
    g.h = 2.0 * L / N;
    return g;
}

namespace {

// Raw d-dimensional DFT via FFTW (no normalization), in place on buf.
void raw_dft(const Grid& g, std::vector<cplx>& buf, int fftw_sign) {
    int n[3] = {g.N, g.N, g.N};
    fftw_complex* data = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan =
        fftw_plan_dft(g.d, n, data, data, fftw_sign, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

// Parity of the sum of per-axis indices of a flat index.
inline int index_parity(const Grid& g, std::size_t flat) {
    int p = 0;
    for (int a = 0; a < g.d; ++a) {
        p ^= static_cast<int>(flat % g.N) & 1;
        flat /= g.N;
    }
    return p;
}

// Parity of sum over axes of (j - N/2) for a flat index.
inline int mode_parity(const Grid& g, std::size_t flat) {
    int half = g.N / 2;
    int p = 0;
    for (int a = 0; a < g.d; ++a) {
        p ^= (static_cast<int>(flat % g.N) - half) & 1;
        flat /= g.N;
    }
    return p;
}

}  // namespace

SpectralField transform(const SpectralField& f, Rep target) {
    if (f.rep == target)
        throw std::invalid_argument(
            "transform: field already in the requested representation");
    SpectralField out(f.grid, target);
    const Grid& g = f.grid;
    const std::size_t n = f.size();
    out.v = f.v;

    // The centered lattice (x_j = -L + j h, xi_m = (pi/L)(m - N/2)) maps to
    // the standard DFT after conjugation with (-1)^j and (-1)^(m - N/2)
    // phase factors, since e^{-i xi_m x_j} = (-1)^(m-N/2) (-1)^j
    // e^{-2 pi i m j / N} per axis.
    if (target == Rep::frequency) {
        for (std::size_t i = 0; i < n; ++i)
            if (index_parity(g, i)) out.v[i] = -out.v[i];
        raw_dft(g, out.v, FFTW_FORWARD);
        const double scale =
            std::pow(2.0 * M_PI, -0.5 * g.d) * std::pow(g.h, g.d);
        for (std::size_t i = 0; i < n; ++i) {
            out.v[i] *= scale;
            if (mode_parity(g, i)) out.v[i] = -out.v[i];
        }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            if (mode_parity(g, i)) out.v[i] = -out.v[i];
        raw_dft(g, out.v, FFTW_BACKWARD);
        const double scale =
            std::pow(2.0 * M_PI, -0.5 * g.d) * std::pow(M_PI / g.L, g.d);
        for (std::size_t i = 0; i < n; ++i) {
            out.v[i] *= scale;
            if (index_parity(g, i)) out.v[i] = -out.v[i];
        }
    }
    return out;
}

SpectralField weight_field(const WeightSpec& w, const Grid& grid) {
    if (!(w.lambda > 0.0))
        throw std::invalid_argument("weight_field: lambda must be positive");
    if (w.sign != 1 && w.sign != -1)
        throw std::invalid_argument("weight_field: sign must be +1 or -1");
    SpectralField out(grid, Rep::physical);
    const double expo = 0.5 * w.sign * w.eta;
    double x[3];
    for (std::size_t i = 0; i < out.size(); ++i) {
        coords_x(grid, i, x);
        double r2 = 0.0;
        for (int a = 0; a < grid.d; ++a) r2 += (w.lambda * x[a]) * (w.lambda * x[a]);
        out.v[i] = std::pow(1.0 + r2, expo);
    }
    return out;
}

double weighted_lp_norm(const SpectralField& f, double p, const WeightSpec& w) {
    if (f.rep != Rep::physical)
        throw std::invalid_argument(
            "weighted_lp_norm: field must be in the physical representation");
    if (p < 1.0)
        throw std::invalid_argument("weighted_lp_norm: p must be >= 1");
    SpectralField wf = weight_field(w, f.grid);
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            m = std::max(m, std::abs(f.v[i]) * wf.v[i].real());
        return m;
    }
    const double cell = std::pow(f.grid.h, f.grid.d);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s += std::pow(std::abs(f.v[i]) * wf.v[i].real(), p);
    return std::pow(s * cell, 1.0 / p);
}

namespace {

SpectralField multiplied_freq(const SpectralField& f, const Symbol& symbol) {
    SpectralField fh = as_rep(f, Rep::frequency);
    double xi[3];
    for (std::size_t i = 0; i < fh.size(); ++i) {
        coords_xi(fh.grid, i, xi);
        cplx s = symbol(std::span<const double>(xi, fh.grid.d));
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw std::domain_error(
                "apply_multiplier: symbol is not finite on a lattice point");
        fh.v[i] *= s;
    }
    return fh;
}

}  // namespace

SpectralField apply_multiplier(const SpectralField& f, const Symbol& symbol) {
    return transform(multiplied_freq(f, symbol), Rep::physical);
}

SpectralField apply_multiplier_freq(const SpectralField& f, const Symbol& symbol) {
    return multiplied_freq(f, symbol);
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid == b.grid) || a.rep != b.rep)
        throw std::invalid_argument("field addition: grid or representation mismatch");
    SpectralField out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.v[i] += b.v[i];
    return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid == b.grid) || a.rep != b.rep)
        throw std::invalid_argument("field subtraction: grid or representation mismatch");
    SpectralField out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.v[i] -= b.v[i];
    return out;
}

SpectralField operator*(cplx s, const SpectralField& a) {
    SpectralField out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.v[i] *= s;
    return out;
}

SpectralField pointwise(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid == b.grid) || a.rep != b.rep)
        throw std::invalid_argument("pointwise product: grid or representation mismatch");
    SpectralField out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.v[i] *= b.v[i];
    return out;
}

double l2_norm(const SpectralField& f) {
    const double cell = f.rep == Rep::physical
                            ? std::pow(f.grid.h, f.grid.d)
                            : std::pow(M_PI / f.grid.L, f.grid.d);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::norm(f.v[i]);
    return std::sqrt(s * cell);
}

double max_abs(const SpectralField& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.v[i]));
    return m;
}

double rel_l2_error(const SpectralField& a, const SpectralField& b) {
    double na = l2_norm(a), nb = l2_norm(b);
    double denom = std::max(na, nb);
    if (denom == 0.0) return 0.0;
    return l2_norm(a - b) / denom;
}

}  // namespace helm
