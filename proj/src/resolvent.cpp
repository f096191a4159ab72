#include "helm/resolvent.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <tuple>

#include "helm/hankel.hpp"
#include "helm/littlewood_paley.hpp"

namespace helm {

double ShellCutoff::psi(double t) {
    // 1 on [0, 1/2], 0 outside [0, 1), smooth in between.
    return smooth_step_down((std::abs(t) - 0.5) / 0.5);
}

cplx symbol_m(std::span<const double> xi, const FaddeevParams& params) {
    double xi2 = 0.0, gdot = 0.0;
    for (std::size_t a = 0; a < xi.size(); ++a) {
        xi2 += xi[a] * xi[a];
        gdot += params.gamma[a] * xi[a];
    }
    return cplx(xi2 - params.k * params.k - params.gamma_norm2(),
                2.0 * gdot - params.tau);
}

namespace {

bool is_nyquist(const Grid& g, std::span<const double> xi) {
    const double neg_max = -g.xi_max();
    for (std::size_t a = 0; a < xi.size(); ++a)
        if (xi[a] == neg_max) return true;
    return false;
}

}  // namespace

SpectralField regularized_apply(const SpectralField& f, const FaddeevParams& params,
                                double s) {
    if (params.tau == 0.0)
        throw std::invalid_argument(
            "regularized_apply: tau must be nonzero (use limiting_apply)");
    if (s < 0.0 || s > 2.0)
        throw std::invalid_argument("regularized_apply: s must lie in [0, 2]");
    const bool drift = params.has_drift();
    const Grid& grid = f.grid;
    return apply_multiplier(f, [&, drift](std::span<const double> xi) -> cplx {
        if (drift && is_nyquist(grid, xi)) return cplx(0.0, 0.0);
        double xi2 = 0.0;
        for (double c : xi) xi2 += c * c;
        const cplx m = symbol_m(xi, params);
        if (std::abs(m) < 1e-300)
            throw std::domain_error("regularized_apply: symbol underflow");
        return std::pow(1.0 + xi2, 0.5 * s) / m;
    });
}

cplx eval_fourier(const SpectralField& f_phys, std::span<const double> xi) {
    if (f_phys.rep != Rep::physical)
        throw std::invalid_argument("eval_fourier: field must be physical");
    const Grid& g = f_phys.grid;
    cplx acc(0.0, 0.0);
    double x[3];
    for (std::size_t i = 0; i < f_phys.size(); ++i) {
        coords_x(g, i, x);
        double phase = 0.0;
        for (int a = 0; a < g.d; ++a) phase -= xi[a] * x[a];
        acc += f_phys.v[i] * std::polar(1.0, phase);
    }
    return acc * std::pow(2.0 * M_PI, -0.5 * g.d) * std::pow(g.h, g.d);
}

cplx direct_pairing(const SpectralField& f, const SpectralField& g,
                    const FaddeevParams& params, double s) {
    SpectralField fh = as_rep(f, Rep::frequency);
    SpectralField gh = as_rep(g, Rep::frequency);
    const double cell = std::pow(M_PI / fh.grid.L, fh.grid.d);
    cplx acc(0.0, 0.0);
    double xi[3];
    for (std::size_t i = 0; i < fh.size(); ++i) {
        coords_xi(fh.grid, i, xi);
        double xi2 = 0.0;
        for (int a = 0; a < fh.grid.d; ++a) xi2 += xi[a] * xi[a];
        const cplx m = symbol_m(std::span<const double>(xi, fh.grid.d), params);
        acc += std::pow(1.0 + xi2, 0.5 * s) / m * fh.v[i] * std::conj(gh.v[i]);
    }
    return acc * cell;
}

ShellSplit shell_split_pairing(const SpectralField& f, const SpectralField& g,
                               const FaddeevParams& params, double s,
                               const ShellCutoff& cutoff) {
    const double r0 = cutoff.r0;
    const double eps_limit = std::min(params.r_kg() / 4.0, 1.0);
    if (!(cutoff.eps0 > 0.0) || !(cutoff.eps0 < eps_limit))
        throw std::invalid_argument(
            "shell_split_pairing: eps0 outside (0, min{r_kg/4, 1})");
    if (params.tau == 0.0 || std::abs(params.tau) >= cutoff.eps0 * cutoff.eps0)
        throw std::invalid_argument(
            "shell_split_pairing: need 0 < |tau| < eps0^2");

    SpectralField fp = as_rep(f, Rep::physical);
    SpectralField gp = as_rep(g, Rep::physical);
    SpectralField fh = as_rep(f, Rep::frequency);
    SpectralField gh = as_rep(g, Rep::frequency);
    const Grid& grid = fh.grid;
    const double cell = std::pow(M_PI / grid.L, grid.d);

    ShellSplit split;
    double xi[3], omega[3];
    for (std::size_t i = 0; i < fh.size(); ++i) {
        coords_xi(grid, i, xi);
        double xi2 = 0.0;
        for (int a = 0; a < grid.d; ++a) xi2 += xi[a] * xi[a];
        const double r = std::sqrt(xi2);
        const cplx m = symbol_m(std::span<const double>(xi, grid.d), params);
        const cplx w = std::pow(1.0 + xi2, 0.5 * s) / m * cell;
        const cplx fg = fh.v[i] * std::conj(gh.v[i]);
        const double t = cutoff.at(r);
        split.I1 += (1.0 - t) * w * fg;
        if (t > 0.0) {
            // Spectral data frozen at radius r0 along the lattice direction.
            for (int a = 0; a < grid.d; ++a) omega[a] = xi[a] / r * r0;
            const cplx f0 = eval_fourier(fp, std::span<const double>(omega, grid.d));
            const cplx g0 = eval_fourier(gp, std::span<const double>(omega, grid.d));
            const cplx fg0 = f0 * std::conj(g0);
            split.I2 += t * w * fg0;
            split.I3 += t * w * (fg - fg0);
        }
    }
    return split;
}

// --- free-space convolution -------------------------------------------------

namespace {

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

// A2 = average of ln|x| over the square [-1,1]^2 = -1/2 + int_0^1 ln sqrt(1+t^2) dt.
double log_cell_constant() {
    static const double value = [] {
        std::vector<double> x, w;
        gauss_legendre(32, x, w);
        double c = 0.0;
        for (int i = 0; i < 32; ++i) {
            const double t = 0.5 * (x[i] + 1.0);
            c += 0.5 * w[i] * 0.5 * std::log(1.0 + t * t);
        }
        return c - 0.5;
    }();
    return value;
}

// B3 = int over [0,1]^3 of 1/|x| = (3/2) int over [0,1]^2 (u^2+v^2+1)^(-1/2).
double inv_r_cell_constant() {
    static const double value = [] {
        std::vector<double> x, w;
        gauss_legendre(32, x, w);
        double c = 0.0;
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) {
                const double u = 0.5 * (x[i] + 1.0);
                const double v = 0.5 * (x[j] + 1.0);
                c += 0.25 * w[i] * w[j] / std::sqrt(u * u + v * v + 1.0);
            }
        return 1.5 * c;
    }();
    return value;
}

cplx kernel_value(int d, cplx kappa, double r) {
    if (d == 3) return std::exp(cplx(0.0, 1.0) * kappa * r) / (4.0 * M_PI * r);
    return cplx(0.0, 0.25) * hankel0_first(kappa * r);
}

// Exact-cell-average replacement for the singular diagonal entry: the
// kernel splits into its radial singularity (analytic cell average) plus a
// bounded remainder (tensor Gauss-Legendre over the cell).
cplx kernel_diagonal(int d, cplx kappa, double h) {
    std::vector<double> x, w;
    gauss_legendre(12, x, w);
    cplx smooth(0.0, 0.0);
    if (d == 3) {
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j)
                for (int k = 0; k < 12; ++k) {
                    const double px = 0.5 * h * x[i];
                    const double py = 0.5 * h * x[j];
                    const double pz = 0.5 * h * x[k];
                    const double r = std::sqrt(px * px + py * py + pz * pz);
                    const cplx rem =
                        r == 0.0 ? cplx(0.0, 1.0) * kappa / (4.0 * M_PI)
                                 : (std::exp(cplx(0.0, 1.0) * kappa * r) - 1.0) /
                                       (4.0 * M_PI * r);
                    smooth += 0.125 * w[i] * w[j] * w[k] * rem;
                }
        return inv_r_cell_constant() / (2.0 * M_PI * h) + smooth;
    }
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
            const double px = 0.5 * h * x[i];
            const double py = 0.5 * h * x[j];
            const double r = std::sqrt(px * px + py * py);
            // (i/4) H0(kappa r) + ln(r)/(2 pi) is bounded as r -> 0.
            const cplx rem = cplx(0.0, 0.25) * hankel0_first(kappa * r) +
                             std::log(r) / (2.0 * M_PI);
            smooth += 0.25 * w[i] * w[j] * rem;
        }
    return -(std::log(0.5 * h) + log_cell_constant()) / (2.0 * M_PI) + smooth;
}

struct PadKey {
    int d, N;
    double L, kre, kim;
    auto operator<=>(const PadKey&) const = default;
};

void raw_dft_sized(int d, int M, std::vector<cplx>& buf, int fftw_sign) {
    int n[3] = {M, M, M};
    fftw_complex* data = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan = fftw_plan_dft(d, n, data, data, fftw_sign, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

// DFT of the truncated kernel table on the 2x padded grid, cached per
// (grid, kappa).
const std::vector<cplx>& kernel_hat(const Grid& g, cplx kappa) {
    static std::map<PadKey, std::vector<cplx>> cache;
    const PadKey key{g.d, g.N, g.L, kappa.real(), kappa.imag()};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const int M = 2 * g.N;
    std::size_t total = 1;
    for (int a = 0; a < g.d; ++a) total *= static_cast<std::size_t>(M);
    std::vector<cplx> ker(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        double r2 = 0.0;
        for (int a = 0; a < g.d; ++a) {
            const int o = static_cast<int>(rest % M);
            rest /= M;
            const int sgn = o < M / 2 ? o : o - M;
            const double off = sgn * g.h;
            r2 += off * off;
        }
        const double r = std::sqrt(r2);
        ker[i] = r == 0.0 ? kernel_diagonal(g.d, kappa, g.h)
                          : kernel_value(g.d, kappa, r);
    }
    raw_dft_sized(g.d, M, ker, FFTW_FORWARD);
    auto [pos, inserted] = cache.emplace(key, std::move(ker));
    (void)inserted;
    return pos->second;
}

}  // namespace

SpectralField free_space_apply(const SpectralField& g, cplx kappa) {
    if (kappa.imag() < 0.0)
        throw std::invalid_argument("free_space_apply: Im kappa must be >= 0");
    SpectralField gp = as_rep(g, Rep::physical);
    const Grid& grid = gp.grid;
    const int N = grid.N, M = 2 * N;
    std::size_t total = 1;
    for (int a = 0; a < grid.d; ++a) total *= static_cast<std::size_t>(M);

    std::vector<cplx> buf(total, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < gp.size(); ++i) {
        std::size_t rest = i, pad = 0, stride = 1;
        // Embed the N^d block at indices 0..N-1 per axis of the M^d array.
        for (int a = grid.d - 1; a >= 0; --a) {
            pad += (rest % N) * stride;
            rest /= N;
            stride *= M;
        }
        buf[pad] = gp.v[i];
    }
    raw_dft_sized(grid.d, M, buf, FFTW_FORWARD);
    const std::vector<cplx>& kh = kernel_hat(grid, kappa);
    const double scale = std::pow(grid.h, grid.d) / static_cast<double>(total);
    for (std::size_t i = 0; i < total; ++i) buf[i] *= kh[i] * scale;
    raw_dft_sized(grid.d, M, buf, FFTW_BACKWARD);

    SpectralField out(grid, Rep::physical);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t rest = i, pad = 0, stride = 1;
        for (int a = grid.d - 1; a >= 0; --a) {
            pad += (rest % N) * stride;
            rest /= N;
            stride *= M;
        }
        out.v[i] = buf[pad];
    }
    return out;
}

SpectralField green_convolve(const SpectralField& g, double k) {
    if (g.grid.d != 2 && g.grid.d != 3)
        throw std::invalid_argument("green_convolve: dimension must be 2 or 3");
    return free_space_apply(g, cplx(k, 0.0));
}

LimitResult limiting_apply(const SpectralField& f, double k,
                           const std::array<double, 3>& gamma, int sign,
                           const std::vector<double>& schedule,
                           LapBackend backend, double s) {
    if (sign != +1 && sign != -1)
        throw std::invalid_argument("limiting_apply: sign must be +1 or -1");
    FaddeevParams base{k, gamma, 0.0};
    if (backend == LapBackend::automatic)
        backend = base.has_drift() ? LapBackend::lattice : LapBackend::free_space;
    if (backend == LapBackend::free_space && base.has_drift())
        throw std::invalid_argument(
            "limiting_apply: free-space backend requires gamma = 0");

    std::vector<double> taus = schedule;
    if (taus.empty()) {
        const double e0 = base.default_eps0();
        for (int n = 1; n <= 8; ++n) taus.push_back(e0 * e0 * std::ldexp(1.0, -n));
    }
    for (std::size_t i = 0; i + 1 < taus.size(); ++i)
        if (!(taus[i] > taus[i + 1]) || !(taus[i + 1] > 0.0))
            throw std::invalid_argument(
                "limiting_apply: schedule must be positive and decreasing");

    LimitResult res;
    // Neville/Richardson table for the dyadic schedule: row[m] holds the
    // order-m extrapolant after the previous tau; the recurrence
    //   T[n][m] = (2^m T[n][m-1] - T[n-1][m-1]) / (2^m - 1)
    // removes the tau^m term of the analytic expansion of H_tau f.
    constexpr std::size_t max_order = 4;
    std::vector<SpectralField> row;
    SpectralField prev_raw, prev_extrap;
    double prev_extrap_inc = 0.0;
    bool monotone = true;
    for (std::size_t n = 0; n < taus.size(); ++n) {
        SpectralField u;
        if (backend == LapBackend::lattice) {
            FaddeevParams p = base;
            p.tau = sign * taus[n];
            u = regularized_apply(f, p, s);
        } else {
            cplx kap = std::sqrt(cplx(k * k, sign * taus[n]));
            if (kap.imag() < 0.0) kap = -kap;
            u = free_space_apply(f, kap);
            if (s != 0.0) u = lifting_apply(u, s);
        }
        if (n > 0) {
            const double inc = l2_norm(u - prev_raw);
            if (!res.increments.empty() && inc > res.increments.back())
                monotone = false;
            res.increments.push_back(inc);
        }
        prev_raw = u;

        std::vector<SpectralField> next;
        next.push_back(u);
        const std::size_t depth = std::min(row.size(), max_order);
        for (std::size_t m = 1; m <= depth; ++m) {
            const double fac = std::ldexp(1.0, static_cast<int>(m));
            next.push_back((1.0 / (fac - 1.0)) *
                           ((fac * next[m - 1]) - row[m - 1]));
        }
        row = std::move(next);
        const SpectralField& extrap = row.back();
        if (n > 0) prev_extrap_inc = l2_norm(extrap - prev_extrap);
        prev_extrap = extrap;
        res.field = extrap;
    }
    res.error_estimate = prev_extrap_inc;
    res.converged = monotone;
    return res;
}

SpectralField exp_drift(const SpectralField& f, const std::array<double, 3>& gamma) {
    SpectralField fp = as_rep(f, Rep::physical);
    double x[3];
    for (std::size_t i = 0; i < fp.size(); ++i) {
        coords_x(fp.grid, i, x);
        double dot = 0.0;
        for (int a = 0; a < fp.grid.d; ++a) dot += gamma[a] * x[a];
        fp.v[i] *= std::exp(dot);
    }
    return fp;
}

double conjugation_residual(const SpectralField& f, double k,
                            const std::array<double, 3>& gamma) {
    const FaddeevParams params{k, gamma, 0.0};
    const double gnorm = std::sqrt(params.gamma_norm2());
    if (gnorm * f.grid.L > 30.0)
        throw std::overflow_error(
            "conjugation_residual: |gamma| L exceeds the overflow guard");
    SpectralField fp = as_rep(f, Rep::physical);
    const bool drift = params.has_drift();
    const Grid& grid = fp.grid;
    const double r2 = params.r_kg() * params.r_kg();

    // Left side: e^{gamma.x} (Laplace + r_kg^2 + 2 gamma.grad) f.
    SpectralField lhs_op =
        apply_multiplier(fp, [&, drift](std::span<const double> xi) -> cplx {
            if (drift && is_nyquist(grid, xi)) return cplx(0.0, 0.0);
            double xi2 = 0.0, gdot = 0.0;
            for (std::size_t a = 0; a < xi.size(); ++a) {
                xi2 += xi[a] * xi[a];
                gdot += gamma[a] * xi[a];
            }
            return cplx(-xi2 + r2, 2.0 * gdot);
        });
    SpectralField lhs = exp_drift(lhs_op, gamma);

    // Right side: (Laplace + k^2) e^{gamma.x} f.
    SpectralField rhs =
        apply_multiplier(exp_drift(fp, gamma), [&](std::span<const double> xi) {
            double xi2 = 0.0;
            for (double c : xi) xi2 += c * c;
            return cplx(k * k - xi2, 0.0);
        });

    const double denom = l2_norm(fp);
    if (denom == 0.0) return 0.0;
    return l2_norm(lhs - rhs) / denom;
}

}  // namespace helm
