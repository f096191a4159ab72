#include "helm/solver.hpp"

#include <algorithm>
#include <cmath>

namespace helm {

namespace {

// Largest |field| sample outside B(0, R), for the support invariant.
double outside_support(const SpectralField& f, double R) {
    double worst = 0.0;
    double x[3];
    for (std::size_t i = 0; i < f.size(); ++i) {
        coords_x(f.grid, i, x);
        double r2 = 0.0;
        for (int a = 0; a < f.grid.d; ++a) r2 += x[a] * x[a];
        if (r2 > R * R) worst = std::max(worst, std::abs(f.v[i]));
    }
    return worst;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

SpectralField HelmholtzProblem::coefficient() const {
    SpectralField V = eps;
    for (std::size_t i = 0; i < V.size(); ++i)
        V.v[i] = k * k * eps.v[i] + cplx(0.0, k) * sigma.v[i] + varrho.v[i];
    return V;
}

HelmholtzProblem build_problem(SpectralField eps, SpectralField sigma,
                               SpectralField varrho, SpectralField g, double k,
                               double R) {
    if (!(k > 0.0)) throw std::invalid_argument("build_problem: k must be positive");
    const Grid& grid = eps.grid;
    if (!(sigma.grid == grid) || !(varrho.grid == grid) || !(g.grid == grid))
        throw std::invalid_argument("build_problem: grid mismatch");
    if (!(R > 0.0) || !(R < grid.L / 4.0))
        throw std::invalid_argument("build_problem: need 0 < R < L/4");
    const double tol = 1e-10;
    for (const SpectralField* f : {&eps, &sigma, &varrho, &g}) {
        const double leak = outside_support(as_rep(*f, Rep::physical), R);
        if (leak > tol * (1.0 + max_abs(*f)))
            throw std::invalid_argument(
                "build_problem: data does not vanish outside B(0, R)");
    }
    return HelmholtzProblem{as_rep(eps, Rep::physical), as_rep(sigma, Rep::physical),
                            as_rep(varrho, Rep::physical), as_rep(g, Rep::physical),
                            k, R};
}

RescaledProblem rescale_problem(const HelmholtzProblem& problem, double lambda) {
    if (!(lambda > 0.0) || lambda > 1.0)
        throw std::invalid_argument("rescale_problem: lambda must lie in (0, 1]");
    // The dilation reinterprets the box as [-L/lambda, L/lambda): the
    // support-to-box ratio is lambda-invariant, so only R vs L matters.
    if (problem.R >= problem.g.grid.L / 2.0)
        throw std::invalid_argument(
            "rescale_problem: coefficient support exceeds half the box");
    RescaledProblem rp;
    rp.V = rescale_field(problem.coefficient(), lambda);
    rp.g = rescale_field(problem.g, lambda);
    for (auto& c : rp.g.v) c *= lambda * lambda;
    return rp;
}

void SolverConfig::validate() const {
    if (!(lambda > 0.0) || lambda > 1.0)
        throw std::invalid_argument("SolverConfig: lambda must lie in (0, 1]");
    if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");
    const double g2 =
        gamma[0] * gamma[0] + gamma[1] * gamma[1] + gamma[2] * gamma[2];
    if (g2 > 0.0) {
        const double ga = std::sqrt(g2);
        if (!(ga > 1.0 && ga < 2.0))
            throw std::invalid_argument(
                "SolverConfig: drift must vanish or satisfy |gamma| in (1, 2)");
        if (!(eta0 > 0.5 && eta0 < 1.0))
            throw std::invalid_argument(
                "SolverConfig: eta0 must lie in (1/2, 1) with drift enabled");
    }
    if (max_iter < 1)
        throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
}

namespace {

std::array<double, 3> negate(const std::array<double, 3>& g) {
    return {-g[0], -g[1], -g[2]};
}

}  // namespace

Solution picard_solve(const HelmholtzProblem& problem, const SolverConfig& config) {
    config.validate();
    const double lambda = config.lambda;
    const RescaledProblem rp = rescale_problem(problem, lambda);
    const Grid& grid = rp.V.grid;
    const PartitionPair pp = build_partition_pair(grid);
    const double kl = problem.k * lambda;
    const bool drift = config.gamma[0] != 0.0 || config.gamma[1] != 0.0 ||
                       config.gamma[2] != 0.0;
    const std::array<double, 3> no_drift{0.0, 0.0, 0.0};
    const BesovSpec working{config.r, config.p, config.q,
                            WeightSpec{config.eta0, -1, lambda}};

    auto resolvent = [&](const SpectralField& w,
                         const std::array<double, 3>& gamma) {
        return limiting_apply(w, kl, gamma, +1, {}, config.backend).field;
    };

    // G = e^{-gamma.x} Phi H^+_{k lambda} g_lambda.
    SpectralField G =
        phi_apply(resolvent(rp.g, no_drift), problem.R, lambda, pp);
    if (drift) G = exp_drift(G, negate(config.gamma));

    Solution sol;
    sol.lambda_used = lambda;
    SpectralField v = G;
    const double scale = std::max(besov_norm(G, working, pp), 1e-300);
    std::vector<double> ratios;
    for (int it = 1; it <= config.max_iter; ++it) {
        SpectralField xiv = xi_apply(rp.V, v, pp);
        SpectralField next =
            (cplx(lambda * lambda, 0.0) *
             phi_apply(resolvent(phi_apply(xiv, problem.R, lambda, pp),
                                 config.gamma),
                       problem.R, lambda, pp)) +
            G;
        const double inc = besov_norm(next - v, working, pp);
        if (!sol.increments.empty() && sol.increments.back() > 0.0)
            ratios.push_back(inc / sol.increments.back());
        sol.increments.push_back(inc);
        v = std::move(next);
        sol.iterations = it;
        if (inc <= config.tol * scale) {
            sol.converged = true;
            break;
        }
    }
    sol.contraction = median(ratios);
    if (!sol.converged && sol.contraction >= 1.0)
        sol.converged = false;  // non-contraction: reported via the estimate
    sol.v = std::move(v);
    return sol;
}

void assemble_and_rescale(Solution& sol, const HelmholtzProblem& problem,
                          const SolverConfig& config) {
    const double lambda = sol.lambda_used;
    const RescaledProblem rp = rescale_problem(problem, lambda);
    const PartitionPair pp = build_partition_pair(rp.V.grid);
    const double kl = problem.k * lambda;
    const std::array<double, 3> no_drift{0.0, 0.0, 0.0};
    const bool drift = config.gamma[0] != 0.0 || config.gamma[1] != 0.0 ||
                       config.gamma[2] != 0.0;

    SpectralField ev = drift ? exp_drift(sol.v, config.gamma) : sol.v;
    SpectralField xiv = xi_apply(rp.V, ev, pp);
    SpectralField u_l =
        (cplx(lambda * lambda, 0.0) *
         limiting_apply(xiv, kl, no_drift, +1, {}, config.backend).field) +
        limiting_apply(rp.g, kl, no_drift, +1, {}, config.backend).field;
    // Rescale back by sample reinterpretation; exact, so no out-of-band
    // energy is created.
    sol.u = rescale_field(u_l, 1.0 / lambda);
    sol.out_of_band = 0.0;
}

cplx eval_physical(const SpectralField& f, std::span<const double> x) {
    SpectralField fh = as_rep(f, Rep::frequency);
    const Grid& g = fh.grid;
    cplx acc(0.0, 0.0);
    double xi[3];
    for (std::size_t i = 0; i < fh.size(); ++i) {
        coords_xi(g, i, xi);
        double phase = 0.0;
        for (int a = 0; a < g.d; ++a) phase += xi[a] * x[a];
        acc += fh.v[i] * std::polar(1.0, phase);
    }
    return acc * std::pow(2.0 * M_PI, -0.5 * g.d) * std::pow(M_PI / g.L, g.d);
}

void residual_check(Solution& sol, const HelmholtzProblem& problem,
                    const SolverConfig& config) {
    const Grid& grid = problem.g.grid;
    const PartitionPair pp = build_partition_pair(grid);
    const double k = problem.k;

    // Spectral residual Laplace u + k^2 u + Xi(V, u) + g.
    SpectralField lin = apply_multiplier(sol.u, [k](std::span<const double> xi) {
        double xi2 = 0.0;
        for (double c : xi) xi2 += c * c;
        return cplx(k * k - xi2, 0.0);
    });
    SpectralField resid =
        lin + xi_apply(problem.coefficient(), as_rep(sol.u, Rep::physical), pp) +
        problem.g;
    const BesovSpec rnorm{config.r - 2.0, 2.0, 2.0,
                          WeightSpec{config.eta0, +1, 1.0}};
    sol.pde_residual = besov_norm(resid, rnorm, pp);
    sol.source_norm = besov_norm(problem.g, rnorm, pp);

    // Radiation metric on sampled spheres rho in [2R, L/2].
    SpectralField uh = as_rep(sol.u, Rep::frequency);
    const double freq_cell =
        std::pow(2.0 * M_PI, -0.5 * grid.d) * std::pow(M_PI / grid.L, grid.d);
    // One lattice pass evaluates u and the radial derivative at a point.
    auto eval_u_du = [&](const double* x, const double* dir, cplx& uval,
                         cplx& du) {
        uval = du = cplx(0.0, 0.0);
        double xi[3];
        for (std::size_t i = 0; i < uh.size(); ++i) {
            coords_xi(grid, i, xi);
            double phase = 0.0, xdir = 0.0;
            for (int a = 0; a < grid.d; ++a) {
                phase += xi[a] * x[a];
                xdir += xi[a] * dir[a];
            }
            const cplx e = uh.v[i] * std::polar(1.0, phase);
            uval += e;
            du += cplx(0.0, xdir) * e;
        }
        uval *= freq_cell;
        du *= freq_cell;
    };
    const int n_radii = 6;
    const int n_dirs = grid.d == 2 ? 16 : 26;
    std::vector<std::array<double, 3>> dirs;
    if (grid.d == 2) {
        for (int i = 0; i < n_dirs; ++i) {
            const double th = 2.0 * M_PI * i / n_dirs;
            dirs.push_back({std::cos(th), std::sin(th), 0.0});
        }
    } else {
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                for (int c = -1; c <= 1; ++c) {
                    if (a == 0 && b == 0 && c == 0) continue;
                    const double n = std::sqrt(double(a * a + b * b + c * c));
                    dirs.push_back({a / n, b / n, c / n});
                }
    }
    sol.radiation_profile.clear();
    for (int ir = 0; ir < n_radii; ++ir) {
        const double rho = 2.0 * problem.R +
                           (0.5 * grid.L - 2.0 * problem.R) * ir / (n_radii - 1.0);
        double worst = 0.0;
        for (const auto& dir : dirs) {
            double x[3] = {rho * dir[0], rho * dir[1], rho * dir[2]};
            cplx uval, du;
            eval_u_du(x, dir.data(), uval, du);
            worst = std::max(worst, std::pow(rho, 0.5 * (grid.d - 1)) *
                                        std::abs(du - cplx(0.0, k) * uval));
        }
        sol.radiation_profile.push_back(worst);
    }
    sol.radiation_metric =
        *std::max_element(sol.radiation_profile.begin(), sol.radiation_profile.end());
}

Solution solve_problem(const HelmholtzProblem& problem, SolverConfig config) {
    config.validate();
    Solution sol;
    for (;;) {
        sol = picard_solve(problem, config);
        if (!config.auto_lambda || sol.converged ||
            (sol.contraction < 0.9 && sol.contraction > 0.0) ||
            config.lambda <= std::ldexp(1.0, -6))
            break;
        config.lambda *= 0.5;
    }
    assemble_and_rescale(sol, problem, config);
    residual_check(sol, problem, config);
    return sol;
}

}  // namespace helm
