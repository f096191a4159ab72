#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helm/fixtures.hpp"
#include "helm/solver.hpp"

using namespace helm;

namespace {

HelmholtzProblem smooth_problem(const Grid& g, double k, double amp) {
    const double R = 0.2 * g.L;
    SpectralField eps = fixtures::radial_bump(g, 0.8 * R, {0, 0, 0}, amp);
    SpectralField zero(g, Rep::physical);
    SpectralField src = fixtures::radial_bump(g, 0.6 * R);
    return build_problem(std::move(eps), zero, zero, std::move(src), k, R);
}

}  // namespace

TEST_CASE("build_problem validates support and parameters") {
    Grid g = make_grid(2, 32, 4.0);
    SpectralField zero(g, Rep::physical);
    SpectralField src = fixtures::radial_bump(g, 0.5);
    CHECK_THROWS(build_problem(zero, zero, zero, src, -1.0, 0.8));  // k <= 0
    CHECK_THROWS(build_problem(zero, zero, zero, src, 1.0, 3.0));   // R >= L/4
    // Support leak: a source wider than R is rejected.
    SpectralField wide = fixtures::radial_bump(g, 0.9);
    CHECK_THROWS(build_problem(zero, zero, zero, wide, 1.0, 0.5));
}

TEST_CASE("combined coefficient assembles k^2 eps + i k sigma + varrho") {
    Grid g = make_grid(2, 16, 4.0);
    const double R = 0.8;
    SpectralField eps = fixtures::radial_bump(g, 0.7 * R, {0, 0, 0}, 0.5);
    SpectralField sigma = fixtures::radial_bump(g, 0.7 * R, {0, 0, 0}, 0.25);
    SpectralField varrho = fixtures::radial_bump(g, 0.7 * R, {0, 0, 0}, 0.1);
    SpectralField src = fixtures::radial_bump(g, 0.5 * R);
    const double k = 2.0;
    HelmholtzProblem prob = build_problem(eps, sigma, varrho, src, k, R);
    SpectralField V = prob.coefficient();
    for (std::size_t i = 0; i < V.size(); i += 7) {
        const cplx expect =
            k * k * eps.v[i] + cplx(0, 1) * k * sigma.v[i] + varrho.v[i];
        CHECK(std::abs(V.v[i] - expect) < 1e-14 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("rescale_problem carries samples and scales the source") {
    Grid g = make_grid(2, 16, 4.0);
    HelmholtzProblem prob = smooth_problem(g, 1.0, 0.3);
    const double lambda = 0.5;
    RescaledProblem rp = rescale_problem(prob, lambda);
    CHECK(rp.V.grid.L == doctest::Approx(g.L / lambda));
    SpectralField V = prob.coefficient();
    for (std::size_t i = 0; i < V.size(); i += 11) {
        CHECK(std::abs(rp.V.v[i] - V.v[i]) < 1e-14);
        CHECK(std::abs(rp.g.v[i] - lambda * lambda * prob.g.v[i]) < 1e-14);
    }
}

TEST_CASE("solver config validation") {
    SolverConfig cfg;
    cfg.lambda = 1.0;
    cfg.validate();  // defaults are admissible
    SolverConfig bad = cfg;
    bad.lambda = 0.0;
    CHECK_THROWS(bad.validate());
    bad = cfg;
    bad.gamma = {0.5, 0.0, 0.0};  // |gamma| must be 0 or in (1, 2)
    CHECK_THROWS(bad.validate());
    bad = cfg;
    bad.gamma = {1.5, 0.0, 0.0};
    bad.eta0 = 0.4;  // with drift eta0 must lie in (1/2, 1)
    CHECK_THROWS(bad.validate());
}

TEST_CASE("zero potential: solution is the outgoing Green convolution") {
    Grid g = make_grid(2, 32, 4.0);
    HelmholtzProblem prob = smooth_problem(g, 1.0, 0.0);
    SolverConfig cfg;
    cfg.lambda = 1.0;
    cfg.backend = LapBackend::free_space;
    Solution sol = solve_problem(prob, cfg);
    CHECK(sol.converged);
    SpectralField oracle = green_convolve(prob.g, prob.k);
    CHECK(rel_l2_error(sol.u, oracle) < 1e-3);
}

TEST_CASE("picard iteration contracts for a small smooth coefficient") {
    Grid g = make_grid(2, 32, 4.0);
    HelmholtzProblem prob = smooth_problem(g, 1.0, 0.2);
    SolverConfig cfg;
    cfg.lambda = 1.0;
    cfg.backend = LapBackend::free_space;
    Solution sol = solve_problem(prob, cfg);
    CHECK(sol.converged);
    CHECK(sol.contraction < 1.0);
    CHECK(sol.iterations >= 2);
    REQUIRE(sol.increments.size() >= 2);
    CHECK(sol.increments.back() < sol.increments.front());
}

TEST_CASE("solutions at two rescale parameters agree after rescale-back") {
    Grid g = make_grid(2, 32, 4.0);
    HelmholtzProblem prob = smooth_problem(g, 1.0, 0.2);
    SolverConfig c1, c2;
    c1.lambda = 0.5;
    c2.lambda = 0.25;
    c1.backend = c2.backend = LapBackend::free_space;
    Solution s1 = solve_problem(prob, c1);
    Solution s2 = solve_problem(prob, c2);
    REQUIRE(s1.converged);
    REQUIRE(s2.converged);
    CHECK(rel_l2_error(s1.u, s2.u) < 1e-4);
    CHECK(s1.out_of_band == 0.0);
    CHECK(s2.out_of_band == 0.0);
}

TEST_CASE("pde residual is small relative to the source") {
    Grid g = make_grid(2, 32, 4.0);
    HelmholtzProblem prob = smooth_problem(g, 1.0, 0.2);
    SolverConfig cfg;
    cfg.lambda = 1.0;
    cfg.backend = LapBackend::lattice;
    Solution sol = solve_problem(prob, cfg);
    REQUIRE(sol.converged);
    CHECK(sol.source_norm > 0.0);
    CHECK(sol.pde_residual < 1e-4 * sol.source_norm);
}

TEST_CASE("radiation profile is reported and finite") {
    Grid g = make_grid(2, 32, 4.0);
    HelmholtzProblem prob = smooth_problem(g, 1.0, 0.1);
    SolverConfig cfg;
    cfg.lambda = 1.0;
    cfg.backend = LapBackend::free_space;
    Solution sol = solve_problem(prob, cfg);
    REQUIRE(sol.converged);
    CHECK(!sol.radiation_profile.empty());
    for (double v : sol.radiation_profile) CHECK(std::isfinite(v));
    CHECK(sol.radiation_metric >= 0.0);
}

TEST_CASE("auto lambda halves until the iteration contracts") {
    Grid g = make_grid(2, 32, 4.0);
    // A strong coefficient that needs rescaling to contract.
    HelmholtzProblem prob = smooth_problem(g, 1.0, 4.0);
    SolverConfig cfg;
    cfg.lambda = 1.0;
    cfg.auto_lambda = true;
    cfg.backend = LapBackend::free_space;
    Solution sol = solve_problem(prob, cfg);
    CHECK(sol.lambda_used <= 1.0);
    CHECK(sol.converged);
}

TEST_CASE("eval_physical reproduces lattice samples") {
    Grid g = make_grid(2, 16, 4.0);
    SpectralField f = fixtures::random_smooth(g, 1.0, 2.0, 6);
    double x[3];
    int idx[3] = {3, 9, 0};
    const std::size_t flat = flatten(g, idx);
    coords_x(g, flat, x);
    const cplx v = eval_physical(f, std::span<const double>(x, 2));
    CHECK(std::abs(v - f.v[flat]) < 1e-11 * (1.0 + std::abs(f.v[flat])));
}
