#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helm/fixtures.hpp"
#include "helm/littlewood_paley.hpp"

using namespace helm;

TEST_CASE("smooth step profile endpoints and monotonicity") {
    CHECK(smooth_step_down(-1.0) == 1.0);
    CHECK(smooth_step_down(0.0) == 1.0);
    CHECK(smooth_step_down(1.0) == 0.0);
    CHECK(smooth_step_down(2.0) == 0.0);
    double prev = 1.0;
    for (int i = 1; i <= 20; ++i) {
        const double v = smooth_step_down(i / 20.0);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("chi plateau and phi annulus supports") {
    Grid g = make_grid(2, 64, 4.0);
    PartitionPair pp = build_partition_pair(g);
    CHECK(pp.chi(0.0) == 1.0);
    CHECK(pp.chi(0.75) == 1.0);
    CHECK(pp.chi(4.0 / 3.0) == 0.0);
    CHECK(pp.chi(2.0) == 0.0);
    // phi(r) = chi(r/2) - chi(r): vanishes below 3/4 and above 8/3.
    CHECK(pp.phi(0.5) == 0.0);
    CHECK(pp.phi(0.74) == 0.0);
    CHECK(pp.phi(1.0) > 0.0);
    CHECK(pp.phi(8.0 / 3.0) == 0.0);
    CHECK(pp.phi(3.0) == 0.0);
}

TEST_CASE("partition of unity telescopes exactly") {
    Grid g = make_grid(2, 64, 4.0);
    PartitionPair pp = build_partition_pair(g);
    for (double r : {0.0, 0.3, 0.9, 1.7, 3.2, 6.5, 11.0}) {
        double sum = pp.chi(r);
        // The telescoping sum equals chi(2^{-(J+1)} r), which is 1 once the
        // rescaled radius drops below 3/4.
        int J = 0;
        while (std::ldexp(r, -(J + 1)) > 0.75) ++J;
        for (int n = 0; n <= J; ++n) sum += pp.phi(std::ldexp(r, -n));
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("block reconstruction is exact on band-limited fields") {
    Grid g = make_grid(2, 32, 4.0);
    PartitionPair pp = build_partition_pair(g);
    // Reconstruction holds for content below 0.75 * 2^{jmax+1}, where the
    // kept blocks telescope to one.
    SpectralField f2 =
        fixtures::random_band_limited(g, 0.7 * std::ldexp(1.0, pp.jmax + 1), 5);
    SpectralField sum2(g, Rep::physical);
    for (int j = -1; j <= pp.jmax; ++j) sum2 = sum2 + dyadic_block(f2, j, pp);
    CHECK(rel_l2_error(sum2, f2) < 1e-12);
}

TEST_CASE("partial sums telescope against blocks") {
    Grid g = make_grid(2, 32, 4.0);
    PartitionPair pp = build_partition_pair(g);
    SpectralField f = fixtures::random_smooth(g, 2.0, 0.8 * g.xi_max(), 8);
    for (int j = 0; j <= pp.jmax; ++j) {
        SpectralField lhs = partial_sum(f, j + 1, pp) - partial_sum(f, j, pp);
        SpectralField rhs = dyadic_block(f, j, pp);
        CHECK(rel_l2_error(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("block orthogonality: non-adjacent blocks have disjoint support") {
    Grid g = make_grid(2, 128, 4.0);
    PartitionPair pp = build_partition_pair(g);
    REQUIRE(pp.jmax >= 5);
    SpectralField f = fixtures::random_band_limited(g, g.xi_max(), 21);
    SpectralField b2 = transform(dyadic_block(f, 2, pp), Rep::frequency);
    SpectralField b5 = transform(dyadic_block(f, 5, pp), Rep::frequency);
    double inner = 0.0;
    for (std::size_t i = 0; i < b2.size(); ++i)
        inner += std::abs(b2.v[i]) * std::abs(b5.v[i]);
    // Supports are disjoint; only FFT round-trip round-off remains.
    CHECK(inner <= 1e-10 * l2_norm(b2) * l2_norm(b5));
}

TEST_CASE("besov norm of a single-block field scales as 2^{jr}") {
    Grid g = make_grid(2, 64, 4.0);
    PartitionPair pp = build_partition_pair(g);
    SpectralField f = fixtures::random_band_limited(g, g.xi_max(), 33);
    SpectralField blk = dyadic_block(f, 3, pp);
    WeightSpec w{0.0, +1, 1.0};
    // For a field fully inside blocks 2..4 the q = inf norm with r = 0 is a
    // max of plain L^2 norms, each <= ||blk||.
    const double n_inf = besov_norm(blk, BesovSpec{0.0, 2.0, inf_p, w}, pp);
    CHECK(n_inf <= l2_norm(blk) * (1.0 + 1e-12));
    CHECK(n_inf > 0.0);
    // Raising r multiplies block n by 2^{nr}; for content near block 3 the
    // norm grows by roughly 2^{3r}.
    const double n_r = besov_norm(blk, BesovSpec{2.0, 2.0, inf_p, w}, pp);
    CHECK(n_r / n_inf > std::ldexp(1.0, 4));   // at least 2^{2*2}
    CHECK(n_r / n_inf < std::ldexp(1.0, 10));  // at most 2^{5*2}
}

TEST_CASE("besov norm q and r monotonicity") {
    Grid g = make_grid(2, 32, 4.0);
    PartitionPair pp = build_partition_pair(g);
    SpectralField f = fixtures::random_smooth(g, 2.0, 0.7 * g.xi_max(), 12);
    WeightSpec w{0.5, +1, 1.0};
    const double n_q1 = besov_norm(f, BesovSpec{0.5, 2.0, 1.0, w}, pp);
    const double n_q2 = besov_norm(f, BesovSpec{0.5, 2.0, 2.0, w}, pp);
    const double n_qi = besov_norm(f, BesovSpec{0.5, 2.0, inf_p, w}, pp);
    CHECK(n_qi <= n_q2 * (1.0 + 1e-12));
    CHECK(n_q2 <= n_q1 * (1.0 + 1e-12));
    const double n_r_low = besov_norm(f, BesovSpec{0.2, 2.0, 2.0, w}, pp);
    const double n_r_high = besov_norm(f, BesovSpec{1.2, 2.0, 2.0, w}, pp);
    // Blocks n >= 0 gain under larger r; the chi block loses nothing beyond
    // a factor 2^{-n r} with n = -1, so allow that factor.
    CHECK(n_r_low <= 2.0 * n_r_high);
}

TEST_CASE("B^0_{2,2} without weight is comparable to L^2") {
    Grid g = make_grid(2, 32, 4.0);
    PartitionPair pp = build_partition_pair(g);
    SpectralField f = fixtures::random_band_limited(
        g, 0.7 * std::ldexp(1.0, pp.jmax + 1), 17);
    WeightSpec w{0.0, +1, 1.0};
    const double nb = besov_norm(f, BesovSpec{0.0, 2.0, 2.0, w}, pp);
    const double nl = l2_norm(f);
    // Finite overlap (each frequency hit by <= 2 blocks) gives sqrt(2) bounds.
    CHECK(nb >= nl * (1.0 - 1e-10) * (1.0 / std::sqrt(2.0)));
    CHECK(nb <= nl * std::sqrt(2.0) * (1.0 + 1e-10));
}

TEST_CASE("lifting operator matches the explicit multiplier on plane waves") {
    Grid g = make_grid(2, 16, 4.0);
    SpectralField pw = fixtures::plane_wave(g, {3, 1, 0});
    SpectralField lifted = lifting_apply(pw, 1.4);
    const double xi2 = std::pow(M_PI / g.L, 2) * (9.0 + 1.0);
    const double factor = std::pow(1.0 + xi2, 0.7);
    for (std::size_t i = 0; i < pw.size(); i += 37) {
        CHECK(std::abs(lifted.v[i] - factor * pw.v[i]) < 1e-10 * factor);
    }
}

TEST_CASE("lifting composes: s then -s is the identity") {
    Grid g = make_grid(2, 16, 4.0);
    SpectralField f = fixtures::random_smooth(g, 1.0, 0.6 * g.xi_max(), 2);
    SpectralField back = lifting_apply(lifting_apply(f, 1.7), -1.7);
    CHECK(rel_l2_error(back, f) < 1e-12);
}

TEST_CASE("weight admissibility accepts polynomial and rejects exponential") {
    Grid g = make_grid(2, 16, 4.0);
    const double eta = 1.5;
    auto poly = [eta](std::span<const double> x) {
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        return std::pow(1.0 + r2, 0.5 * eta);
    };
    auto expw = [](std::span<const double> x) {
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        return std::exp(2.0 * std::sqrt(r2));
    };
    const double c = std::pow(2.0, 0.5 * eta);
    CHECK(check_weight_admissible(poly, eta, g, 3000, c, 1).pass);
    CHECK_FALSE(check_weight_admissible(expw, eta, g, 3000, c, 1).pass);
}
