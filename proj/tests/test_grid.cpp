#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helm/fixtures.hpp"
#include "helm/grid.hpp"

using namespace helm;

TEST_CASE("grid geometry: spacing, coordinates, frequency lattice") {
    Grid g = make_grid(2, 8, 4.0);
    CHECK(g.h == doctest::Approx(1.0));
    CHECK(g.x_of(0) == doctest::Approx(-4.0));
    CHECK(g.x_of(7) == doctest::Approx(3.0));
    CHECK(g.xi_of(4) == doctest::Approx(0.0));
    CHECK(g.xi_of(0) == doctest::Approx(-M_PI));
    CHECK(g.xi_max() == doctest::Approx(M_PI));
    CHECK(g.size() == 64);
}

TEST_CASE("grid construction rejects invalid parameters") {
    CHECK_THROWS(make_grid(1, 8, 4.0));
    CHECK_THROWS(make_grid(4, 8, 4.0));
    CHECK_THROWS(make_grid(2, 7, 4.0));
    CHECK_THROWS(make_grid(2, 2, 4.0));
    CHECK_THROWS(make_grid(2, 8, 0.0));
    CHECK_THROWS(make_grid(2, 8, -1.0));
}

TEST_CASE("transform round trip is exact to machine precision") {
    Grid g = make_grid(2, 16, 3.0);
    SpectralField f = fixtures::random_smooth(g, 1.0, 0.8 * g.xi_max(), 42);
    SpectralField back = transform(transform(f, Rep::frequency), Rep::physical);
    CHECK(rel_l2_error(f, back) < 1e-13);
}

TEST_CASE("transform round trip is exact in 3d") {
    Grid g = make_grid(3, 8, 2.0);
    SpectralField f = fixtures::random_band_limited(g, 0.9 * g.xi_max(), 7);
    SpectralField back = transform(transform(f, Rep::frequency), Rep::physical);
    CHECK(rel_l2_error(f, back) < 1e-13);
}

TEST_CASE("Parseval identity with cell measures") {
    Grid g = make_grid(2, 12, 2.5);
    SpectralField f = fixtures::random_band_limited(g, g.xi_max(), 11);
    SpectralField fh = transform(f, Rep::frequency);
    CHECK(l2_norm(f) == doctest::Approx(l2_norm(fh)).epsilon(1e-13));
}

TEST_CASE("plane wave maps to a single frequency mode") {
    Grid g = make_grid(2, 8, 4.0);
    SpectralField pw = fixtures::plane_wave(g, {2, -1, 0});
    SpectralField fh = transform(pw, Rep::frequency);
    // Mode (2, -1) lives at per-axis indices (N/2 + 2, N/2 - 1) = (6, 3).
    int idx[3] = {6, 3, 0};
    const std::size_t flat = flatten(g, idx);
    const double total2 = l2_norm(fh) * l2_norm(fh);
    const double mode2 = std::norm(fh.v[flat]) * std::pow(M_PI / g.L, g.d);
    CHECK(mode2 == doctest::Approx(total2).epsilon(1e-12));
    // Amplitude: fhat = (2 pi)^{-d/2} h^d N^d at the mode.
    const double expect =
        std::pow(2.0 * M_PI, -0.5 * g.d) * std::pow(g.h, g.d) * std::pow(g.N, g.d);
    CHECK(std::abs(fh.v[flat]) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("apply_multiplier with unit symbol is the identity") {
    Grid g = make_grid(2, 16, 4.0);
    SpectralField f = fixtures::random_smooth(g, 1.0, 0.6 * g.xi_max(), 3);
    SpectralField out =
        apply_multiplier(f, [](std::span<const double>) { return cplx(1.0, 0.0); });
    CHECK(rel_l2_error(out, f) < 1e-13);
}

TEST_CASE("apply_multiplier composes multiplicatively") {
    Grid g = make_grid(2, 16, 4.0);
    SpectralField f = fixtures::random_smooth(g, 1.0, 0.6 * g.xi_max(), 4);
    auto s1 = [](std::span<const double> xi) {
        return cplx(1.0 + xi[0] * xi[0], 0.0);
    };
    auto s2 = [](std::span<const double> xi) { return cplx(0.5, xi[1]); };
    auto s12 = [&](std::span<const double> xi) { return s1(xi) * s2(xi); };
    SpectralField a = apply_multiplier(apply_multiplier(f, s1), s2);
    SpectralField b = apply_multiplier(f, s12);
    CHECK(rel_l2_error(a, b) < 1e-12);
}

TEST_CASE("weight field values and weighted norms") {
    Grid g = make_grid(2, 8, 2.0);
    WeightSpec w{1.0, +1, 2.0};
    SpectralField wf = weight_field(w, g);
    double x[3];
    int idx[3] = {5, 6, 0};
    const std::size_t flat = flatten(g, idx);
    coords_x(g, flat, x);
    const double r2 = 4.0 * (x[0] * x[0] + x[1] * x[1]);
    CHECK(wf.v[flat].real() == doctest::Approx(std::sqrt(1.0 + r2)));

    SpectralField ones(g, Rep::physical);
    for (auto& c : ones.v) c = 1.0;
    // Unweighted L^2 of the constant 1 over [-L,L)^2 is 2L.
    WeightSpec flat_w{0.0, +1, 1.0};
    CHECK(weighted_lp_norm(ones, 2.0, flat_w) == doctest::Approx(2.0 * g.L));
    CHECK(weighted_lp_norm(ones, inf_p, flat_w) == doctest::Approx(1.0));
    CHECK_THROWS(weighted_lp_norm(ones, 0.5, flat_w));
}

TEST_CASE("field arithmetic validates grid and representation") {
    Grid g1 = make_grid(2, 8, 2.0);
    Grid g2 = make_grid(2, 16, 2.0);
    SpectralField a(g1, Rep::physical), b(g2, Rep::physical);
    SpectralField c(g1, Rep::frequency);
    CHECK_THROWS(a + b);
    CHECK_THROWS(a + c);
    CHECK_THROWS(pointwise(a, c));
}

TEST_CASE("transform determinism: identical inputs give identical bytes") {
    Grid g = make_grid(2, 16, 4.0);
    SpectralField f1 = fixtures::random_smooth(g, 1.0, 2.0, 99);
    SpectralField f2 = fixtures::random_smooth(g, 1.0, 2.0, 99);
    SpectralField t1 = transform(f1, Rep::frequency);
    SpectralField t2 = transform(f2, Rep::frequency);
    for (std::size_t i = 0; i < t1.size(); ++i) {
        CHECK(t1.v[i].real() == t2.v[i].real());
        CHECK(t1.v[i].imag() == t2.v[i].imag());
    }
}
