#include "helm/littlewood_paley.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace helm {

double smooth_step_down(double t) {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    // a(t) = exp(-1/t); S(t) = a(1-t) / (a(t) + a(1-t)) decreases 1 -> 0.
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return b / (a + b);
}

double PartitionPair::chi(double r) const {
    // Plateau: 1 on |xi| <= 3/4, 0 outside B(0, 4/3).
    return smooth_step_down((r - 0.75) / (4.0 / 3.0 - 0.75));
}

PartitionPair build_partition_pair(const Grid& grid) {
    PartitionPair pp;
    // Largest j whose annulus 2^j [3/4, 8/3] is representable on the lattice.
    pp.jmax = static_cast<int>(
        std::floor(std::log2(grid.N * M_PI / (grid.L * (8.0 / 3.0)))));
    if (pp.jmax < 0)
        throw std::invalid_argument(
            "build_partition_pair: grid too coarse for any dyadic block");
    return pp;
}

SpectralField dyadic_block(const SpectralField& f, int j, const PartitionPair& pp) {
    if (j < -1 || j > pp.jmax)
        throw std::out_of_range("dyadic_block: block index out of range");
    return apply_multiplier(f, [&pp, j](std::span<const double> xi) {
        double r2 = 0.0;
        for (double c : xi) r2 += c * c;
        return cplx(pp.block(j, std::sqrt(r2)), 0.0);
    });
}

SpectralField partial_sum(const SpectralField& f, int j, const PartitionPair& pp) {
    if (j < -1)
        throw std::out_of_range("partial_sum: index must be >= -1");
    if (j == -1) {
        SpectralField out = as_rep(f, Rep::physical);
        std::fill(out.v.begin(), out.v.end(), cplx(0.0, 0.0));
        return out;
    }
    // S_j = sum_{n=-1}^{j-1} Delta_n telescopes to the chi(2^-j .) multiplier.
    return apply_multiplier(f, [&pp, j](std::span<const double> xi) {
        double r2 = 0.0;
        for (double c : xi) r2 += c * c;
        return cplx(pp.chi(std::ldexp(std::sqrt(r2), -j)), 0.0);
    });
}

double besov_norm(const SpectralField& f, const BesovSpec& spec,
                  const PartitionPair& pp) {
    if (spec.p < 1.0 || spec.q < 1.0)
        throw std::invalid_argument("besov_norm: p and q must be >= 1");
    SpectralField fh = as_rep(f, Rep::frequency);
    const bool sup_q = std::isinf(spec.q);
    double acc = 0.0;
    for (int n = -1; n <= pp.jmax; ++n) {
        SpectralField g = fh;
        double xi[3];
        for (std::size_t i = 0; i < g.size(); ++i) {
            coords_xi(g.grid, i, xi);
            double r2 = 0.0;
            for (int a = 0; a < g.grid.d; ++a) r2 += xi[a] * xi[a];
            g.v[i] *= pp.block(n, std::sqrt(r2));
        }
        const double block_norm =
            weighted_lp_norm(transform(g, Rep::physical), spec.p, spec.weight);
        // Low block (n = -1) carries weight 1: equivalent to the 2^{-r}
        // convention, but keeps shells below the first dyadic ring from
        // being suppressed by the smoothness index.
        const double term = std::pow(2.0, std::max(n, 0) * spec.r) * block_norm;
        if (sup_q)
            acc = std::max(acc, term);
        else
            acc += std::pow(term, spec.q);
    }
    return sup_q ? acc : std::pow(acc, 1.0 / spec.q);
}

SpectralField lifting_apply(const SpectralField& f, double s) {
    return apply_multiplier(f, [s](std::span<const double> xi) {
        double r2 = 0.0;
        for (double c : xi) r2 += c * c;
        return cplx(std::pow(1.0 + r2, 0.5 * s), 0.0);
    });
}

WeightAdmissibilityReport check_weight_admissible(
    const std::function<double(std::span<const double>)>& sampler, double eta,
    const Grid& grid, int sample_count, double c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, grid.N - 1);
    WeightAdmissibilityReport rep;
    double x[3], y[3], diff[3];
    for (int s = 0; s < sample_count; ++s) {
        for (int a = 0; a < grid.d; ++a) {
            x[a] = grid.x_of(pick(rng));
            y[a] = grid.x_of(pick(rng));
            diff[a] = x[a] - y[a];
        }
        const double wx = sampler(std::span<const double>(x, grid.d));
        const double wy = sampler(std::span<const double>(y, grid.d));
        if (!(wx > 0.0) || !(wy > 0.0))
            throw std::domain_error(
                "check_weight_admissible: weight sample is not positive");
        double d2 = 0.0;
        for (int a = 0; a < grid.d; ++a) d2 += diff[a] * diff[a];
        const double bracket = std::pow(1.0 + d2, 0.5 * eta);
        rep.max_ratio = std::max(rep.max_ratio, wx / (wy * bracket));
    }
    rep.pass = rep.max_ratio <= c;
    return rep;
}

}  // namespace helm
