#pragma once

#include "helm/grid.hpp"

namespace helm {

/**
 * Smooth transition profile: 1 for t <= 0, 0 for t >= 1, C^infinity in
 * between (built from the standard exp(-1/t) bump).
 */
double smooth_step_down(double t);

/**
 * PartitionPair: the admissible Littlewood-Paley pair (chi, phi).
 *
 * chi is a radial plateau with chi = 1 on |xi| <= 3/4 and supp chi inside
 * B(0, 4/3); phi(xi) := chi(xi/2) - chi(xi) is supported in the annulus
 * {3/4 <= |xi| <= 8/3}.  The telescoping construction makes
 * chi(xi) + sum_{n=0..J} phi(2^-n xi) = chi(2^-(J+1) xi) exact,
 * hence the partition of unity holds identically once 2^-(J+1)|xi| <= 3/4.
 *
 * jmax is the largest block index kept on the given grid.
 */
struct PartitionPair {
    int jmax = 0;

    double chi(double r) const;
    double phi(double r) const { return chi(0.5 * r) - chi(r); }

    // Block multiplier value at radius |xi|: j = -1 is the chi block,
    // j >= 0 is phi(2^-j |xi|).
    double block(int j, double r) const {
        return j < 0 ? chi(r) : phi(std::ldexp(r, -j));
    }
};

PartitionPair build_partition_pair(const Grid& grid);

/** BesovSpec: the rescaled weighted Besov norm B^r_{p,q}(rho, lambda). */
struct BesovSpec {
    double r = 0.0;
    double p = 2.0;
    double q = 2.0;
    WeightSpec weight;  // weight.lambda carries the rescale parameter
};

/** Dyadic block Delta_j f (j = -1 is the chi block). */
SpectralField dyadic_block(const SpectralField& f, int j, const PartitionPair& pp);

/** Partial sum S_j f = sum_{n=-1}^{j-1} Delta_n f, via the chi multiplier. */
SpectralField partial_sum(const SpectralField& f, int j, const PartitionPair& pp);

/**
 * Rescaled weighted Besov norm: ell^q over blocks n = -1..jmax of
 * 2^{n r} ||Delta_n f||_{L^p(rho_lambda)}; q = inf_p takes the sup.
 */
double besov_norm(const SpectralField& f, const BesovSpec& spec,
                  const PartitionPair& pp);

/** Lifting operator (I - Laplace)^{s/2}: multiplier (1+|xi|^2)^{s/2}. */
SpectralField lifting_apply(const SpectralField& f, double s);

/** Report from sampling the W(eta) admissibility inequality. */
struct WeightAdmissibilityReport {
    double max_ratio = 0.0;  // max over sampled pairs of rho(x)/(rho(y)<x-y>^eta)
    bool pass = false;       // max_ratio <= c
};

/**
 * Sample the W(eta) condition rho(x) <= c rho(y) <x-y>^eta over random
 * grid point pairs; the sampler maps a physical point to the weight value.
 */
WeightAdmissibilityReport check_weight_admissible(
    const std::function<double(std::span<const double>)>& sampler, double eta,
    const Grid& grid, int sample_count, double c, std::uint64_t seed);

}  // namespace helm
