#pragma once

#include <string>

#include "helm/littlewood_paley.hpp"
#include "helm/paraproduct.hpp"
#include "helm/resolvent.hpp"

namespace helm {

/**
 * SweepTable: one row per swept parameter tuple with the measured ratio,
 * the theoretical bound value, and their quotient.  The quotient column
 * staying inside a stability factor across the table is the operational
 * meaning of "the implicit constant is independent of the parameters".
 */
struct SweepRow {
    std::vector<double> params;  // values of the swept parameters, in order
    double measured = 0.0;
    double bound = 0.0;
    double quotient = 0.0;
};

struct SweepTable {
    std::vector<std::string> param_names;
    std::vector<SweepRow> rows;
    Grid grid;
    std::uint64_t seed = 0;
    int samples = 0;

    double max_quotient() const;
    double min_quotient() const;
    /** max/min <= factor and max <= factor (quotients are calibrated). */
    bool stable(double factor) const;
    /** Divide every quotient by the quotient of row `ref` (calibration). */
    void calibrate(std::size_t ref);
};

/**
 * Measured smoothing ratio for one field:
 *   || H^+ f ||_{B^{r+s}_{2,2}(<x>^-eta, lambda)} /
 *   || f     ||_{B^{r}_{2,2}(<x>^+eta, lambda)}.
 */
double norm_ratio(const SpectralField& f, double k,
                  const std::array<double, 3>& gamma, double r, double s,
                  double eta, double lambda, const PartitionPair& pp);

/**
 * Constant-stability sweep for the weighted resolvent bound
 *   lambda^{-2 eta} (1 + r_kg)^s / (min{r_kg, 1} r_kg),
 * maximized over a deterministic family of random and near-shell fields.
 * Quotients are calibrated at the row closest to (k=1, gamma=0, s=0,
 * lambda=1).
 */
SweepTable sweep_thmF(const Grid& grid, const std::vector<double>& k_list,
                      const std::vector<std::array<double, 3>>& gamma_list,
                      double r, const std::vector<double>& s_list, double eta,
                      const std::vector<double>& lambda_list, int samples,
                      std::uint64_t seed);

/**
 * Constant-stability sweep for the integrability-upgrade bound
 *   lambda^{-eta} max{r_kg^eta, r_kg^{-2}}
 * between B^r_{p1,q}(<x>^-eta, lambda) and B^{r-2+alpha}_{p2,q}(<x>^eta,
 * lambda), where alpha = d (1/p2 - 1/p1) must lie in [0, d/2) and
 * eta > (d+1)/2 - alpha.
 */
SweepTable sweep_Hsg(const Grid& grid, const std::vector<double>& k_list,
                     const std::vector<std::array<double, 3>>& gamma_list,
                     double p1, double p2, double q, double r, double eta,
                     const std::vector<double>& lambda_list, int samples,
                     std::uint64_t seed);

/**
 * Constant-stability sweep for the Lebesgue-space bound
 *   max{r_kg^{-2}, r_kg^{-1}}
 * between L^{p0}(<x>^-eta) and L^2(<x>^{1/2 + eps}); p0 in [1,2] and
 * eta > d/p0 - (d-1)/2.
 */
SweepTable sweep_PHLp(const Grid& grid, const std::vector<double>& k_list,
                      const std::vector<std::array<double, 3>>& gamma_list,
                      double p0, double eta, int samples, std::uint64_t seed);

/**
 * Rescaling-envelope sweep: || (f)_lambda ||_{B^r_{p,q}(rho, lambda)}
 * against lambda^{-d/p} max{lambda^r, lambda^eta, 1} times the lambda = 1
 * norm.  The dilation is represented exactly by reinterpreting the sample
 * array on the box of half-length L / lambda.
 */
SweepTable scaling_sweep(const SpectralField& f,
                         const std::vector<double>& lambda_list, double r,
                         double p, double q, const WeightSpec& weight);

/** The field (f)_lambda(x) = f(lambda x) on the box of half-length L/lambda. */
SpectralField rescale_field(const SpectralField& f, double lambda);

/**
 * Exact 2-adic block-shift law Delta_j (f)_{2^-n0} = (Delta_{j+n0} f)(2^-n0 x):
 * returns the max relative residual over all representable blocks.
 */
double block_shift_residual(const SpectralField& f, int n0);

enum class ParaproductCase {
    lo_hi_pos,    // alpha > 0:        ||f lo-hi g||_{B^beta}
    lo_hi_neg,    // alpha < 0:        ||f lo-hi g||_{B^{alpha+beta}}
    resonant_pos  // alpha + beta > 0: ||f res g||_{B^{alpha+beta}}
};

/**
 * Constant-stability sweep for the selected paraproduct estimate over
 * lambda_list with block-decay synthesized (f, g) of regularities
 * (alpha, beta); weights rho1 = <x>^eta, rho2 = <x>^-eta.
 */
SweepTable paraproduct_sweep(const Grid& grid, ParaproductCase which,
                             double alpha, double beta, double p1, double p2,
                             double q, double eta,
                             const std::vector<double>& lambda_list,
                             int samples, std::uint64_t seed);

}  // namespace helm
