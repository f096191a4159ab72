#pragma once

#include "helm/estimate_verifier.hpp"
#include "helm/paraproduct.hpp"
#include "helm/resolvent.hpp"

namespace helm {

/**
 * HelmholtzProblem: coefficients (eps, sigma, varrho), source g, wavenumber
 * k, support radius R.  The combined coefficient is
 *   V_k = k^2 eps + i k sigma + varrho,
 * and all four data fields must vanish outside B(0, R).
 *
 * Equation convention: the solver works with
 *   Laplace u + k^2 u + V_k u + g = 0,
 * whose Lippmann-Schwinger form is u = H^+ g + H^+(V_k u) with
 * H^+ = -(Laplace + k^2 + i0)^{-1}; for V = 0 this makes u the outgoing
 * Green convolution of g.
 */
struct HelmholtzProblem {
    SpectralField eps;
    SpectralField sigma;
    SpectralField varrho;
    SpectralField g;
    double k = 1.0;
    double R = 1.0;

    SpectralField coefficient() const;  // V_k
};

HelmholtzProblem build_problem(SpectralField eps, SpectralField sigma,
                               SpectralField varrho, SpectralField g, double k,
                               double R);

/** The rescaled data V_{k,lambda}(x) = V_k(lambda x), g_lambda = lambda^2 g(lambda x). */
struct RescaledProblem {
    SpectralField V;  // V_{k,lambda} on the box of half-length L/lambda
    SpectralField g;  // g_lambda on the same box
};

RescaledProblem rescale_problem(const HelmholtzProblem& problem, double lambda);

struct SolverConfig {
    double lambda = 1.0;                     // rescale parameter in (0, 1]
    std::array<double, 3> gamma{0, 0, 0};    // drift: 0 or |gamma| in (1, 2)
    double r = 1.3;                          // working regularity
    double eta0 = 0.6;                       // working weight exponent
    double p = 2.0, q = 2.0;
    int max_iter = 40;
    double tol = 1e-10;                      // relative increment tolerance
    LapBackend backend = LapBackend::automatic;
    bool auto_lambda = false;                // halve lambda until contracting

    void validate() const;
};

struct Solution {
    SpectralField u;                    // solution on the original scale
    SpectralField v;                    // fixed-point iterate (rescaled scale)
    int iterations = 0;
    std::vector<double> increments;     // working-norm increments
    double contraction = 0.0;           // median successive increment ratio
    bool converged = false;
    double lambda_used = 1.0;
    double out_of_band = 0.0;           // energy created by the rescale-back
    double pde_residual = 0.0;
    double source_norm = 0.0;           // ||g|| in the residual norm
    std::vector<double> radiation_profile;  // per sampled radius
    double radiation_metric = 0.0;      // max of the profile
};

/**
 * Picard iteration for the truncated, drift-conjugated fixed point
 *   v_{n+1} = lambda^2 Phi H^+_{k lambda, gamma} Phi Xi v_n + G,
 *   G = e^{-gamma.x} Phi H^+_{k lambda} g_lambda.
 * Populates v and the convergence diagnostics only.
 */
Solution picard_solve(const HelmholtzProblem& problem, const SolverConfig& config);

/**
 * Assemble u_lambda = lambda^2 H^+_{k lambda} Xi e^{gamma.x} v
 *                     + H^+_{k lambda} g_lambda
 * and rescale back (exact sample reinterpretation) to the original box.
 */
void assemble_and_rescale(Solution& sol, const HelmholtzProblem& problem,
                          const SolverConfig& config);

/**
 * Diagnostics on the original scale: spectral PDE residual
 *   || Laplace u + k^2 u + Xi(V_k, u) + g ||_{B^{r-2}_{2,2}(<x>^{eta0})}
 * and the radiation metric max over sampled radii in [2R, L/2] of
 * rho^{(d-1)/2} |d_rho u - i k u|.
 */
void residual_check(Solution& sol, const HelmholtzProblem& problem,
                    const SolverConfig& config);

/** Full pipeline: (auto-lambda) picard_solve + assemble + diagnostics. */
Solution solve_problem(const HelmholtzProblem& problem, SolverConfig config);

/** Trigonometric point evaluation of a field from its frequency data. */
cplx eval_physical(const SpectralField& f, std::span<const double> x);

}  // namespace helm
