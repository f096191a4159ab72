#pragma once

#include "helm/grid.hpp"
#include "helm/littlewood_paley.hpp"

namespace helm {

/**
 * BonyTriple: the three pieces of Bony's decomposition of a product.
 *   lt  = f lo-hi g  = sum_j S_{j-1} f . Delta_j g
 *   gt  = f hi-lo g  = sum_j S_{j-1} g . Delta_j f
 *   res = f res g    = sum_{|i-j|<=1} Delta_i f . Delta_j g
 * For band-limited inputs lt + gt + res recovers the grid pointwise product.
 */
struct BonyTriple {
    SpectralField lt;
    SpectralField gt;
    SpectralField res;

    SpectralField sum() const { return lt + gt + res; }
};

BonyTriple bony_decompose(const SpectralField& f, const SpectralField& g,
                          const PartitionPair& pp);

/**
 * Coefficient operator Xi_{k,lambda} u = V lo-hi u + V hi-lo u + V res u,
 * with V the already-rescaled coefficient field V_{k,lambda}.
 */
SpectralField xi_apply(const SpectralField& V, const SpectralField& u,
                       const PartitionPair& pp);

/**
 * Smooth radial plateau phi_R: 1 on B(0,R), 0 outside B(0,2R); sampled as
 * (phi_R)_lambda(x) = phi_R(lambda x) on the grid of u.
 */
SpectralField plateau_field(const Grid& grid, double R, double lambda);

/**
 * Truncation operator Phi_{R,lambda} u: Bony product of u with the rescaled
 * plateau (phi_R)_lambda.  Throws if the support B(0, 2R/lambda) does not
 * fit inside the box.
 */
SpectralField phi_apply(const SpectralField& u, double R, double lambda,
                        const PartitionPair& pp);

}  // namespace helm
