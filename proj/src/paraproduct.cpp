#include "helm/paraproduct.hpp"

#include <cmath>

namespace helm {

namespace {

// Physical-space dyadic blocks Delta_j f for j = -1 .. jmax (index shift +1).
std::vector<SpectralField> all_blocks(const SpectralField& f,
                                      const PartitionPair& pp) {
    SpectralField fh = as_rep(f, Rep::frequency);
    std::vector<SpectralField> blocks;
    blocks.reserve(pp.jmax + 2);
    double xi[3];
    for (int j = -1; j <= pp.jmax; ++j) {
        SpectralField g = fh;
        for (std::size_t i = 0; i < g.size(); ++i) {
            coords_xi(g.grid, i, xi);
            double r2 = 0.0;
            for (int a = 0; a < g.grid.d; ++a) r2 += xi[a] * xi[a];
            g.v[i] *= pp.block(j, std::sqrt(r2));
        }
        blocks.push_back(transform(g, Rep::physical));
    }
    return blocks;
}

void accumulate_product(SpectralField& acc, const SpectralField& a,
                        const SpectralField& b) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc.v[i] += a.v[i] * b.v[i];
}

}  // namespace

BonyTriple bony_decompose(const SpectralField& f, const SpectralField& g,
                          const PartitionPair& pp) {
    if (!(f.grid == g.grid))
        throw std::invalid_argument("bony_decompose: grid mismatch");
    const auto Df = all_blocks(f, pp);
    const auto Dg = all_blocks(g, pp);
    const Grid& grid = f.grid;

    BonyTriple t{SpectralField(grid, Rep::physical),
                 SpectralField(grid, Rep::physical),
                 SpectralField(grid, Rep::physical)};

    // Running partial sums S_{j-1} = sum_{n <= j-2} Delta_n (empty for j <= 0).
    SpectralField Sf(grid, Rep::physical), Sg(grid, Rep::physical);
    for (int j = -1; j <= pp.jmax; ++j) {
        if (j - 2 >= -1) {
            // Extend the partial sums to include Delta_{j-2}.
            const SpectralField& af = Df[j - 2 + 1];
            const SpectralField& ag = Dg[j - 2 + 1];
            for (std::size_t i = 0; i < Sf.size(); ++i) {
                Sf.v[i] += af.v[i];
                Sg.v[i] += ag.v[i];
            }
        }
        accumulate_product(t.lt, Sf, Dg[j + 1]);
        accumulate_product(t.gt, Sg, Df[j + 1]);
        for (int i = std::max(-1, j - 1); i <= std::min(pp.jmax, j + 1); ++i)
            accumulate_product(t.res, Df[i + 1], Dg[j + 1]);
    }
    return t;
}

SpectralField xi_apply(const SpectralField& V, const SpectralField& u,
                       const PartitionPair& pp) {
    BonyTriple t = bony_decompose(V, u, pp);
    return t.sum();
}

SpectralField plateau_field(const Grid& grid, double R, double lambda) {
    if (!(R > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("plateau_field: R and lambda must be positive");
    SpectralField out(grid, Rep::physical);
    double x[3];
    for (std::size_t i = 0; i < out.size(); ++i) {
        coords_x(grid, i, x);
        double r2 = 0.0;
        for (int a = 0; a < grid.d; ++a) r2 += x[a] * x[a];
        const double r = lambda * std::sqrt(r2);
        out.v[i] = smooth_step_down((r - R) / R);
    }
    return out;
}

SpectralField phi_apply(const SpectralField& u, double R, double lambda,
                        const PartitionPair& pp) {
    if (2.0 * R / lambda > u.grid.L)
        throw std::invalid_argument(
            "phi_apply: cutoff support B(0, 2R/lambda) exceeds the box");
    SpectralField cut = plateau_field(u.grid, R, lambda);
    BonyTriple t = bony_decompose(cut, as_rep(u, Rep::physical), pp);
    return t.sum();
}

}  // namespace helm
