#ifndef SQG_DECOMPOSITION_HPP
#define SQG_DECOMPOSITION_HPP

#include <cmath>

#include "sqg/mollifier.hpp"
#include "sqg/operators.hpp"

namespace sqg {

/** Dyadic (Littlewood-Paley) frequency decomposition on a fixed grid.
 *
 * Block j applies the multiplier phi_hat(2^{-j} |xi|), supported in the
 * annulus 2^{j-1} <= |xi| <= 2^{j+1}. The indices [j_min, j_max] are chosen
 * so the blocks cover every nonzero lattice frequency, from the lowest ring
 * |xi| = 1/L out to the corner modes |xi| = sqrt(2) n/(2L); outside that
 * range a block is identically zero on the grid. */
struct DyadicDecomposition {
    GridSpec grid;
    int j_min = 0;
    int j_max = 0;

    explicit DyadicDecomposition(const GridSpec& g) : grid(g) {
        grid.validate();
        const double xi_lo = 1.0 / g.length;
        const double xi_hi = std::sqrt(2.0) * (g.n / 2.0) / g.length;
        j_min = static_cast<int>(std::floor(std::log2(xi_lo))) - 1;
        j_max = static_cast<int>(std::ceil(std::log2(xi_hi))) + 1;
    }

    int block_count() const { return j_max - j_min + 1; }

    double weight(int j, double abs_xi) const {
        return Mollifier::phi_hat(std::ldexp(abs_xi, -j));
    }
};

/** Dyadic block Delta_j f. Out-of-range j returns a zero field with the
 * out_of_band flag set instead of failing. */
inline SpectralField dyadic_block(const SpectralField& f, int j, const DyadicDecomposition& d) {
    if (!(f.grid == d.grid)) throw std::invalid_argument("field grid does not match decomposition");
    if (j < d.j_min || j > d.j_max) {
        SpectralField out = SpectralField::zero(f.grid);
        out.flags.out_of_band = true;
        return out;
    }
    const double L = f.grid.length;
    return apply_multiplier(f, [&](int k1, int k2) -> double {
        if (k1 == 0 && k2 == 0) return 0.0;
        return d.weight(j, std::hypot(k1 / L, k2 / L));
    });
}

/** Low-frequency block: multiplier chi(2 |xi|), equal to 1 for |xi| <= 1/2
 * and 0 for |xi| >= 1. The mean is retained. Together with the blocks
 * j >= 0 this resolves the inhomogeneous decomposition. */
inline SpectralField low_block(const SpectralField& f, const DyadicDecomposition& d) {
    if (!(f.grid == d.grid)) throw std::invalid_argument("field grid does not match decomposition");
    const double L = f.grid.length;
    return apply_multiplier(f, [&](int k1, int k2) -> double {
        if (k1 == 0 && k2 == 0) return 1.0;
        return Mollifier::chi(2.0 * std::hypot(k1 / L, k2 / L));
    });
}

} // namespace sqg

#endif
