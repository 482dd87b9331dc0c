// Decomposes a random two-band field into dyadic frequency blocks and prints
// the per-block L^p norms together with a few Besov norms built from them.

#include <cstdio>

#include "sqg/sqg.hpp"

int main() {
    using namespace sqg;

    GridSpec grid;
    grid.n = 128;
    grid.length = 1.0;

    const SpectralField f = make_random_band(grid, 1, 4, /*seed=*/7, /*amplitude=*/1.0);

    DyadicDecomposition decomp(grid);
    FftWorkspace ws(grid);

    std::printf("block  %12s  %12s\n", "L2 norm", "L4 norm");
    for (int j = decomp.j_min; j <= decomp.j_max; ++j) {
        const SpectralField block = dyadic_block(f, j, decomp);
        const double n2 = lp_norm(block, 2.0, ws);
        if (n2 == 0.0) continue;
        std::printf("%5d  %12.6e  %12.6e\n", j, n2, lp_norm(block, 4.0, ws));
    }

    const double low = lp_norm(low_block(f, decomp), 2.0, ws);
    std::printf("low block L2 norm: %.6e\n", low);

    for (const double s : {0.0, 0.5, 1.0}) {
        BesovParams hom{s, 2.0, 2.0, true};
        BesovParams inhom{s, 2.0, 2.0, false};
        std::printf("s=%.1f  homogeneous %.6e  inhomogeneous %.6e\n", s,
                    besov_norm(f, hom, decomp, ws), besov_norm(f, inhom, decomp, ws));
    }
    return 0;
}
