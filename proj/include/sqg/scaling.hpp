#ifndef SQG_SCALING_HPP
#define SQG_SCALING_HPP

#include <cmath>

#include "sqg/field.hpp"

namespace sqg {

/** Discrete zoom of the scaling family theta_lambda(x) = lambda^{gamma-1}
 * theta(lambda x) with lambda = 2^m:
 *
 *   out_hat(k) = lambda^{gamma-1} * in_hat(lambda k).
 *
 * Dyadic blocks shift j -> j - m. Input modes without a lattice slot under
 * the index map (not divisible by lambda for m > 0, dilated past the Nyquist
 * square for m < 0) are lost; any such loss sets the truncated flag.
 * Requires n divisible by 2^|m|. */
inline SpectralField scaling_transform(const SpectralField& f, int m, double gamma) {
    if (!(gamma > 0.0) || gamma > 2.0)
        throw std::domain_error("scaling_transform: gamma must lie in (0, 2]");
    const int n = f.grid.n;
    const int lam_i = 1 << std::abs(m);
    if (n % lam_i != 0)
        throw std::invalid_argument("scaling_transform: n must be divisible by 2^|m|");

    const double lambda = std::ldexp(1.0, m);
    const double amp = std::pow(lambda, gamma - 1.0);
    SpectralField out(f.grid);
    const int half = n / 2;
    for (int row = 0; row < n; ++row) {
        const int k1 = f.grid.k1_of_row(row);
        for (int k2 = 0; k2 <= half; ++k2) {
            long src1, src2;
            if (m >= 0) {
                src1 = static_cast<long>(k1) * lam_i;
                src2 = static_cast<long>(k2) * lam_i;
            } else {
                if (k1 % lam_i != 0 || k2 % lam_i != 0) continue;
                src1 = k1 / lam_i;
                src2 = k2 / lam_i;
            }
            if (std::abs(src1) > half || std::abs(src2) > half) continue;
            out.at(row, k2) = amp * f.mode(static_cast<int>(src1), static_cast<int>(src2));
        }
    }

    // Detect modes lost to the lattice boundary (m > 0) or to indivisible
    // indices (m < 0) by comparing total power before/after, amplitude removed.
    const double in_sq = l2_norm_sq_spectral(f);
    const double out_sq = l2_norm_sq_spectral(out) / (amp * amp);
    if (out_sq < in_sq * (1.0 - 1e-12)) out.flags.truncated = true;
    return out;
}

} // namespace sqg

#endif
