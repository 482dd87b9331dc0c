#ifndef SQG_BESOV_HPP
#define SQG_BESOV_HPP

#include <cmath>
#include <vector>

#include "sqg/decomposition.hpp"

namespace sqg {

/** Parameters of a (homogeneous or inhomogeneous) Besov norm B^s_{p,q}. */
struct BesovParams {
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
    bool homogeneous = true;

    void validate() const {
        if (!(p >= 1.0)) throw std::domain_error("BesovParams: p must satisfy p >= 1");
        if (!(q >= 1.0)) throw std::domain_error("BesovParams: q must satisfy q >= 1");
    }
};

/** ell^q accumulation of a nonnegative sequence; q = infinity is the sup. */
inline double lq_sum(const std::vector<double>& a, double q) {
    if (q == kLpInfinity) {
        double m = 0.0;
        for (double v : a) m = std::max(m, v);
        return m;
    }
    double sum = 0.0;
    for (double v : a) sum += std::pow(v, q);
    return std::pow(sum, 1.0 / q);
}

/** Besov norm of a single field.
 *
 * Homogeneous: || 2^{js} ||Delta_j f||_p ||_{ell^q} over the resolvable
 * blocks. Inhomogeneous: the same sum restricted to j >= 0, plus the L^p
 * norm of the low block. The mean never enters the homogeneous norm. */
inline double besov_norm(const SpectralField& f, const BesovParams& bp,
                         const DyadicDecomposition& d, FftWorkspace& ws) {
    bp.validate();
    std::vector<double> terms;
    const int j_lo = bp.homogeneous ? d.j_min : 0;
    for (int j = j_lo; j <= d.j_max; ++j) {
        const double block_norm = lp_norm(dyadic_block(f, j, d), bp.p, ws);
        terms.push_back(std::pow(2.0, bp.s * j) * block_norm);
    }
    const double dyadic_part = lq_sum(terms, bp.q);
    if (bp.homogeneous) return dyadic_part;
    return dyadic_part + lp_norm(low_block(f, d), bp.p, ws);
}

inline double besov_norm(const SpectralField& f, const BesovParams& bp,
                         const DyadicDecomposition& d) {
    FftWorkspace ws(f.grid);
    return besov_norm(f, bp, d, ws);
}

} // namespace sqg

#endif
