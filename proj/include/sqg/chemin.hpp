#ifndef SQG_CHEMIN_HPP
#define SQG_CHEMIN_HPP

#include <cmath>
#include <vector>

#include "sqg/besov.hpp"
#include "sqg/trajectory.hpp"

namespace sqg {

/** Time-Lebesgue exponent applied to a sampled series by trapezoid
 * quadrature: (integral g(t)^r dt)^{1/r}; r = infinity is the sup. */
inline double time_lr(const std::vector<double>& values, const std::vector<double>& times,
                      double r) {
    if (values.size() != times.size() || values.size() < 2)
        throw std::invalid_argument("time_lr: need at least two samples on matching grids");
    if (!(r >= 1.0)) throw std::domain_error("time_lr: r must satisfy r >= 1");
    if (r == kLpInfinity) {
        double m = 0.0;
        for (double v : values) m = std::max(m, v);
        return m;
    }
    double integral = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double dt = times[i] - times[i - 1];
        integral += 0.5 * dt * (std::pow(values[i - 1], r) + std::pow(values[i], r));
    }
    return std::pow(integral, 1.0 / r);
}

/** Mixed space-time norm over a trajectory.
 *
 * chemin_style = true gives the time-inside-blocks (tilde) norm: per block j
 * take the L^r_t norm of t -> ||Delta_j f(t)||_p, then accumulate
 * 2^{js}-weighted in ell^q. The inhomogeneous tilde norm adds the plain
 * L^r_t L^p norm of the field to the homogeneous dyadic part.
 *
 * chemin_style = false is the standard order: the L^r_t norm of
 * t -> ||f(t)||_{B^s_{p,q}}. The two coincide exactly when q = r in the
 * homogeneous case (Fubini, exact under the shared trapezoid weights). */
struct MixedNormParams {
    double r = 2.0;
    BesovParams besov;
    bool chemin_style = true;
};

inline double chemin_norm(const Trajectory& traj, const MixedNormParams& mp,
                          const DyadicDecomposition& d, FftWorkspace& ws) {
    traj.validate();
    if (traj.snapshots.size() < 2)
        throw std::invalid_argument("mixed norm needs at least two snapshots");
    if (!(mp.r >= 1.0)) throw std::domain_error("MixedNormParams: r must satisfy r >= 1");
    mp.besov.validate();
    const BesovParams& bp = mp.besov;

    if (!mp.chemin_style) {
        std::vector<double> series;
        series.reserve(traj.snapshots.size());
        for (const auto& snap : traj.snapshots) series.push_back(besov_norm(snap, bp, d, ws));
        return time_lr(series, traj.times, mp.r);
    }

    // The dyadic part of the tilde norm runs over the full homogeneous range
    // in both variants; the inhomogeneous norm adds the L^r_t L^p piece.
    std::vector<double> weighted;
    for (int j = d.j_min; j <= d.j_max; ++j) {
        std::vector<double> block_series;
        block_series.reserve(traj.snapshots.size());
        for (const auto& snap : traj.snapshots)
            block_series.push_back(lp_norm(dyadic_block(snap, j, d), bp.p, ws));
        weighted.push_back(std::pow(2.0, bp.s * j) * time_lr(block_series, traj.times, mp.r));
    }
    const double dyadic_part = lq_sum(weighted, bp.q);
    if (bp.homogeneous) return dyadic_part;

    std::vector<double> lp_series;
    lp_series.reserve(traj.snapshots.size());
    for (const auto& snap : traj.snapshots) lp_series.push_back(lp_norm(snap, bp.p, ws));
    return time_lr(lp_series, traj.times, mp.r) + dyadic_part;
}

inline double chemin_norm(const Trajectory& traj, const MixedNormParams& mp,
                          const DyadicDecomposition& d) {
    FftWorkspace ws(d.grid);
    return chemin_norm(traj, mp, d, ws);
}

} // namespace sqg

#endif
