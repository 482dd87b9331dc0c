#ifndef SQG_MONITOR_HPP
#define SQG_MONITOR_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sqg/chemin.hpp"
#include "sqg/criterion.hpp"

namespace sqg {

/** Time series of the criterion norm along a run.
 *
 * besov_alpha[i] = ||theta(t_i)||_{B^alpha_{p,inf}} and running_integral[i]
 * approximates int_0^{t_i} ||theta||^{r0} dt by trapezoid. verdict stays
 * "satisfied" while every sample is finite; a nonfinite sample truncates the
 * series and records the first bad time. */
struct MonitorSeries {
    std::vector<double> times;
    std::vector<double> besov_alpha;
    std::vector<double> running_integral;
    std::string verdict = "satisfied";
    double violation_time = 0.0;     // meaningful when verdict == "violated"
    double last_reliable_time = 0.0;
};

inline MonitorSeries regularity_monitor(const Trajectory& traj, const CriterionParams& cp,
                                        const DyadicDecomposition& d, FftWorkspace& ws) {
    traj.validate();
    cp.validate();
    const BesovParams bp{cp.alpha, cp.p, kLpInfinity, false};
    MonitorSeries out;
    double integral = 0.0;
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const double v = besov_norm(traj.snapshots[i], bp, d, ws);
        if (!std::isfinite(v)) {
            out.verdict = "violated";
            out.violation_time = traj.times[i];
            break;
        }
        if (i > 0) {
            const double dt = traj.times[i] - traj.times[i - 1];
            integral += 0.5 * dt *
                        (std::pow(out.besov_alpha.back(), cp.r0) + std::pow(v, cp.r0));
        }
        out.times.push_back(traj.times[i]);
        out.besov_alpha.push_back(v);
        out.running_integral.push_back(integral);
    }
    if (traj.status == RunStatus::blowup_flagged && out.verdict == "satisfied")
        out.verdict = "violated";
    out.last_reliable_time =
        traj.status == RunStatus::completed && out.verdict == "satisfied"
            ? traj.times.back()
            : std::min(traj.last_reliable_time,
                       out.times.empty() ? 0.0 : out.times.back());
    if (out.verdict == "violated" && out.violation_time == 0.0)
        out.violation_time = out.last_reliable_time;
    return out;
}

inline MonitorSeries regularity_monitor(const Trajectory& traj, const CriterionParams& cp,
                                        const DyadicDecomposition& d) {
    FftWorkspace ws(d.grid);
    return regularity_monitor(traj, cp, d, ws);
}

/** Least-squares fit of a power law  norm(t) ~ A (T - t)^{-e}  near a
 * candidate blowup time. */
struct FitReport {
    double exponent = 0.0;    // fitted e
    double amplitude = 0.0;   // fitted A
    double t_lo = 0.0, t_hi = 0.0;
    int n_points = 0;
    bool blowup_consistent = false;  // exponent within 25% of 1/r0
};

/** Fits log norm against -log(T_guess - t) over the last quarter of the
 * samples before T_guess, resampled log-uniformly in T - t so the decades
 * nearest the singular time carry equal weight. Requires at least 8 samples
 * in the window and positive norms there. */
inline FitReport blowup_proxy_fit(const MonitorSeries& series, const CriterionParams& cp,
                                  double t_guess) {
    if (!(t_guess > 0.0)) throw std::domain_error("blowup_proxy_fit: T_guess must be positive");
    std::vector<double> ts, vs;
    for (std::size_t i = 0; i < series.times.size(); ++i)
        if (series.times[i] < t_guess) {
            ts.push_back(series.times[i]);
            vs.push_back(series.besov_alpha[i]);
        }
    const std::size_t total = ts.size();
    if (total < 8)
        throw std::invalid_argument("blowup_proxy_fit: need at least 8 samples before T_guess");
    // Last quarter of the samples, widened to at least 8 points.
    const std::size_t w_start = total - std::max<std::size_t>(8, total / 4);

    const double t_lo = ts[w_start], t_hi = ts.back();
    if (!(t_hi > t_lo))
        throw std::invalid_argument("blowup_proxy_fit: degenerate fit window");

    // Log-uniform nodes in s = T - t between the window ends.
    const double s_hi = t_guess - t_lo, s_lo = t_guess - t_hi;
    const int m = static_cast<int>(std::max<std::size_t>(16, total - w_start));
    std::vector<double> xs, ys;
    for (int i = 0; i < m; ++i) {
        const double frac = static_cast<double>(i) / (m - 1);
        const double s = s_hi * std::pow(s_lo / s_hi, frac);
        const double t = t_guess - s;
        // Linear interpolation of the sampled series at t.
        auto it = std::upper_bound(ts.begin() + w_start, ts.end(), t);
        std::size_t hi = std::min<std::size_t>(std::distance(ts.begin(), it), ts.size() - 1);
        std::size_t lo = hi > w_start ? hi - 1 : w_start;
        double v;
        if (hi == lo || ts[hi] == ts[lo])
            v = vs[hi];
        else {
            const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
            v = (1.0 - w) * vs[lo] + w * vs[hi];
        }
        if (!(v > 0.0))
            throw std::invalid_argument("blowup_proxy_fit: norms in the window must be positive");
        xs.push_back(-std::log(s));
        ys.push_back(std::log(v));
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double nn = static_cast<double>(xs.size());
    const double denom = nn * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("blowup_proxy_fit: singular normal equations");
    FitReport fit;
    fit.exponent = (nn * sxy - sx * sy) / denom;
    fit.amplitude = std::exp((sy - fit.exponent * sx) / nn);
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    fit.n_points = static_cast<int>(xs.size());
    const double target = 1.0 / cp.r0;
    fit.blowup_consistent = std::abs(fit.exponent - target) <= 0.25 * target;
    return fit;
}

} // namespace sqg

#endif
