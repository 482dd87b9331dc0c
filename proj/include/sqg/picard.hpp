#ifndef SQG_PICARD_HPP
#define SQG_PICARD_HPP

#include <optional>
#include <vector>

#include "sqg/chemin.hpp"
#include "sqg/criterion.hpp"
#include "sqg/initial_data.hpp"
#include "sqg/solver.hpp"

namespace sqg {

/** One Picard iterate theta^k together with the contraction functional of
 * the increment, Lambda(theta^k - theta^{k-1}) (absent for k = 0). */
struct PicardState {
    int k = 0;
    Trajectory traj;
    std::optional<double> increment_lambda;
};

struct PicardResult {
    std::vector<PicardState> iterates;
    bool contracted = false;   // increments decayed geometrically to the end
    bool diverged = false;     // increments grew three times in a row
};

/** Contraction functional of the local theory:
 * Lambda(f, T) = ||f||_{tilde L^2 Bdot^{alpha+gamma/2}} + ||f||_{tilde L^inf Bdot^{alpha}}. */
inline double lambda_functional(const Trajectory& traj, const CriterionParams& cp, double q,
                                const DyadicDecomposition& d, FftWorkspace& ws) {
    cp.validate();
    MixedNormParams m2{2.0, BesovParams{cp.alpha + cp.gamma / 2.0, cp.p, q, true}, true};
    MixedNormParams minf{kLpInfinity, BesovParams{cp.alpha, cp.p, q, true}, true};
    return chemin_norm(traj, m2, d, ws) + chemin_norm(traj, minf, d, ws);
}

inline double lambda_functional(const Trajectory& traj, const CriterionParams& cp, double q,
                                const DyadicDecomposition& d) {
    FftWorkspace ws(d.grid);
    return lambda_functional(traj, cp, q, d, ws);
}

/** Picard iteration for the mild formulation: iterate 0 is identically zero
 * and iterate k+1 solves the linear advection-diffusion problem
 *
 *   d/dt theta^{k+1} = -Lambda^gamma theta^{k+1} - u^k . grad theta^{k+1},
 *   theta^{k+1}(0) = theta0,
 *
 * with the transport velocity frozen from the previous iterate (Riesz of
 * theta^k, linearly interpolated between its stride-1 snapshots at the
 * Runge-Kutta stage times). Iterates therefore share the linear semigroup
 * and differ only through the frozen velocity.
 *
 * Increments are measured by Lambda(theta^{k+1} - theta^k) over [0, T].
 * Divergence (three consecutive growing increments) stops the iteration and
 * is reported as a flag, not an error. */
inline PicardResult picard_iterate(const SpectralField& theta0, const SolverConfig& cfg, int k_max,
                                   const CriterionParams& cp, double q = 2.0) {
    cfg.validate();
    cp.validate();
    if (k_max < 1) throw std::domain_error("picard_iterate: k_max must be >= 1");
    if (!(theta0.grid == cfg.grid))
        throw std::invalid_argument("picard_iterate: initial data grid does not match config");
    require_hermitian(theta0);

    FftWorkspace ws(cfg.grid);
    DyadicDecomposition decomp(cfg.grid);
    EtdStepper stepper(cfg.grid, cfg.gamma, cfg.dt, cfg.scheme);
    const long n_steps = std::lround(cfg.t_end / cfg.dt);
    const SpectralField theta0_masked = dealias(theta0);

    PicardResult result;

    // Iterate 0: the zero trajectory on the full time grid.
    {
        PicardState s0;
        s0.k = 0;
        s0.traj.times.resize(n_steps + 1);
        for (long i = 0; i <= n_steps; ++i) s0.traj.times[i] = i * cfg.dt;
        s0.traj.snapshots.assign(n_steps + 1, SpectralField::zero(cfg.grid));
        s0.traj.last_reliable_time = cfg.t_end;
        result.iterates.push_back(std::move(s0));
    }

    int grow_streak = 0;
    for (int k = 1; k <= k_max; ++k) {
        const Trajectory& prev = result.iterates.back().traj;

        // theta^{k-1} at an arbitrary stage time, by linear interpolation.
        auto interpolate_prev = [&](double t) -> SpectralField {
            const double pos = t / cfg.dt;
            long i = static_cast<long>(pos);
            if (i >= n_steps) return prev.snapshots.back();
            const double w = pos - i;
            if (w == 0.0) return prev.snapshots[i];
            SpectralField out(cfg.grid);
            const auto& a = prev.snapshots[i];
            const auto& b = prev.snapshots[i + 1];
            for (std::size_t m = 0; m < out.coeffs.size(); ++m)
                out.coeffs[m] = (1.0 - w) * a.coeffs[m] + w * b.coeffs[m];
            return out;
        };

        EtdStepper::NonlinFn nonlin = [&](const SpectralField& f, double t) {
            const VelocityField u = riesz_velocity(interpolate_prev(t));
            return -1.0 * advect(u, f, ws);
        };

        PicardState s;
        s.k = k;
        s.traj.times.reserve(n_steps + 1);
        s.traj.snapshots.reserve(n_steps + 1);
        s.traj.times.push_back(0.0);
        s.traj.snapshots.push_back(theta0_masked);
        SpectralField theta = theta0_masked;
        bool blew_up = false;
        for (long step = 1; step <= n_steps; ++step) {
            try {
                theta = stepper.step(theta, (step - 1) * cfg.dt, nonlin);
            } catch (const BlowupDetected&) {
                s.traj.status = RunStatus::blowup_flagged;
                blew_up = true;
                break;
            }
            s.traj.times.push_back(step * cfg.dt);
            s.traj.snapshots.push_back(theta);
        }
        s.traj.last_reliable_time = s.traj.times.back();

        if (!blew_up) {
            const Trajectory diff = trajectory_difference(s.traj, prev);
            s.increment_lambda = lambda_functional(diff, cp, q, decomp, ws);
        }
        result.iterates.push_back(std::move(s));
        if (blew_up) {
            result.diverged = true;
            break;
        }

        if (result.iterates.size() >= 3) {
            const auto& cur = result.iterates[result.iterates.size() - 1].increment_lambda;
            const auto& before = result.iterates[result.iterates.size() - 2].increment_lambda;
            if (cur && before && *before > 0.0 && *cur > *before)
                ++grow_streak;
            else
                grow_streak = 0;
            if (grow_streak >= 3) {
                result.diverged = true;
                break;
            }
        }
    }

    if (!result.diverged) {
        // Contraction verdict: the last increment is below the first positive
        // one, and the tail is monotonically nonincreasing within a factor 2.
        std::vector<double> inc;
        for (const auto& st : result.iterates)
            if (st.increment_lambda) inc.push_back(*st.increment_lambda);
        if (inc.size() >= 2) {
            bool ok = true;
            for (std::size_t i = 1; i < inc.size(); ++i)
                if (inc[i] > 2.0 * inc[i - 1]) ok = false;
            const double tiny = 1e-13 * (inc.front() > 0 ? inc.front() : 1.0);
            result.contracted = ok && (inc.back() <= 0.5 * inc.front() || inc.back() <= tiny);
        } else if (inc.size() == 1) {
            result.contracted = true;
        }
    }
    return result;
}

/** Outcome of the lifespan-constant calibration: c_cal is the largest tested
 * constant for which the iteration contracted on every seed. */
struct CalibrationOutcome {
    double c_cal = 0.0;
    std::vector<std::pair<double, bool>> trace;  // (c tested, contracted on all seeds)
};

/** Bisection search for the largest constant c such that the successive
 * approximations contract on a whole suite of random-band data, each datum
 * run to its own horizon T_i = c ||theta_i||^{-r0} with the norm taken at the
 * critical index of cp. The bracket [c_lo, c_hi] is bisected in log space;
 * an infeasible c_lo yields c_cal = 0. */
inline CalibrationOutcome calibrate_existence_constant(const GridSpec& grid,
                                                       const CriterionParams& cp, double q, int j1,
                                                       int j2, double amplitude, int n_seeds,
                                                       std::uint64_t seed0, int n_steps, int k_max,
                                                       double c_lo, double c_hi, int n_bisect) {
    grid.validate();
    cp.validate();
    if (!(c_lo > 0.0) || !(c_hi > c_lo))
        throw std::domain_error("calibrate_existence_constant: need 0 < c_lo < c_hi");
    if (n_seeds < 1 || n_steps < 2 || k_max < 1 || n_bisect < 1)
        throw std::domain_error("calibrate_existence_constant: counts must be positive");

    std::vector<SpectralField> data;
    std::vector<double> horizons_per_c;  // norm^{-r0} per seed
    DyadicDecomposition decomp(grid);
    FftWorkspace ws(grid);
    const BesovParams bp{cp.alpha, cp.p, q, true};
    for (int i = 0; i < n_seeds; ++i) {
        SpectralField f = make_random_band(grid, j1, j2, seed0 + static_cast<std::uint64_t>(i),
                                           amplitude);
        const double norm = besov_norm(f, bp, decomp, ws);
        data.push_back(std::move(f));
        horizons_per_c.push_back(std::pow(norm, -cp.r0));
    }

    CalibrationOutcome out;
    auto feasible = [&](double c) {
        for (int i = 0; i < n_seeds; ++i) {
            SolverConfig cfg;
            cfg.grid = grid;
            cfg.gamma = cp.gamma;
            cfg.t_end = c * horizons_per_c[i];
            cfg.dt = cfg.t_end / n_steps;
            cfg.scheme = Scheme::etd_rk4;
            cfg.snapshot_stride = 1;
            if (!picard_iterate(data[i], cfg, k_max, cp, q).contracted) return false;
        }
        return true;
    };
    auto record = [&](double c) {
        const bool ok = feasible(c);
        out.trace.emplace_back(c, ok);
        if (ok) out.c_cal = std::max(out.c_cal, c);
        return ok;
    };

    if (!record(c_lo)) return out;
    if (record(c_hi)) return out;
    double lo = c_lo, hi = c_hi;
    for (int it = 0; it < n_bisect; ++it) {
        const double mid = std::exp(0.5 * (std::log(lo) + std::log(hi)));
        if (record(mid))
            lo = mid;
        else
            hi = mid;
    }
    return out;
}

} // namespace sqg

#endif
