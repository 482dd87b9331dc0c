#ifndef SQG_SOLVER_HPP
#define SQG_SOLVER_HPP

#include <cmath>

#include "sqg/etd.hpp"
#include "sqg/trajectory.hpp"

namespace sqg {

struct SolverConfig {
    GridSpec grid;
    double gamma = 1.0;
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::etd_rk4;
    int snapshot_stride = 1;
    bool linear_only = false;          // disable the nonlinearity (testing aid)
    double cfl_constant = 0.5;         // advisory threshold, not enforced
    double pileup_threshold = 0.10;    // top-octave energy fraction that flags blowup

    void validate() const {
        grid.validate();
        require_dealias_band_nonempty(grid);
        if (!(gamma > 0.0) || gamma > 1.0)
            throw std::domain_error("SolverConfig: gamma must lie in (0, 1]");
        if (!(dt > 0.0)) throw std::domain_error("SolverConfig: dt must be positive");
        if (!(t_end > dt))
            throw std::domain_error("SolverConfig: t_end must exceed dt");
        if (snapshot_stride < 1)
            throw std::domain_error("SolverConfig: snapshot_stride must be >= 1");
    }
};

/** Energy fraction carried by the top octave of the dealiased band,
 * |xi| > xi_cut / 2 with xi_cut the band edge. Sustained growth there means
 * the run is no longer resolving itself. */
inline double top_octave_fraction(const SpectralField& f) {
    const double xi_cut = f.grid.dealias_limit() / f.grid.length;
    const int n = f.grid.n, cols = f.grid.cols(), half = n / 2;
    double total = 0.0, top = 0.0;
    for (int row = 0; row < n; ++row) {
        const int k1 = f.grid.k1_of_row(row);
        for (int col = 0; col < cols; ++col) {
            if (k1 == 0 && col == 0) continue;
            const double w = (col == 0 || col == half) ? 1.0 : 2.0;
            const double e = w * std::norm(f.at(row, col));
            total += e;
            if (std::hypot(k1 / f.grid.length, col / f.grid.length) > 0.5 * xi_cut) top += e;
        }
    }
    return total > 0.0 ? top / total : 0.0;
}

inline StepDiagnostics compute_diagnostics(const SpectralField& theta, double t, double gamma,
                                           FftWorkspace& ws) {
    StepDiagnostics d;
    d.time = t;
    d.energy = l2_norm_sq_spectral(theta);
    d.dissipation = dissipation_rate(theta, gamma);
    d.l2 = lp_norm(theta, 2.0, ws);
    d.l4 = lp_norm(theta, 4.0, ws);
    d.l8 = lp_norm(theta, 8.0, ws);
    d.linf = lp_norm(theta, kLpInfinity, ws);
    const VelocityField u = riesz_velocity(theta);
    auto s1 = ws.to_physical(u.u1);
    auto s2 = ws.to_physical(u.u2);
    for (std::size_t i = 0; i < s1.size(); ++i)
        d.u_max = std::max(d.u_max, std::hypot(s1[i], s2[i]));
    d.top_octave_fraction = top_octave_fraction(theta);
    return d;
}

/** Advances theta0 to t_end with the exponential integrator.
 *
 * The state is dealiased once on entry and stays inside the band because
 * every nonlinear evaluation re-masks. Snapshots are stored every
 * snapshot_stride steps plus the final state. Blowup is flagged (not an
 * error) on either a nonfinite state or spectral pileup past the threshold;
 * the trajectory is truncated at the last reliable state and returned. */
inline Trajectory run_simulation(const SpectralField& theta0, const SolverConfig& cfg) {
    cfg.validate();
    if (!(theta0.grid == cfg.grid))
        throw std::invalid_argument("run_simulation: initial data grid does not match config");
    require_hermitian(theta0);

    FftWorkspace ws(cfg.grid);
    EtdStepper stepper(cfg.grid, cfg.gamma, cfg.dt, cfg.scheme);
    EtdStepper::NonlinFn nonlin;
    if (!cfg.linear_only)
        nonlin = [&ws](const SpectralField& f, double) {
            return -1.0 * nonlinear_term(f, ws);
        };

    const long n_steps = std::lround(cfg.t_end / cfg.dt);

    Trajectory traj;
    SpectralField theta = dealias(theta0);
    double t = 0.0;
    traj.times.push_back(t);
    traj.snapshots.push_back(theta);
    traj.diagnostics.push_back(compute_diagnostics(theta, t, cfg.gamma, ws));
    traj.last_reliable_time = t;

    const double dx = cfg.grid.dx();
    for (long step = 1; step <= n_steps; ++step) {
        SpectralField next;
        try {
            next = stepper.step(theta, t, nonlin, cfg.linear_only);
        } catch (const BlowupDetected&) {
            // Keep the last finite state as the final snapshot.
            traj.status = RunStatus::blowup_flagged;
            if (traj.times.back() < t) {
                traj.times.push_back(t);
                traj.snapshots.push_back(theta);
            }
            traj.last_reliable_time = t;
            return traj;
        }
        t = step * cfg.dt;
        theta = std::move(next);

        StepDiagnostics d = compute_diagnostics(theta, t, cfg.gamma, ws);
        traj.diagnostics.push_back(d);
        if (d.u_max > 0.0)
            traj.cfl_worst_ratio =
                std::max(traj.cfl_worst_ratio, cfg.dt / (cfg.cfl_constant * dx / d.u_max));

        if (!cfg.linear_only && d.top_octave_fraction > cfg.pileup_threshold) {
            // The state is finite but no longer resolved; flag and stop here.
            traj.status = RunStatus::blowup_flagged;
            traj.times.push_back(t);
            traj.snapshots.push_back(theta);
            traj.last_reliable_time = t - cfg.dt;
            return traj;
        }

        traj.last_reliable_time = t;
        if (step % cfg.snapshot_stride == 0 || step == n_steps) {
            traj.times.push_back(t);
            traj.snapshots.push_back(theta);
        }
    }
    return traj;
}

} // namespace sqg

#endif
