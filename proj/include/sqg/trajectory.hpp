#ifndef SQG_TRAJECTORY_HPP
#define SQG_TRAJECTORY_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "sqg/field.hpp"

namespace sqg {

/** Scalars recorded at every time step. */
struct StepDiagnostics {
    double time = 0.0;
    double energy = 0.0;        // ||theta||_2^2
    double dissipation = 0.0;   // ||Lambda^{gamma/2} theta||_2^2
    double l2 = 0.0;
    double l4 = 0.0;
    double l8 = 0.0;
    double linf = 0.0;
    double u_max = 0.0;         // max_i |u(x_i)| (Riesz velocity)
    double top_octave_fraction = 0.0;  // energy share of the top octave of the dealias band
};

enum class RunStatus { completed, blowup_flagged, error };

inline std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::completed: return "completed";
        case RunStatus::blowup_flagged: return "blowup_flagged";
        default: return "error";
    }
}

/** Time-ordered snapshots of one run plus per-step diagnostics.
 *
 * snapshots[i] is the state at times[i]; times are strictly increasing and
 * start at the initial time. Diagnostics cover every step (not just stored
 * snapshots). For a blowup-flagged run the series is truncated at the last
 * reliable state, which is retained. */
struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> snapshots;
    std::vector<StepDiagnostics> diagnostics;
    RunStatus status = RunStatus::completed;
    double last_reliable_time = 0.0;
    double cfl_worst_ratio = 0.0;  // max over steps of dt / (C dx / u_max)

    void validate() const {
        if (times.size() != snapshots.size())
            throw std::invalid_argument("trajectory: times/snapshots size mismatch");
        if (times.empty()) throw std::invalid_argument("trajectory: empty");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1]))
                throw std::invalid_argument("trajectory: times must be strictly increasing");
        for (std::size_t i = 1; i < snapshots.size(); ++i)
            check_same_grid(snapshots[0], snapshots[i]);
    }

    double t_begin() const { return times.front(); }
    double t_end() const { return times.back(); }
};

/** Snapshot-wise difference of two trajectories on identical time grids. */
inline Trajectory trajectory_difference(const Trajectory& a, const Trajectory& b) {
    if (a.times.size() != b.times.size())
        throw std::invalid_argument("trajectory difference: sample counts differ");
    for (std::size_t i = 0; i < a.times.size(); ++i)
        if (a.times[i] != b.times[i])
            throw std::invalid_argument("trajectory difference: time grids differ");
    Trajectory out;
    out.times = a.times;
    out.snapshots.reserve(a.snapshots.size());
    for (std::size_t i = 0; i < a.snapshots.size(); ++i)
        out.snapshots.push_back(a.snapshots[i] - b.snapshots[i]);
    out.status = RunStatus::completed;
    out.last_reliable_time = a.times.back();
    return out;
}

} // namespace sqg

#endif
