#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "sqg/sqg.hpp"

namespace {

using namespace sqg;
using std::complex;

SolverConfig picard_config(int n, double gamma, double dt, double t_end) {
    SolverConfig cfg;
    cfg.grid = GridSpec{n, 1.0};
    cfg.gamma = gamma;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.scheme = Scheme::etd_rk4;
    cfg.snapshot_stride = 1;
    return cfg;
}

std::vector<double> increments(const PicardResult& res) {
    std::vector<double> inc;
    for (const auto& st : res.iterates)
        if (st.increment_lambda) inc.push_back(*st.increment_lambda);
    return inc;
}

Trajectory constant_trajectory(const SpectralField& f, double t_end, int n_snapshots) {
    Trajectory traj;
    for (int i = 0; i < n_snapshots; ++i) {
        traj.times.push_back(t_end * i / (n_snapshots - 1));
        traj.snapshots.push_back(f);
    }
    traj.last_reliable_time = t_end;
    return traj;
}

} // namespace

TEST_CASE("iterate zero is the zero trajectory on the full time grid") {
    SolverConfig cfg = picard_config(32, 0.7, 1e-2, 0.1);
    const SpectralField theta0 = make_random_band(cfg.grid, 0, 1, 5, 1.0);
    const PicardResult res = picard_iterate(theta0, cfg, 2, CriterionParams(2.0, 2.0, 0.7));

    REQUIRE(res.iterates.size() == 3);
    const PicardState& s0 = res.iterates[0];
    CHECK(s0.k == 0);
    CHECK_FALSE(s0.increment_lambda.has_value());
    REQUIRE(s0.traj.times.size() == 11);
    CHECK(s0.traj.times.front() == 0.0);
    CHECK(s0.traj.times.back() == Catch::Approx(0.1));
    for (const SpectralField& f : s0.traj.snapshots) CHECK(max_abs(f) == 0.0);
    for (std::size_t i = 1; i < res.iterates.size(); ++i) {
        CHECK(res.iterates[i].k == static_cast<int>(i));
        CHECK(res.iterates[i].increment_lambda.has_value());
    }
}

TEST_CASE("first iterate is the pure fractional heat flow") {
    SolverConfig cfg = picard_config(32, 0.7, 1e-2, 0.1);
    const SpectralField theta0 = dealias(make_random_band(cfg.grid, 0, 1, 21, 1.0));
    const PicardResult res = picard_iterate(theta0, cfg, 1, CriterionParams(2.0, 2.0, 0.7));

    const Trajectory& traj = res.iterates[1].traj;
    // The zero velocity makes every stage correction vanish, so the stepper
    // reduces to the exact mode-wise semigroup e^{-|xi|^gamma t}.
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        const SpectralField want = apply_multiplier(theta0, [&](int k1, int k2) {
            const double xi = std::hypot(k1 / cfg.grid.length, k2 / cfg.grid.length);
            return std::exp(-std::pow(xi, cfg.gamma) * t);
        });
        CHECK(oracles::max_coeff_diff(traj.snapshots[i], want) < 1e-13 * max_abs(theta0));
    }
}

TEST_CASE("single-mode data collapses the iteration after one step") {
    SolverConfig cfg = picard_config(32, 0.6, 5e-3, 0.2);
    const SpectralField theta0 = make_single_mode(cfg.grid);
    const PicardResult res = picard_iterate(theta0, cfg, 4, CriterionParams(2.0, 2.0, 0.6));

    // The transported field has no gradient along the transporting velocity,
    // so iterates 1, 2, 3, ... are all equal to e^{-t} sin(x1): the unit
    // circle |xi| = 1 makes the decay rate gamma-independent.
    REQUIRE(res.iterates.size() == 5);
    const std::vector<double> inc = increments(res);
    REQUIRE(inc.size() == 4);
    CHECK(inc[0] > 0.0);
    for (std::size_t i = 1; i < inc.size(); ++i) CHECK(inc[i] < 1e-12 * inc[0]);
    CHECK(res.contracted);
    CHECK_FALSE(res.diverged);

    const Trajectory& traj = res.iterates.back().traj;
    const SpectralField want = std::exp(-cfg.t_end) * dealias(theta0);
    CHECK(oracles::max_coeff_diff(traj.snapshots.back(), want) < 1e-12);
}

TEST_CASE("small-data increments decay geometrically") {
    SolverConfig cfg = picard_config(32, 1.0, 2e-3, 0.2);
    const SpectralField theta0 = make_random_band(cfg.grid, 0, 1, 11, 1.0);
    const PicardResult res = picard_iterate(theta0, cfg, 6, CriterionParams(2.0, 2.0, 1.0));

    CHECK(res.contracted);
    CHECK_FALSE(res.diverged);
    const std::vector<double> inc = increments(res);
    REQUIRE(inc.size() == 6);

    std::vector<double> ratios;
    for (std::size_t i = 1; i < inc.size(); ++i) {
        INFO("increment " << i << ": " << inc[i] << " ratio " << inc[i] / inc[i - 1]);
        CHECK(inc[i] < inc[i - 1]);
        ratios.push_back(inc[i] / inc[i - 1]);
    }
    std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
    CHECK(ratios[ratios.size() / 2] < 0.8);
}

TEST_CASE("iteration converges to the direct solve") {
    SolverConfig cfg = picard_config(32, 1.0, 2e-3, 0.2);
    const SpectralField theta0 = make_random_band(cfg.grid, 0, 1, 11, 1.0);
    const CriterionParams cp(2.0, 2.0, 1.0);

    const Trajectory direct = run_simulation(theta0, cfg);
    REQUIRE(direct.status == RunStatus::completed);

    const PicardResult res = picard_iterate(theta0, cfg, 8, cp);
    REQUIRE(res.contracted);

    DyadicDecomposition d(cfg.grid);
    const Trajectory diff = trajectory_difference(res.iterates.back().traj, direct);
    const double gap = lambda_functional(diff, cp, 2.0, d);
    INFO("lambda gap to direct solve " << gap);
    CHECK(gap < 1e-6);
}

TEST_CASE("strong data raises the no-contraction signal") {
    SolverConfig cfg = picard_config(32, 0.5, 5e-3, 0.5);
    const SpectralField theta0 = make_random_band(cfg.grid, 0, 1, 3, 40.0);
    const PicardResult res = picard_iterate(theta0, cfg, 10, CriterionParams(2.0, 2.0, 0.5));

    CHECK(res.diverged);
    CHECK_FALSE(res.contracted);
    CHECK(res.iterates.size() >= 2);
    // The flag stops the iteration early or marks exhaustion; either way the
    // recorded iterates stay structurally valid.
    for (const auto& st : res.iterates) CHECK_NOTHROW(st.traj.validate());
}

TEST_CASE("contraction functional closed form on steady single-mode data") {
    GridSpec g{64, 1.0};
    DyadicDecomposition d(g);
    FftWorkspace ws(g);
    SpectralField f = SpectralField::zero(g);
    f.set_mode(4, 0, {0.0, -0.5});

    const CriterionParams cp(2.0, 2.0, 1.0);  // alpha = 1.5, alpha + gamma/2 = 2
    const double T = 0.64;
    const Trajectory traj = constant_trajectory(f, T, 5);

    // |xi| = 4 sits exactly on the center of dyadic block 2, weight one, so
    // each Besov norm is a single term 2^{js} ||f||_2 and the constant-in-time
    // trapezoid integral is exact.
    const double l2 = lp_norm(f, 2.0, ws);
    const double want = std::sqrt(T) * std::pow(4.0, 2.0) * l2 + std::pow(4.0, 1.5) * l2;
    CHECK(lambda_functional(traj, cp, 2.0, d, ws) == Catch::Approx(want).epsilon(1e-10));

    SECTION("vanishes on the zero trajectory") {
        const Trajectory z = constant_trajectory(SpectralField::zero(g), T, 5);
        CHECK(lambda_functional(z, cp, 2.0, d, ws) == 0.0);
    }
    SECTION("is positively homogeneous") {
        Trajectory scaled = traj;
        for (SpectralField& s : scaled.snapshots) s = 3.0 * s;
        const double lam = lambda_functional(traj, cp, 2.0, d, ws);
        CHECK(lambda_functional(scaled, cp, 2.0, d, ws) == Catch::Approx(3.0 * lam).epsilon(1e-12));
    }
}

TEST_CASE("picard input validation") {
    SolverConfig cfg = picard_config(32, 1.0, 1e-2, 0.1);
    const SpectralField theta0 = make_random_band(cfg.grid, 0, 1, 5, 1.0);
    const CriterionParams cp(2.0, 2.0, 1.0);

    CHECK_THROWS_AS(picard_iterate(theta0, cfg, 0, cp), std::domain_error);

    const SpectralField wrong_grid = make_random_band(GridSpec{64, 1.0}, 0, 1, 5, 1.0);
    CHECK_THROWS_AS(picard_iterate(wrong_grid, cfg, 2, cp), std::invalid_argument);

    CriterionParams bad = cp;
    bad.gamma = 1.5;
    CHECK_THROWS_AS(picard_iterate(theta0, cfg, 2, bad), std::domain_error);
}

TEST_CASE("existence-constant calibration bisects to the feasibility edge") {
    GridSpec g{16, 1.0};
    const CriterionParams cp(2.0, 2.0, 0.5);

    // Strong supercritical data: the iteration stops contracting once the
    // horizon outgrows the resolvable window, so the bracket has a real edge.
    const CalibrationOutcome out =
        calibrate_existence_constant(g, cp, 2.0, 0, 1, 30.0, 2, 5, 48, 4, 2000.0, 32000.0, 3);

    REQUIRE(out.trace.size() == 5);
    CHECK(out.trace[0].first == 2000.0);
    CHECK(out.trace[0].second);
    CHECK(out.trace[1].first == 32000.0);
    CHECK_FALSE(out.trace[1].second);
    CHECK(out.c_cal == Catch::Approx(16000.0).epsilon(1e-12));
    double max_feasible = 0.0;
    for (const auto& [c, ok] : out.trace)
        if (ok) max_feasible = std::max(max_feasible, c);
    CHECK(out.c_cal == max_feasible);
}

TEST_CASE("calibration returns the bracket cap when everything contracts") {
    GridSpec g{16, 1.0};
    const CriterionParams cp(2.0, 2.0, 1.0);
    const CalibrationOutcome out =
        calibrate_existence_constant(g, cp, 2.0, 0, 1, 1.0, 2, 5, 24, 4, 0.5, 2.0, 2);
    CHECK(out.c_cal == 2.0);
    REQUIRE(out.trace.size() == 2);
    CHECK(out.trace[0].second);
    CHECK(out.trace[1].second);
}

TEST_CASE("calibration input validation") {
    GridSpec g{16, 1.0};
    const CriterionParams cp(2.0, 2.0, 1.0);
    CHECK_THROWS_AS(calibrate_existence_constant(g, cp, 2.0, 0, 1, 1.0, 2, 5, 24, 4, 0.0, 2.0, 2),
                    std::domain_error);
    CHECK_THROWS_AS(calibrate_existence_constant(g, cp, 2.0, 0, 1, 1.0, 2, 5, 24, 4, 2.0, 1.0, 2),
                    std::domain_error);
    CHECK_THROWS_AS(calibrate_existence_constant(g, cp, 2.0, 0, 1, 1.0, 0, 5, 24, 4, 0.5, 2.0, 2),
                    std::domain_error);
    CHECK_THROWS_AS(calibrate_existence_constant(g, cp, 2.0, 0, 1, 1.0, 2, 5, 1, 4, 0.5, 2.0, 2),
                    std::domain_error);
    CHECK_THROWS_AS(calibrate_existence_constant(g, cp, 2.0, 0, 1, 1.0, 2, 5, 24, 0, 0.5, 2.0, 2),
                    std::domain_error);
}

TEST_CASE("picard iteration is deterministic") {
    SolverConfig cfg = picard_config(32, 1.0, 4e-3, 0.1);
    const SpectralField theta0 = make_random_band(cfg.grid, 0, 1, 77, 1.0);
    const CriterionParams cp(2.0, 2.0, 1.0);

    const PicardResult a = picard_iterate(theta0, cfg, 4, cp);
    const PicardResult b = picard_iterate(theta0, cfg, 4, cp);

    REQUIRE(a.iterates.size() == b.iterates.size());
    CHECK(increments(a) == increments(b));
    CHECK(oracles::max_coeff_diff(a.iterates.back().traj.snapshots.back(),
                                  b.iterates.back().traj.snapshots.back()) == 0.0);
}
