// Command-line driver: simulate, verify, picard, checkpoint, manifest.

#include <chrono>
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "sqg/sqg.hpp"

namespace {

using namespace sqg;

SpectralField make_initial(const RunConfig& c) {
    if (c.initial_kind == "single_mode") return make_single_mode(c.grid, c.amplitude);
    if (c.initial_kind == "random_band")
        return make_random_band(c.grid, c.band_j1, c.band_j2, c.seed, c.amplitude);
    return make_vortex_pair(c.grid, c.separation, c.amplitude);
}

std::string field_sha256(const SpectralField& f) {
    return sha256_hex(f.coeffs.data(), f.coeffs.size() * sizeof(std::complex<double>));
}

void add_file(RunManifest& m, const std::filesystem::path& dir, const std::string& name) {
    m.files.emplace_back(name, sha256_file(dir / name));
}

int cmd_simulate(const std::string& config_path) {
    const nlohmann::json tree = load_config_tree(config_path);
    RunConfig cfg = run_config_from_json(tree);
    cfg.validate();

    const auto t0 = std::chrono::steady_clock::now();
    RunManifest manifest;
    manifest.config = tree;
    manifest.started_at = iso_timestamp();

    const std::filesystem::path out_dir(cfg.output_dir);
    std::filesystem::create_directories(out_dir);

    const SpectralField theta0 = make_initial(cfg);
    manifest.initial_data_sha256 = field_sha256(theta0);

    const Trajectory traj = run_simulation(theta0, cfg.solver_config());

    const CriterionParams crit = cfg.criterion();
    DyadicDecomposition decomp(cfg.grid);
    FftWorkspace ws(cfg.grid);
    const MonitorSeries monitor = regularity_monitor(traj, crit, decomp, ws);

    for (const auto& kind : cfg.csv_outputs) {
        if (kind == "norms") {
            write_norm_csv(out_dir / "norms.csv", traj);
            add_file(manifest, out_dir, "norms.csv");
        } else if (kind == "monitor") {
            write_monitor_csv(out_dir / "monitor.csv", monitor);
            add_file(manifest, out_dir, "monitor.csv");
        }
    }

    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const long step = std::lround(traj.times[i] / cfg.dt);
        const bool is_final = i + 1 == traj.snapshots.size();
        if (!is_final &&
            (cfg.checkpoint_stride <= 0 || step == 0 || step % cfg.checkpoint_stride != 0))
            continue;
        char name[64];
        if (is_final)
            std::snprintf(name, sizeof(name), "final.sqgf");
        else
            std::snprintf(name, sizeof(name), "state_%06ld.sqgf", step);
        write_checkpoint(out_dir / name, {traj.snapshots[i], cfg.gamma, traj.times[i]});
        add_file(manifest, out_dir, name);
    }

    manifest.status = to_string(traj.status);
    manifest.cfl_worst_ratio = traj.cfl_worst_ratio;
    manifest.finished_at = iso_timestamp();
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out_dir / "run_manifest.json", manifest);

    std::cout << "status: " << to_string(traj.status) << "\n"
              << "t_final: " << format_double(traj.times.back()) << "\n"
              << "monitor_verdict: " << monitor.verdict << "\n"
              << "last_reliable_time: " << format_double(traj.last_reliable_time) << "\n";
    if (traj.cfl_worst_ratio > 1.0)
        std::cout << "advisory: dt exceeded the CFL guideline (worst ratio "
                  << format_double(traj.cfl_worst_ratio) << ")\n";
    return traj.status == RunStatus::completed ? 0 : traj.status == RunStatus::blowup_flagged ? 2 : 1;
}

double jget(const nlohmann::json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "infinity") return kLpInfinity;
        return std::stod(s);
    }
    return v.get<double>();
}

int cmd_verify(const std::string& suite, const std::string& config_path) {
    const nlohmann::json tree =
        config_path.empty() ? nlohmann::json::object() : load_config_tree(config_path);
    const RunConfig cfg = run_config_from_json(tree);
    const nlohmann::json v = tree.contains("verify") ? tree.at("verify") : nlohmann::json::object();

    GridSpec grid = cfg.grid;
    if (grid.n == 0) grid.n = 64;
    grid.validate();
    DyadicDecomposition decomp(grid);

    const std::filesystem::path out_dir(cfg.output_dir);
    std::filesystem::create_directories(out_dir);

    const int samples = static_cast<int>(jget(v, "samples", 100));
    const std::uint64_t seed = static_cast<std::uint64_t>(jget(v, "seed", 1));
    const int j_lo = static_cast<int>(jget(v, "j_lo", 0));
    const int j_hi = static_cast<int>(jget(v, "j_hi", 4));
    const double p = jget(v, "p", 2.0);
    const double q = jget(v, "q", 2.0);
    const double gamma = jget(v, "gamma", 1.0);

    std::vector<LemmaReport> reports;
    if (suite == "bernstein") {
        reports.push_back(verify_bernstein(decomp, p, jget(v, "q_out", kLpInfinity),
                                           jget(v, "s", 1.0), j_lo, j_hi, samples, seed));
    } else if (suite == "gen_bernstein") {
        reports = verify_gen_bernstein(decomp, p, gamma, j_lo, j_hi, samples, seed);
    } else if (suite == "commutator" || suite == "product") {
        const int snaps = static_cast<int>(jget(v, "snapshots", 9));
        const double t_end = jget(v, "t_end", 1.0);
        const int b1 = static_cast<int>(jget(v, "band_j1", 1));
        const int b2 = static_cast<int>(jget(v, "band_j2", 3));
        const Trajectory theta_u =
            make_modulated_trajectory(grid, b1, b2, seed, snaps, t_end);
        const Trajectory w = make_modulated_trajectory(grid, b1, b2, seed ^ 0xabcdefull, snaps, t_end);
        if (suite == "commutator") {
            CommutatorParams cp;
            cp.p = p;
            cp.q = q;
            cp.rho1 = jget(v, "rho1", 0.5);
            cp.rho2 = jget(v, "rho2", 0.5);
            cp.r1 = jget(v, "r1", 2.0);
            cp.r2 = jget(v, "r2", 2.0);
            reports.push_back(verify_commutator_estimate(theta_u, w, cp, decomp));
        } else {
            ProductParams pp;
            pp.p = p;
            pp.q = q;
            pp.s = jget(v, "s", 0.25);
            pp.s1 = jget(v, "s1", 0.5);
            pp.r1 = jget(v, "r1", 2.0);
            pp.r2 = jget(v, "r2", 2.0);
            reports.push_back(verify_product_estimate(theta_u, w, pp, decomp));
        }
    } else if (suite == "partition") {
        reports.push_back(verify_partition(decomp));
    } else if (suite == "scaling") {
        reports.push_back(verify_scaling(grid, static_cast<int>(jget(v, "m", 1)), gamma, p, seed));
    } else {
        std::cerr << "error: unknown suite '" << suite
                  << "' (expected bernstein, gen_bernstein, commutator, product, partition, "
                     "scaling)\n";
        return 1;
    }

    bool ok = true;
    for (const auto& rep : reports) {
        write_json(out_dir / (rep.lemma_id + "_report.json"), to_json(rep));
        std::cout << rep.lemma_id << ": " << rep.verdict;
        for (const auto& [k, val] : rep.constants) std::cout << "  " << k << "=" << format_double(val);
        std::cout << "\n";
        if (rep.verdict != "passed" && rep.verdict != "bounded") ok = false;
    }
    return ok ? 0 : 1;
}

int cmd_picard(const std::string& config_path, int k_max) {
    const nlohmann::json tree = load_config_tree(config_path);
    RunConfig cfg = run_config_from_json(tree);
    cfg.validate();

    const std::filesystem::path out_dir(cfg.output_dir);
    std::filesystem::create_directories(out_dir);

    const SpectralField theta0 = make_initial(cfg);
    const CriterionParams crit = cfg.criterion();
    const PicardResult result = picard_iterate(theta0, cfg.solver_config(), k_max, crit);

    nlohmann::json rows = nlohmann::json::array();
    for (const auto& st : result.iterates) {
        nlohmann::json row;
        row["k"] = st.k;
        if (st.increment_lambda) row["increment_lambda"] = *st.increment_lambda;
        row["status"] = to_string(st.traj.status);
        rows.push_back(row);
        std::cout << "k=" << st.k;
        if (st.increment_lambda)
            std::cout << "  increment_lambda=" << format_double(*st.increment_lambda);
        std::cout << "\n";
    }
    nlohmann::json rep;
    rep["iterates"] = rows;
    rep["contracted"] = result.contracted;
    rep["diverged"] = result.diverged;
    write_json(out_dir / "picard_report.json", rep);

    std::cout << (result.contracted ? "contraction: yes" : "contraction: no") << "\n";
    return result.contracted ? 0 : 2;
}

int cmd_checkpoint_info(const std::string& path) {
    const Checkpoint cp = read_checkpoint(path);
    std::cout << "n: " << cp.field.grid.n << "\n"
              << "length: " << format_double(cp.field.grid.length) << "\n"
              << "gamma: " << format_double(cp.gamma) << "\n"
              << "time: " << format_double(cp.time) << "\n"
              << "l2_norm: " << format_double(l2_norm_spectral(cp.field)) << "\n"
              << "mean: " << format_double(mean_value(cp.field)) << "\n"
              << "hermitian_defect: " << format_double(hermitian_defect(cp.field)) << "\n"
              << "sha256: " << sha256_file(path) << "\n";
    return 0;
}

int cmd_checkpoint_diff(const std::string& a, const std::string& b) {
    const Checkpoint ca = read_checkpoint(a), cb = read_checkpoint(b);
    const double d = checkpoint_max_diff(ca, cb);
    std::cout << "max_coeff_diff: " << format_double(d) << "\n"
              << "time_diff: " << format_double(cb.time - ca.time) << "\n";
    return 0;
}

int cmd_manifest_verify(const std::string& path) {
    const auto bad = verify_manifest(path);
    if (bad.empty()) {
        std::cout << "verified\n";
        return 0;
    }
    for (const auto& b : bad) std::cout << "mismatch: " << b << "\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral solver and Littlewood-Paley toolkit for the dissipative "
                 "surface quasi-geostrophic equation"};
    app.require_subcommand(1);

    std::string config_path, suite, path_a, path_b;
    int k_max = 8;

    auto* sim = app.add_subcommand("simulate", "advance an initial state and write reports");
    sim->add_option("-c,--config", config_path, "run configuration (.toml or .json)")->required();

    auto* ver = app.add_subcommand("verify", "run an inequality-verification suite");
    ver->add_option("suite", suite, "bernstein|gen_bernstein|commutator|product|partition|scaling")
        ->required();
    ver->add_option("-c,--config", config_path, "suite configuration (.toml or .json)");

    auto* pic = app.add_subcommand("picard", "successive-approximation diagnostics");
    pic->add_option("-c,--config", config_path, "run configuration (.toml or .json)")->required();
    pic->add_option("--k-max", k_max, "number of iterates")->check(CLI::PositiveNumber);

    auto* ck = app.add_subcommand("checkpoint", "inspect binary state files");
    ck->require_subcommand(1);
    auto* ck_info = ck->add_subcommand("info", "print header and content summary");
    ck_info->add_option("file", path_a, "checkpoint file")->required();
    auto* ck_diff = ck->add_subcommand("diff", "compare two compatible checkpoints");
    ck_diff->add_option("a", path_a, "first checkpoint")->required();
    ck_diff->add_option("b", path_b, "second checkpoint")->required();

    auto* man = app.add_subcommand("manifest", "run-manifest utilities");
    man->require_subcommand(1);
    auto* man_ver = man->add_subcommand("verify", "re-hash the files listed in a manifest");
    man_ver->add_option("file", path_a, "run_manifest.json")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config_path);
        if (ver->parsed()) return cmd_verify(suite, config_path);
        if (pic->parsed()) return cmd_picard(config_path, k_max);
        if (ck->parsed()) {
            if (ck_info->parsed()) return cmd_checkpoint_info(path_a);
            return cmd_checkpoint_diff(path_a, path_b);
        }
        if (man->parsed()) return cmd_manifest_verify(path_a);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}
