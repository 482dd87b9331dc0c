#ifndef SQG_REPORTS_HPP
#define SQG_REPORTS_HPP

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqg/lemmas.hpp"
#include "sqg/monitor.hpp"
#include "sqg/trajectory.hpp"

namespace sqg {

/** Shortest round-trip decimal form of a double (std::to_chars). */
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline nlohmann::json to_json(const LemmaReport& rep) {
    nlohmann::json j;
    j["lemma_id"] = rep.lemma_id;
    j["params"] = rep.params;
    j["mollifier"] = rep.mollifier;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& pt : rep.per_j)
        rows.push_back({{"j", pt.j}, {"lhs", pt.lhs}, {"rhs", pt.rhs}, {"ratio", pt.ratio}});
    j["per_j"] = rows;
    j["constants"] = rep.constants;
    j["verdict"] = rep.verdict;
    j["skipped"] = rep.skipped;
    return j;
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << j.dump(2) << "\n";
}

/** RFC 4180 CSV: header row, CRLF line endings, full round-trip precision
 * for every floating-point cell. */
class CsvWriter {
  public:
    explicit CsvWriter(const std::filesystem::path& path) : os_(path, std::ios::binary | std::ios::trunc) {
        if (!os_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ',';
            os_ << escape(cells[i]);
        }
        os_ << "\r\n";
    }

  private:
    static std::string escape(const std::string& s) {
        if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
        return out;
    }

    std::ofstream os_;
};

/** Per-step norm series: one row per (time, norm_id). */
inline void write_norm_csv(const std::filesystem::path& path, const Trajectory& traj) {
    CsvWriter csv(path);
    csv.row({"time", "norm_id", "value"});
    for (const auto& d : traj.diagnostics) {
        const std::pair<const char*, double> rows[] = {
            {"energy", d.energy}, {"dissipation", d.dissipation}, {"L2", d.l2},
            {"L4", d.l4},         {"L8", d.l8},                   {"Linf", d.linf},
            {"u_max", d.u_max},   {"top_octave_fraction", d.top_octave_fraction},
        };
        for (const auto& [id, value] : rows)
            csv.row({format_double(d.time), id, format_double(value)});
    }
}

inline void write_monitor_csv(const std::filesystem::path& path, const MonitorSeries& series) {
    CsvWriter csv(path);
    csv.row({"time", "besov_alpha", "running_integral"});
    for (std::size_t i = 0; i < series.times.size(); ++i)
        csv.row({format_double(series.times[i]), format_double(series.besov_alpha[i]),
                 format_double(series.running_integral[i])});
}

inline nlohmann::json to_json(const FitReport& fit) {
    return {{"exponent", fit.exponent},     {"amplitude", fit.amplitude},
            {"window_lo", fit.t_lo},        {"window_hi", fit.t_hi},
            {"n_points", fit.n_points},     {"blowup_consistent", fit.blowup_consistent}};
}

} // namespace sqg

#endif
