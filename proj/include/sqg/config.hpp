#ifndef SQG_CONFIG_HPP
#define SQG_CONFIG_HPP

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqg/criterion.hpp"
#include "sqg/solver.hpp"

namespace sqg {

/** Minimal TOML-subset reader covering the run-configuration schema:
 * [section] and [a.b] tables, key = value with string/number/boolean/array
 * scalars, # comments. Parsed into the same JSON tree the .json path
 * produces, so downstream validation is format-agnostic. Errors carry the
 * 1-based line number. */
inline nlohmann::json parse_toml_subset(const std::string& text) {
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* table = &root;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("config line " + std::to_string(lineno) + ": " + msg);
    };
    auto trim = [](std::string s) {
        const auto issp = [](unsigned char c) { return std::isspace(c); };
        while (!s.empty() && issp(s.front())) s.erase(s.begin());
        while (!s.empty() && issp(s.back())) s.pop_back();
        return s;
    };

    std::function<nlohmann::json(std::string)> scalar = [&](std::string tok) -> nlohmann::json {
        tok = trim(tok);
        if (tok.empty()) fail("empty value");
        if (tok.front() == '"') {
            if (tok.size() < 2 || tok.back() != '"') fail("unterminated string");
            return tok.substr(1, tok.size() - 2);
        }
        if (tok == "true") return true;
        if (tok == "false") return false;
        if (tok.front() == '[') {
            if (tok.back() != ']') fail("unterminated array");
            nlohmann::json arr = nlohmann::json::array();
            std::string inner = tok.substr(1, tok.size() - 2);
            std::string item;
            int depth = 0;
            bool in_str = false;
            for (char c : inner) {
                if (c == '"') in_str = !in_str;
                if (!in_str && c == '[') ++depth;
                if (!in_str && c == ']') --depth;
                if (!in_str && depth == 0 && c == ',') {
                    if (!trim(item).empty()) arr.push_back(scalar(item));
                    item.clear();
                } else {
                    item += c;
                }
            }
            if (!trim(item).empty()) arr.push_back(scalar(item));
            return arr;
        }
        // Number: integer when it parses exactly as one, else double.
        try {
            std::size_t used = 0;
            if (tok.find_first_of(".eE") == std::string::npos &&
                tok.find("inf") == std::string::npos) {
                const long long v = std::stoll(tok, &used);
                if (used == tok.size()) return v;
            }
            used = 0;
            const double v = std::stod(tok, &used);
            if (used == tok.size()) return v;
        } catch (...) {
        }
        fail("cannot parse value '" + tok + "'");
        return {};
    };

    while (std::getline(in, line)) {
        ++lineno;
        // Strip comments outside strings.
        bool in_str = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_str = !in_str;
            if (line[i] == '#' && !in_str) {
                line = line.substr(0, i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated table header");
            std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty()) fail("empty table name");
            table = &root;
            std::size_t pos = 0;
            while (pos != std::string::npos) {
                const auto dot = name.find('.', pos);
                const std::string part =
                    name.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
                if (part.empty()) fail("empty table name component");
                table = &(*table)[part];
                pos = dot == std::string::npos ? std::string::npos : dot + 1;
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) fail("empty key");
        (*table)[key] = scalar(line.substr(eq + 1));
    }
    return root;
}

/** Full run configuration for the simulate/picard commands. */
struct RunConfig {
    GridSpec grid;
    double gamma = 1.0;
    double dt = 1e-3;
    double t_end = 1.0;
    std::string scheme = "etd_rk4";
    int snapshot_stride = 1;
    bool linear_only = false;

    std::string initial_kind = "single_mode";  // single_mode | random_band | vortex_pair
    double amplitude = 1.0;
    int band_j1 = 1, band_j2 = 2;
    std::uint64_t seed = 1;
    double separation = 1.0;

    double p = 2.0, r0 = 2.0;  // criterion exponents (alpha derived)

    std::string output_dir = "out";
    int checkpoint_stride = 0;  // 0 = only final
    std::vector<std::string> csv_outputs = {"norms", "monitor"};

    SolverConfig solver_config() const {
        SolverConfig sc;
        sc.grid = grid;
        sc.gamma = gamma;
        sc.dt = dt;
        sc.t_end = t_end;
        sc.scheme = scheme_from_string(scheme);
        sc.snapshot_stride = snapshot_stride;
        sc.linear_only = linear_only;
        return sc;
    }

    CriterionParams criterion() const { return CriterionParams(p, r0, gamma); }

    void validate() const {
        solver_config().validate();
        criterion().validate();
        if (initial_kind != "single_mode" && initial_kind != "random_band" &&
            initial_kind != "vortex_pair")
            throw std::domain_error("initial_data.kind must be single_mode, random_band, or vortex_pair");
        if (checkpoint_stride < 0)
            throw std::domain_error("outputs.checkpoint_stride must be >= 0");
        for (const auto& o : csv_outputs)
            if (o != "norms" && o != "monitor")
                throw std::domain_error("outputs.csv must contain only 'norms' and 'monitor'");
    }
};

namespace detail {

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

} // namespace detail

/** Builds a RunConfig from the parsed JSON tree (either config format). */
inline RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig c;
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        detail::read_field(g, "n", c.grid.n);
        detail::read_field(g, "length", c.grid.length);
        detail::read_field(g, "dealias_fraction", c.grid.dealias_fraction);
    }
    if (j.contains("solver")) {
        const auto& s = j.at("solver");
        detail::read_field(s, "gamma", c.gamma);
        detail::read_field(s, "dt", c.dt);
        detail::read_field(s, "t_end", c.t_end);
        detail::read_field(s, "scheme", c.scheme);
        detail::read_field(s, "snapshot_stride", c.snapshot_stride);
        detail::read_field(s, "linear_only", c.linear_only);
    }
    if (j.contains("initial_data")) {
        const auto& i = j.at("initial_data");
        detail::read_field(i, "kind", c.initial_kind);
        detail::read_field(i, "amplitude", c.amplitude);
        detail::read_field(i, "j1", c.band_j1);
        detail::read_field(i, "j2", c.band_j2);
        detail::read_field(i, "seed", c.seed);
        detail::read_field(i, "separation", c.separation);
    }
    if (j.contains("criterion")) {
        const auto& k = j.at("criterion");
        detail::read_field(k, "p", c.p);
        detail::read_field(k, "r0", c.r0);
    }
    if (j.contains("outputs")) {
        const auto& o = j.at("outputs");
        detail::read_field(o, "dir", c.output_dir);
        detail::read_field(o, "checkpoint_stride", c.checkpoint_stride);
        detail::read_field(o, "csv", c.csv_outputs);
    }
    // Environment override for the output directory.
    if (const char* env = std::getenv("SQG_OUTPUT_DIR"); env && *env) c.output_dir = env;
    return c;
}

inline nlohmann::json load_config_tree(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file " + path.string());
    std::stringstream buf;
    buf << is.rdbuf();
    if (path.extension() == ".json") return nlohmann::json::parse(buf.str());
    return parse_toml_subset(buf.str());
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
    return run_config_from_json(load_config_tree(path));
}

} // namespace sqg

#endif
