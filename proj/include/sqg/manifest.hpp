#ifndef SQG_MANIFEST_HPP
#define SQG_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <openssl/evp.h>

namespace sqg {

inline std::string sha256_hex(const void* data, std::size_t len) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw std::runtime_error("sha256: context allocation failed");
    if (EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data, len) != 1 ||
        EVP_DigestFinal_ex(ctx, digest, &digest_len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("sha256: digest failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * digest_len);
    for (unsigned int i = 0; i < digest_len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

inline std::string sha256_hex(const std::string& s) { return sha256_hex(s.data(), s.size()); }

inline std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("sha256: cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return sha256_hex(data);
}

/** Provenance record for one run: the configuration echo, timing, final
 * status, and a content hash for every produced file. Written atomically
 * (temp file + rename) so readers never observe a partial manifest. */
struct RunManifest {
    nlohmann::json config;
    std::string status;
    std::string started_at;
    std::string finished_at;
    double wall_seconds = 0.0;
    double cfl_worst_ratio = 0.0;
    std::string initial_data_sha256;
    std::vector<std::pair<std::string, std::string>> files;  // (relative path, sha256)

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["config"] = config;
        j["status"] = status;
        j["started_at"] = started_at;
        j["finished_at"] = finished_at;
        j["wall_seconds"] = wall_seconds;
        j["cfl_worst_ratio"] = cfl_worst_ratio;
        j["initial_data_sha256"] = initial_data_sha256;
        nlohmann::json fs = nlohmann::json::array();
        for (const auto& [p, h] : files) fs.push_back({{"path", p}, {"sha256", h}});
        j["files"] = fs;
        return j;
    }
};

inline void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("manifest: cannot open " + tmp.string());
        os << m.to_json().dump(2) << "\n";
        if (!os) throw std::runtime_error("manifest: write failed");
    }
    std::filesystem::rename(tmp, path);
}

/** Re-hashes every file listed in a manifest; returns the mismatched paths
 * (empty = verified). Paths are resolved relative to the manifest. */
inline std::vector<std::string> verify_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream is(manifest_path);
    if (!is) throw std::runtime_error("manifest: cannot open " + manifest_path.string());
    nlohmann::json j = nlohmann::json::parse(is);
    std::vector<std::string> bad;
    const auto base = manifest_path.parent_path();
    for (const auto& f : j.at("files")) {
        const std::string rel = f.at("path").get<std::string>();
        const std::string want = f.at("sha256").get<std::string>();
        std::string got;
        try {
            got = sha256_file(base / rel);
        } catch (const std::exception&) {
            bad.push_back(rel + " (missing)");
            continue;
        }
        if (got != want) bad.push_back(rel);
    }
    return bad;
}

/** UTC wall-clock timestamp, ISO 8601. */
inline std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc;
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

} // namespace sqg

#endif
