#ifndef SQG_CHECKPOINT_HPP
#define SQG_CHECKPOINT_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "sqg/field.hpp"

namespace sqg {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian; big-endian hosts need byte swaps");

/** On-disk state snapshot.
 *
 * Layout (little-endian): magic "SQGF", u32 version (= 1), u32 n,
 * f64 length, f64 gamma, f64 time, then n * (n/2 + 1) coefficients as
 * interleaved (re, im) f64 pairs, row-major over the stored half spectrum.
 * Writing then reading reproduces every byte of the payload. */
struct Checkpoint {
    SpectralField field;
    double gamma = 0.0;
    double time = 0.0;
};

namespace detail {

template <typename T>
void put(std::ofstream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("checkpoint: truncated file");
    return v;
}

} // namespace detail

inline void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("checkpoint: cannot open " + path.string() + " for writing");
    os.write("SQGF", 4);
    detail::put(os, std::uint32_t{1});
    detail::put(os, static_cast<std::uint32_t>(cp.field.grid.n));
    detail::put(os, cp.field.grid.length);
    detail::put(os, cp.gamma);
    detail::put(os, cp.time);
    static_assert(sizeof(std::complex<double>) == 16);
    os.write(reinterpret_cast<const char*>(cp.field.coeffs.data()),
             static_cast<std::streamsize>(cp.field.coeffs.size() * 16));
    if (!os) throw std::runtime_error("checkpoint: write failed for " + path.string());
}

inline Checkpoint read_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "SQGF", 4) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path.string());
    const auto version = detail::get<std::uint32_t>(is);
    if (version != 1)
        throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
    const auto n = detail::get<std::uint32_t>(is);
    Checkpoint cp;
    cp.field.grid.n = static_cast<int>(n);
    cp.field.grid.length = detail::get<double>(is);
    cp.gamma = detail::get<double>(is);
    cp.time = detail::get<double>(is);
    cp.field.grid.validate();
    cp.field.coeffs.resize(cp.field.grid.spectral_size());
    is.read(reinterpret_cast<char*>(cp.field.coeffs.data()),
            static_cast<std::streamsize>(cp.field.coeffs.size() * 16));
    if (!is) throw std::runtime_error("checkpoint: truncated payload in " + path.string());
    return cp;
}

/** Largest mode-wise coefficient difference between two checkpoints on the
 * same grid; refuses incompatible grids. */
inline double checkpoint_max_diff(const Checkpoint& a, const Checkpoint& b) {
    if (!(a.field.grid == b.field.grid))
        throw std::invalid_argument("checkpoint diff: incompatible grids");
    double m = 0.0;
    for (std::size_t i = 0; i < a.field.coeffs.size(); ++i)
        m = std::max(m, std::abs(a.field.coeffs[i] - b.field.coeffs[i]));
    return m;
}

} // namespace sqg

#endif
