#ifndef SQG_INITIAL_DATA_HPP
#define SQG_INITIAL_DATA_HPP

#include <cmath>
#include <cstdint>

#include "sqg/fft.hpp"
#include "sqg/operators.hpp"

namespace sqg {

/** theta0(x) = amplitude * sin(x1 / L): the pair of modes k = (+-1, 0). */
inline SpectralField make_single_mode(const GridSpec& g, double amplitude = 1.0) {
    g.validate();
    SpectralField f(g);
    f.set_mode(1, 0, std::complex<double>(0.0, -0.5 * amplitude));
    return f;
}

namespace detail {

/** SplitMix64; the per-mode key makes draws independent of grid size. */
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline double uniform01(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

} // namespace detail

/** Random field supported on the dyadic band j1..j2 (frequencies
 * 2^{j1-1} < |xi| < 2^{j2+1}), restricted to the dealias box so the field is
 * directly usable as solver data. Zero mean.
 *
 * Each mode's value is a pure function of (seed, k), not of the grid, so the
 * same band and seed produce the same spectral content on any grid large
 * enough to hold it. The result is normalized to ||theta||_{L^2} =
 * amplitude. Throws when no lattice mode falls inside the band. */
inline SpectralField make_random_band(const GridSpec& g, int j1, int j2, std::uint64_t seed,
                                      double amplitude = 1.0) {
    g.validate();
    if (j2 < j1) throw std::invalid_argument("make_random_band: need j1 <= j2");
    const double xi_lo = std::ldexp(1.0, j1 - 1);
    const double xi_hi = std::ldexp(1.0, j2 + 1);
    SpectralField f(g);
    const int half = g.n / 2;
    bool any = false;
    for (int k1 = -half; k1 <= half; ++k1) {
        for (int k2 = 0; k2 <= half; ++k2) {
            // Canonical representative of each conjugate pair: k2 > 0, or
            // k2 == 0 and k1 > 0. set_mode mirrors into the stored half.
            if (k2 == 0 && k1 <= 0) continue;
            if (!g.in_dealias_band(k1, k2)) continue;
            const double abs_xi = std::hypot(k1 / g.length, k2 / g.length);
            if (!(abs_xi > xi_lo && abs_xi < xi_hi)) continue;
            any = true;
            const std::uint64_t key =
                detail::mix64(seed ^ detail::mix64((static_cast<std::uint64_t>(
                                                        static_cast<std::uint32_t>(k1))
                                                    << 32) ^
                                                   static_cast<std::uint32_t>(k2)));
            const double u1 = detail::uniform01(detail::mix64(key));
            const double u2 = detail::uniform01(detail::mix64(key + 1));
            const double radius = std::sqrt(std::max(u1, 1e-12));
            const double phase = 2.0 * M_PI * u2;
            f.set_mode(k1, k2,
                       std::complex<double>(radius * std::cos(phase), radius * std::sin(phase)));
        }
    }
    if (!any)
        throw std::invalid_argument(
            "make_random_band: no resolvable lattice mode inside the requested band");
    const double norm = l2_norm_spectral(f);
    return (amplitude / norm) * f;
}

/** Opposite-signed Gaussian vortices at (pi L -+ sep/2, pi L); mean removed
 * exactly so the scalar is a genuine zero-average torus field. */
inline SpectralField make_vortex_pair(const GridSpec& g, double separation, double amplitude = 1.0) {
    g.validate();
    if (!(separation > 0.0) || separation >= g.box_size())
        throw std::invalid_argument("make_vortex_pair: separation must lie in (0, box size)");
    const double box = g.box_size();
    const double sigma = std::max(separation / 3.0, box / 32.0);
    const double cy = 0.5 * box;
    const double cx1 = 0.5 * box - 0.5 * separation;
    const double cx2 = 0.5 * box + 0.5 * separation;

    // Periodized Gaussian: fold the nearest-image distance.
    auto wrap = [box](double d) {
        d = std::fmod(d + 0.5 * box, box);
        if (d < 0.0) d += box;
        return d - 0.5 * box;
    };
    std::vector<double> samples(g.physical_size());
    for (int i1 = 0; i1 < g.n; ++i1) {
        const double x1 = box * i1 / g.n;
        for (int i2 = 0; i2 < g.n; ++i2) {
            const double x2 = box * i2 / g.n;
            auto bump = [&](double cx) {
                const double dx = wrap(x1 - cx), dy = wrap(x2 - cy);
                return std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            };
            samples[static_cast<std::size_t>(i1) * g.n + i2] =
                amplitude * (bump(cx1) - bump(cx2));
        }
    }
    FftWorkspace ws(g);
    SpectralField f = ws.to_spectral(samples);
    f.at(0, 0) = 0.0;
    return dealias(f);
}

} // namespace sqg

#endif
