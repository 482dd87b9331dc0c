#ifndef SQG_OPERATORS_HPP
#define SQG_OPERATORS_HPP

#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "sqg/fft.hpp"

namespace sqg {

constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

/** Applies a diagonal Fourier multiplier m(k1, k2) to every stored mode. */
template <typename Mult>
SpectralField apply_multiplier(const SpectralField& f, Mult&& m) {
    SpectralField out(f.grid);
    const int n = f.grid.n, cols = f.grid.cols();
    for (int row = 0; row < n; ++row) {
        const int k1 = f.grid.k1_of_row(row);
        for (int col = 0; col < cols; ++col)
            out.at(row, col) = m(k1, col) * f.at(row, col);
    }
    return out;
}

/** Fractional Laplacian (-Delta)^beta, the multiplier |xi|^{2 beta}.
 *
 * The zero mode maps to itself at beta = 0 and to zero otherwise; a negative
 * power applied to a field with nonzero mean drops the mean and flags it. */
inline SpectralField fractional_laplacian(const SpectralField& f, double beta) {
    const double L = f.grid.length;
    SpectralField out = apply_multiplier(f, [&](int k1, int k2) -> double {
        if (k1 == 0 && k2 == 0) return beta == 0.0 ? 1.0 : 0.0;
        const double xi_sq = (static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2) / (L * L);
        return std::pow(xi_sq, beta);
    });
    if (beta < 0.0 && std::abs(f.at(0, 0)) > 0.0) out.flags.mean_dropped = true;
    return out;
}

/** Partial derivative along axis (1 or 2): multiplier i xi_axis. */
inline SpectralField derivative(const SpectralField& f, int axis) {
    if (axis != 1 && axis != 2) throw std::invalid_argument("derivative: axis must be 1 or 2");
    const double L = f.grid.length;
    return apply_multiplier(f, [&](int k1, int k2) {
        const double xi = (axis == 1 ? k1 : k2) / L;
        return std::complex<double>(0.0, xi);
    });
}

struct VelocityField {
    SpectralField u1, u2;
};

/** Velocity from the active scalar via the perpendicular Riesz pair,
 * u = (-R2 theta, R1 theta): multipliers (-i xi2/|xi|, i xi1/|xi|).
 * Divergence-free mode by mode; the zero mode maps to zero. */
inline VelocityField riesz_velocity(const SpectralField& theta) {
    const double L = theta.grid.length;
    auto component = [&](int which) {
        return apply_multiplier(theta, [&, which](int k1, int k2) -> std::complex<double> {
            if (k1 == 0 && k2 == 0) return 0.0;
            const double abs_xi = std::hypot(k1 / L, k2 / L);
            const double xi = (which == 1 ? -k2 : k1) / L;
            return std::complex<double>(0.0, xi / abs_xi);
        });
    };
    return {component(1), component(2)};
}

/** Zeroes every mode with |k_i| above the dealias limit (2/3 rule by default). */
inline SpectralField dealias(const SpectralField& f) {
    return apply_multiplier(f, [&](int k1, int k2) -> double {
        return f.grid.in_dealias_band(k1, k2) ? 1.0 : 0.0;
    });
}

inline void require_dealias_band_nonempty(const GridSpec& g) {
    if (g.dealias_limit() < 1.0)
        throw std::invalid_argument(
            "dealiased band is empty: dealias_fraction * n/2 < 1 leaves no nonzero modes");
}

/** L^p norm via collocation quadrature, ||f||_p^p = sum |f(x_i)|^p dx^2;
 * p = infinity takes the max over samples. Requires p >= 1. */
inline double lp_norm(const SpectralField& f, double p, FftWorkspace& ws) {
    if (!(p >= 1.0)) throw std::domain_error("lp_norm requires p >= 1");
    auto samples = ws.to_physical(f);
    if (p == kLpInfinity) {
        double m = 0.0;
        for (double s : samples) m = std::max(m, std::abs(s));
        return m;
    }
    double sum = 0.0;
    if (p == 2.0) {
        for (double s : samples) sum += s * s;
    } else {
        for (double s : samples) sum += std::pow(std::abs(s), p);
    }
    return std::pow(sum * f.grid.cell_area(), 1.0 / p);
}

/** Convenience overload with a transient workspace. */
inline double lp_norm(const SpectralField& f, double p) {
    FftWorkspace ws(f.grid);
    return lp_norm(f, p, ws);
}

/** Advection term u . grad v, computed pseudo-spectrally: factors are masked
 * to the dealias band, multiplied on the grid, and the product re-masked, so
 * the result is alias-free for band-limited inputs. */
inline SpectralField advect(const VelocityField& u, const SpectralField& v, FftWorkspace& ws) {
    require_dealias_band_nonempty(v.grid);
    check_same_grid(u.u1, v);
    auto p1 = ws.to_physical(dealias(u.u1));
    auto p2 = ws.to_physical(dealias(u.u2));
    auto d1 = ws.to_physical(dealias(derivative(v, 1)));
    auto d2 = ws.to_physical(dealias(derivative(v, 2)));
    std::vector<double> prod(p1.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = p1[i] * d1[i] + p2[i] * d2[i];
    return dealias(ws.to_spectral(prod));
}

/** Nonlinear term u . grad theta with u the Riesz velocity of theta. */
inline SpectralField nonlinear_term(const SpectralField& theta, FftWorkspace& ws) {
    return advect(riesz_velocity(theta), theta, ws);
}

/** Energy dissipation rate ||Lambda^{gamma/2} theta||_2^2, evaluated
 * spectrally; Lambda^{gamma/2} = (-Delta)^{gamma/4}. */
inline double dissipation_rate(const SpectralField& f, double gamma) {
    return l2_norm_sq_spectral(fractional_laplacian(f, gamma / 4.0));
}

} // namespace sqg

#endif
