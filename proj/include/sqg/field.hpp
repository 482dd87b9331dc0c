#ifndef SQG_FIELD_HPP
#define SQG_FIELD_HPP

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg {

/** Metadata set by operations that silently altered content. */
struct FieldFlags {
    bool mean_dropped = false;  // zero mode removed by a homogeneous multiplier
    bool truncated = false;     // modes lost to a lattice/band boundary
    bool out_of_band = false;   // projection band lies outside the resolvable range
};

/** Scalar field in half-spectrum representation.
 *
 * coeffs[row * cols + col] holds the Fourier coefficient of mode
 * (k1_of_row(row), col). Coefficients of modes with k2 < 0 are implied by
 * Hermitian symmetry: theta_hat(-k) = conj(theta_hat(k)). Columns 0 and n/2
 * carry their own symmetry constraint in k1. */
struct SpectralField {
    GridSpec grid;
    std::vector<std::complex<double>> coeffs;
    FieldFlags flags;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g), coeffs(g.spectral_size()) {}

    static SpectralField zero(const GridSpec& g) { return SpectralField(g); }

    std::complex<double>& at(int row, int col) {
        return coeffs[static_cast<std::size_t>(row) * grid.cols() + col];
    }
    const std::complex<double>& at(int row, int col) const {
        return coeffs[static_cast<std::size_t>(row) * grid.cols() + col];
    }

    /** Coefficient of an arbitrary mode (k1, k2), |k_i| <= n/2; modes in the
     * implied half are reconstructed by conjugation. */
    std::complex<double> mode(int k1, int k2) const {
        if (k2 >= 0) return at(grid.row_of_k1(k1), k2);
        return std::conj(at(grid.row_of_k1(-k1), -k2));
    }

    /** Assign mode (k1, k2) and keep the stored array Hermitian. For modes
     * whose mirror lives in the stored half (k2 == 0 or k2 == n/2) the mirror
     * entry is written as the conjugate; self-conjugate modes are forced
     * real. */
    void set_mode(int k1, int k2, std::complex<double> v) {
        const int half = grid.n / 2;
        if (k2 < 0) {
            k1 = -k1;
            k2 = -k2;
            v = std::conj(v);
        }
        const bool self = (k1 == 0 || k1 == -half || k1 == half) && (k2 == 0 || k2 == half);
        if (self) v = std::complex<double>(v.real(), 0.0);
        at(grid.row_of_k1(k1), k2) = v;
        if ((k2 == 0 || k2 == half) && !self)
            at(grid.row_of_k1(-k1), k2) = std::conj(v);
    }
};

/** Largest absolute deviation from Hermitian symmetry among stored entries. */
inline double hermitian_defect(const SpectralField& f) {
    const int n = f.grid.n, half = n / 2;
    double defect = 0.0;
    for (int col : {0, half}) {
        for (int row = 1; row < half; ++row) {
            const auto d = f.at(row, col) - std::conj(f.at(n - row, col));
            defect = std::max(defect, std::abs(d));
        }
        defect = std::max(defect, std::abs(f.at(0, col).imag()));
        defect = std::max(defect, std::abs(f.at(half, col).imag()));
    }
    return defect;
}

inline double max_abs(const SpectralField& f) {
    double m = 0.0;
    for (const auto& c : f.coeffs) m = std::max(m, std::abs(c));
    return m;
}

/** Throws when the stored half spectrum is not Hermitian to relative
 * tolerance tol (absolute when the field is identically zero). */
inline void require_hermitian(const SpectralField& f, double tol = 1e-10) {
    const double scale = std::max(max_abs(f), 1.0);
    if (hermitian_defect(f) > tol * scale)
        throw std::invalid_argument("spectral field violates Hermitian symmetry");
}

inline bool all_finite(const SpectralField& f) {
    for (const auto& c : f.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

inline double mean_value(const SpectralField& f) { return f.at(0, 0).real(); }

/** Squared L^2 norm by Parseval over the full mode lattice: interior columns
 * count twice for their conjugate mirrors. */
inline double l2_norm_sq_spectral(const SpectralField& f) {
    const int n = f.grid.n, cols = f.grid.cols(), half = n / 2;
    double sum = 0.0;
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < cols; ++col) {
            const double a = std::norm(f.at(row, col));
            sum += (col == 0 || col == half) ? a : 2.0 * a;
        }
    const double box = f.grid.box_size();
    return box * box * sum;
}

inline double l2_norm_spectral(const SpectralField& f) {
    return std::sqrt(l2_norm_sq_spectral(f));
}

inline void check_same_grid(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("fields live on different grids");
}

inline SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    check_same_grid(a, b);
    SpectralField out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
    return out;
}

inline SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    check_same_grid(a, b);
    SpectralField out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
    return out;
}

inline SpectralField operator*(double s, const SpectralField& a) {
    SpectralField out = a;
    for (auto& c : out.coeffs) c *= s;
    return out;
}

inline SpectralField operator*(const SpectralField& a, double s) { return s * a; }

} // namespace sqg

#endif
