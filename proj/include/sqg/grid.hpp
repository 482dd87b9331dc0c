#ifndef SQG_GRID_HPP
#define SQG_GRID_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace sqg {

/** Uniform n-by-n grid on the periodic square [0, 2*pi*L)^2.
 *
 * Wavenumbers are integer lattice points k = (k1, k2); the continuous
 * frequency is xi = k / L. Spectral data is stored as the real-to-complex
 * half spectrum: n rows (k1 = 0..n/2, -n/2+1..-1, row-major) by n/2+1
 * columns (k2 = 0..n/2). */
struct GridSpec {
    int n = 0;
    double length = 1.0;
    double dealias_fraction = 2.0 / 3.0;

    void validate() const {
        if (n <= 0 || n % 2 != 0)
            throw std::invalid_argument("GridSpec: n must be a positive even integer, got " +
                                        std::to_string(n));
        if (!(length > 0.0))
            throw std::invalid_argument("GridSpec: length must satisfy L > 0");
        if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
            throw std::invalid_argument("GridSpec: dealias_fraction must lie in (0, 1]");
    }

    int rows() const { return n; }
    int cols() const { return n / 2 + 1; }
    std::size_t spectral_size() const { return static_cast<std::size_t>(n) * cols(); }
    std::size_t physical_size() const { return static_cast<std::size_t>(n) * n; }

    /** Signed k1 for a storage row. */
    int k1_of_row(int row) const { return row <= n / 2 ? row : row - n; }
    /** Storage row for a signed k1 in [-n/2, n/2]. */
    int row_of_k1(int k1) const { return k1 >= 0 ? k1 : k1 + n; }

    double xi1(int row) const { return k1_of_row(row) / length; }
    double xi2(int col) const { return col / length; }

    /** Largest |k_i| kept by the dealiasing mask. */
    double dealias_limit() const { return dealias_fraction * (n / 2.0); }

    bool in_dealias_band(int k1, int k2) const {
        const double lim = dealias_limit();
        return std::abs(k1) <= lim && std::abs(k2) <= lim;
    }

    /** Side length of the periodic box. */
    double box_size() const { return 2.0 * M_PI * length; }
    /** Physical grid spacing. */
    double dx() const { return box_size() / n; }
    /** Quadrature weight of one grid cell. */
    double cell_area() const { return dx() * dx(); }

    bool operator==(const GridSpec&) const = default;
};

} // namespace sqg

#endif
