#ifndef SQG_FFT_HPP
#define SQG_FFT_HPP

#include <cstring>
#include <mutex>
#include <span>
#include <vector>

#include <fftw3.h>

#include "sqg/field.hpp"

namespace sqg {

/** FFTW-backed transform pair for one grid size.
 *
 * Forward (to_spectral) applies the 1/n^2 normalization so coefficients are
 * the Fourier-series coefficients of f(x) = sum_k theta_hat(k) e^{i k.x / L};
 * the inverse is unscaled. Plans use FFTW_ESTIMATE for run-to-run
 * determinism. One workspace serves one thread; create one per worker.
 * FFTW's 2D c2r transform destroys its input, so inverse transforms always
 * go through the workspace scratch buffer. */
class FftWorkspace {
  public:
    explicit FftWorkspace(const GridSpec& g) : grid_(g) {
        grid_.validate();
        const int n = grid_.n;
        real_ = fftw_alloc_real(grid_.physical_size());
        cplx_ = fftw_alloc_complex(grid_.spectral_size());
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd_ = fftw_plan_dft_r2c_2d(n, n, real_, cplx_, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_c2r_2d(n, n, cplx_, real_, FFTW_ESTIMATE);
        if (!fwd_ || !bwd_) throw std::runtime_error("FFTW plan creation failed");
    }

    ~FftWorkspace() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd_) fftw_destroy_plan(fwd_);
        if (bwd_) fftw_destroy_plan(bwd_);
        fftw_free(real_);
        fftw_free(cplx_);
    }

    FftWorkspace(const FftWorkspace&) = delete;
    FftWorkspace& operator=(const FftWorkspace&) = delete;

    const GridSpec& grid() const { return grid_; }

    /** Collocation samples, row-major: sample(i1, i2) = f(2 pi L i1/n, 2 pi L i2/n). */
    std::vector<double> to_physical(const SpectralField& f) {
        if (!(f.grid == grid_)) throw std::invalid_argument("field grid does not match workspace");
        std::memcpy(cplx_, f.coeffs.data(), sizeof(fftw_complex) * grid_.spectral_size());
        fftw_execute(bwd_);
        return std::vector<double>(real_, real_ + grid_.physical_size());
    }

    SpectralField to_spectral(std::span<const double> samples) {
        if (samples.size() != grid_.physical_size())
            throw std::invalid_argument("sample array size does not match grid");
        std::memcpy(real_, samples.data(), sizeof(double) * samples.size());
        fftw_execute(fwd_);
        SpectralField out(grid_);
        const double scale = 1.0 / (static_cast<double>(grid_.n) * grid_.n);
        for (std::size_t i = 0; i < out.coeffs.size(); ++i)
            out.coeffs[i] = std::complex<double>(cplx_[i][0] * scale, cplx_[i][1] * scale);
        return out;
    }

  private:
    static std::mutex& planner_mutex() {
        static std::mutex m;
        return m;
    }

    GridSpec grid_;
    double* real_ = nullptr;
    fftw_complex* cplx_ = nullptr;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

/** Inverse then forward transform; validates Hermitian symmetry first. */
inline SpectralField transform_roundtrip(const SpectralField& f, FftWorkspace& ws) {
    require_hermitian(f);
    auto samples = ws.to_physical(f);
    SpectralField out = ws.to_spectral(samples);
    out.flags = f.flags;
    return out;
}

} // namespace sqg

#endif
