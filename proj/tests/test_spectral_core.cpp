#include <catch2/catch_amalgamated.hpp>

#include "sqg/fft.hpp"
#include "sqg/initial_data.hpp"
#include "sqg/operators.hpp"

#include "oracles.hpp"

using namespace sqg;
using Catch::Approx;

namespace {

std::vector<double> grid_samples(const GridSpec& g, double (*fn)(double, double)) {
    std::vector<double> s(g.physical_size());
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            s[static_cast<std::size_t>(i1) * g.n + i2] =
                fn(g.box_size() * i1 / g.n, g.box_size() * i2 / g.n);
    return s;
}

} // namespace

TEST_CASE("grid validation and index maps") {
    GridSpec g{64, 1.0};
    g.validate();
    CHECK(g.cols() == 33);
    CHECK(g.k1_of_row(0) == 0);
    CHECK(g.k1_of_row(32) == 32);
    CHECK(g.k1_of_row(33) == -31);
    CHECK(g.k1_of_row(63) == -1);
    for (int k1 = -31; k1 <= 32; ++k1) CHECK(g.k1_of_row(g.row_of_k1(k1)) == k1);

    CHECK_THROWS_AS((GridSpec{0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{15, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{16, -1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{16, 1.0, 1.5}).validate(), std::invalid_argument);
}

TEST_CASE("forward transform matches the direct DFT") {
    GridSpec g{8, 1.0};
    FftWorkspace ws(g);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> samples(g.physical_size());
    for (auto& s : samples) s = unif(rng);

    const SpectralField got = ws.to_spectral(samples);
    const auto want = oracles::dft_forward(samples, g.n);
    double max_diff = 0.0;
    for (int row = 0; row < g.n; ++row)
        for (int col = 0; col < g.cols(); ++col)
            max_diff = std::max(max_diff,
                                std::abs(got.at(row, col) -
                                         want[static_cast<std::size_t>(row) * g.n + col]));
    CHECK(max_diff < 1e-14);
}

TEST_CASE("single sine mode has the expected coefficients") {
    GridSpec g{16, 1.0};
    FftWorkspace ws(g);
    const auto samples = grid_samples(g, [](double x1, double) { return std::sin(x1); });
    const SpectralField f = ws.to_spectral(samples);
    CHECK(std::abs(f.mode(1, 0) - std::complex<double>(0.0, -0.5)) < 1e-14);
    CHECK(std::abs(f.mode(-1, 0) - std::complex<double>(0.0, 0.5)) < 1e-14);
    double rest = 0.0;
    for (int row = 0; row < g.n; ++row)
        for (int col = 0; col < g.cols(); ++col)
            if (!(col == 0 && (row == 1 || row == g.n - 1)))
                rest = std::max(rest, std::abs(f.at(row, col)));
    CHECK(rest < 1e-15);

    CHECK(oracles::max_coeff_diff(make_single_mode(g), f) < 1e-14);
}

TEST_CASE("roundtrip reproduces band-limited fields") {
    GridSpec g{64, 1.0};
    FftWorkspace ws(g);

    SECTION("zero field") {
        const SpectralField z = SpectralField::zero(g);
        CHECK(oracles::max_coeff_diff(transform_roundtrip(z, ws), z) == 0.0);
    }
    SECTION("random field") {
        const SpectralField f = oracles::random_field(g, 42, false);
        const SpectralField back = transform_roundtrip(f, ws);
        CHECK(oracles::max_coeff_diff(back, f) < 1e-12 * max_abs(f));
    }
    SECTION("non-Hermitian input is rejected") {
        SpectralField f = oracles::random_field(g, 43);
        f.at(1, 0) += std::complex<double>(0.3, 0.7);  // breaks conjugate pairing
        CHECK_THROWS_AS(transform_roundtrip(f, ws), std::invalid_argument);
    }
}

TEST_CASE("fractional laplacian is the |xi|^{2 beta} multiplier") {
    GridSpec g{16, 1.0};

    SECTION("single mode, half power") {
        SpectralField f(g);
        f.set_mode(3, 4, {1.0, -2.0});  // |xi| = 5
        const SpectralField out = fractional_laplacian(f, 0.5);
        CHECK(std::abs(out.mode(3, 4) - std::complex<double>(5.0, -10.0)) < 1e-14);
    }
    SECTION("beta = 0 is the identity, mean included") {
        SpectralField f = oracles::random_field(g, 11);
        f.at(0, 0) = 2.5;
        CHECK(oracles::max_coeff_diff(fractional_laplacian(f, 0.0), f) == 0.0);
    }
    SECTION("semigroup property") {
        const SpectralField f = oracles::random_field(g, 12);
        const SpectralField a = fractional_laplacian(fractional_laplacian(f, 0.3), 0.45);
        const SpectralField b = fractional_laplacian(f, 0.75);
        CHECK(oracles::max_coeff_diff(a, b) < 1e-12 * max_abs(b));
    }
    SECTION("positive power kills the mean; negative power flags it") {
        SpectralField f(g);
        f.at(0, 0) = 1.0;
        CHECK(fractional_laplacian(f, 0.5).at(0, 0) == std::complex<double>(0.0, 0.0));
        CHECK_FALSE(fractional_laplacian(f, 0.5).flags.mean_dropped);
        const SpectralField inv = fractional_laplacian(f, -0.5);
        CHECK(inv.at(0, 0) == std::complex<double>(0.0, 0.0));
        CHECK(inv.flags.mean_dropped);
    }
    SECTION("length scaling enters through xi = k/L") {
        GridSpec g2{16, 2.0};
        SpectralField f(g2);
        f.set_mode(2, 0, {1.0, 0.0});  // xi = 1
        CHECK(std::abs(fractional_laplacian(f, 1.0).mode(2, 0) -
                       std::complex<double>(1.0, 0.0)) < 1e-15);
    }
}

TEST_CASE("riesz velocity") {
    GridSpec g{32, 1.0};
    FftWorkspace ws(g);

    SECTION("sin(x1) advects along x2") {
        const SpectralField theta = make_single_mode(g);
        const VelocityField u = riesz_velocity(theta);
        CHECK(max_abs(u.u1) < 1e-15);
        const auto want = grid_samples(g, [](double x1, double) { return std::cos(x1); });
        const auto got = ws.to_physical(u.u2);
        double diff = 0.0;
        for (std::size_t i = 0; i < got.size(); ++i)
            diff = std::max(diff, std::abs(got[i] - want[i]));
        CHECK(diff < 1e-13);
    }
    SECTION("divergence vanishes mode by mode") {
        const SpectralField theta = oracles::random_field(g, 5);
        const VelocityField u = riesz_velocity(theta);
        const SpectralField div = derivative(u.u1, 1) + derivative(u.u2, 2);
        CHECK(max_abs(div) < 1e-14 * max_abs(theta));
    }
    SECTION("modulus preserved: |u_hat| = |theta_hat| off the mean") {
        const SpectralField theta = oracles::random_field(g, 6);
        const VelocityField u = riesz_velocity(theta);
        for (int row = 0; row < g.n; ++row)
            for (int col = 0; col < g.cols(); ++col) {
                if (row == 0 && col == 0) continue;
                const double mag = std::hypot(std::abs(u.u1.at(row, col)),
                                              std::abs(u.u2.at(row, col)));
                CHECK(mag == Approx(std::abs(theta.at(row, col))).margin(1e-13));
            }
    }
    SECTION("mean maps to zero") {
        SpectralField theta(g);
        theta.at(0, 0) = 3.0;
        const VelocityField u = riesz_velocity(theta);
        CHECK(max_abs(u.u1) == 0.0);
        CHECK(max_abs(u.u2) == 0.0);
    }
}

TEST_CASE("dealias mask") {
    GridSpec g{32, 1.0};  // limit = 2/3 * 16 = 10.67
    SpectralField f(g);
    f.set_mode(10, 0, {1.0, 0.0});
    f.set_mode(11, 0, {1.0, 0.0});
    f.set_mode(3, 12, {1.0, 0.0});
    const SpectralField masked = dealias(f);
    CHECK(std::abs(masked.mode(10, 0)) == 1.0);
    CHECK(std::abs(masked.mode(11, 0)) == 0.0);
    CHECK(std::abs(masked.mode(3, 12)) == 0.0);

    GridSpec tiny{2, 1.0, 0.5};
    CHECK_THROWS_AS(require_dealias_band_nonempty(tiny), std::invalid_argument);
}

TEST_CASE("lp norms by quadrature") {
    GridSpec g{32, 1.0};
    FftWorkspace ws(g);

    SECTION("constant field") {
        SpectralField c(g);
        c.at(0, 0) = 1.0;
        CHECK(lp_norm(c, 2.0, ws) == Approx(2.0 * M_PI).epsilon(1e-13));
        CHECK(lp_norm(c, 4.0, ws) == Approx(std::pow(2.0 * M_PI, 0.5)).epsilon(1e-13));
        CHECK(lp_norm(c, kLpInfinity, ws) == Approx(1.0).epsilon(1e-13));
    }
    SECTION("sine field: closed forms, quadrature exact for band-limited powers") {
        const SpectralField f = make_single_mode(g);
        CHECK(lp_norm(f, 2.0, ws) == Approx(std::sqrt(2.0) * M_PI).epsilon(1e-13));
        CHECK(lp_norm(f, 4.0, ws) ==
              Approx(std::pow(1.5 * M_PI * M_PI, 0.25)).epsilon(1e-13));
        CHECK(lp_norm(f, kLpInfinity, ws) == Approx(1.0).epsilon(1e-13));
    }
    SECTION("parseval consistency at p = 2") {
        const SpectralField f = oracles::random_field(g, 21);
        CHECK(oracles::rel_err(lp_norm(f, 2.0, ws), l2_norm_spectral(f)) < 1e-10);
    }
    SECTION("p < 1 rejected") {
        const SpectralField f = make_single_mode(g);
        CHECK_THROWS_AS(lp_norm(f, 0.5, ws), std::domain_error);
    }
}

TEST_CASE("advection term") {
    GridSpec g{32, 1.0};
    FftWorkspace ws(g);

    SECTION("self-advection of a single mode vanishes") {
        const SpectralField theta = make_single_mode(g);
        CHECK(max_abs(nonlinear_term(theta, ws)) < 1e-15);
    }
    SECTION("constant scalar is transported trivially") {
        SpectralField c(g);
        c.at(0, 0) = 4.0;
        const SpectralField theta = oracles::random_field(g, 31);
        CHECK(max_abs(advect(riesz_velocity(theta), c, ws)) < 1e-14);
    }
    SECTION("advection preserves the mean (zero-mean output)") {
        const SpectralField theta = oracles::random_field(g, 32);
        const SpectralField nl = nonlinear_term(theta, ws);
        CHECK(std::abs(nl.at(0, 0)) < 1e-13 * max_abs(theta));
    }
    SECTION("skew symmetry: the transport term carries no energy") {
        const SpectralField theta_u = oracles::random_field(g, 33);
        const SpectralField v = oracles::random_field(g, 34);
        const SpectralField ugv = advect(riesz_velocity(theta_u), v, ws);
        // <u . grad v, v> over the torus, spectrally.
        double inner = 0.0;
        const int half = g.n / 2;
        for (int row = 0; row < g.n; ++row)
            for (int col = 0; col < g.cols(); ++col) {
                const double w = (col == 0 || col == half) ? 1.0 : 2.0;
                inner += w * (std::conj(v.at(row, col)) * ugv.at(row, col)).real();
            }
        const double scale = l2_norm_sq_spectral(v);
        CHECK(std::abs(inner) < 1e-12 * scale);
    }
    SECTION("hermitian symmetry is preserved") {
        const SpectralField theta = oracles::random_field(g, 35);
        CHECK(hermitian_defect(nonlinear_term(theta, ws)) < 1e-14);
    }
}

TEST_CASE("advection matches the dense convolution oracle") {
    GridSpec g{16, 1.0};
    FftWorkspace ws(g);
    const SpectralField theta_u = oracles::random_field(g, 44);
    const SpectralField v = oracles::random_field(g, 45);
    const VelocityField u = riesz_velocity(theta_u);

    const SpectralField got = advect(u, v, ws);

    // Oracle: u . grad v == conv(u1, d1 v) + conv(u2, d2 v), masked.
    const auto fu1 = oracles::to_full(dealias(u.u1));
    const auto fu2 = oracles::to_full(dealias(u.u2));
    const auto fd1 = oracles::to_full(dealias(derivative(v, 1)));
    const auto fd2 = oracles::to_full(dealias(derivative(v, 2)));
    const auto c1 = oracles::convolve(fu1, fd1);
    const auto c2 = oracles::convolve(fu2, fd2);

    double max_diff = 0.0;
    for (int k1 = -g.n / 2; k1 <= g.n / 2; ++k1)
        for (int k2 = 0; k2 <= g.n / 2; ++k2) {
            const std::complex<double> want =
                g.in_dealias_band(k1, k2) ? c1.at(k1, k2) + c2.at(k1, k2)
                                          : std::complex<double>(0.0);
            max_diff = std::max(max_diff, std::abs(got.mode(k1, k2) - want));
        }
    CHECK(max_diff < 1e-12 * std::max(1.0, max_abs(got)));
}

TEST_CASE("set_mode keeps storage hermitian") {
    GridSpec g{16, 1.0};
    SpectralField f(g);
    f.set_mode(3, 0, {1.0, 2.0});
    CHECK(f.mode(-3, 0) == std::conj(f.mode(3, 0)));
    f.set_mode(-2, 8, {0.5, -0.25});
    CHECK(f.mode(2, 8) == std::conj(f.mode(-2, 8)));
    f.set_mode(0, 0, {3.0, 0.5});  // self-conjugate: imaginary part discarded
    CHECK(f.at(0, 0) == std::complex<double>(3.0, 0.0));
    CHECK(hermitian_defect(f) == 0.0);
    CHECK(mean_value(f) == 3.0);
}
