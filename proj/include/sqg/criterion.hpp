#ifndef SQG_CRITERION_HPP
#define SQG_CRITERION_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sqg {

/** Critical Besov regularity index for dissipation strength gamma and the
 * exponent pair (p, r0):
 *
 *   alpha = 2/p + 1 - gamma + gamma/r0.
 *
 * Ranges: p in [2, inf), r0 in [2, inf), gamma in (0, 1]. */
inline double critical_alpha(double p, double r0, double gamma) {
    if (!(p >= 2.0) || std::isinf(p))
        throw std::domain_error("critical_alpha: p must lie in [2, inf)");
    if (!(r0 >= 2.0) || std::isinf(r0))
        throw std::domain_error("critical_alpha: r0 must lie in [2, inf)");
    if (!(gamma > 0.0) || gamma > 1.0)
        throw std::domain_error("critical_alpha: gamma must lie in (0, 1]");
    return 2.0 / p + 1.0 - gamma + gamma / r0;
}

/** Exponent bundle for the regularity criterion and the monitors built on it. */
struct CriterionParams {
    double p = 2.0;
    double r0 = 2.0;
    double gamma = 1.0;
    double alpha = 0.0;  // derived

    CriterionParams() = default;
    CriterionParams(double p_, double r0_, double gamma_)
        : p(p_), r0(r0_), gamma(gamma_), alpha(critical_alpha(p_, r0_, gamma_)) {}

    void validate() const { (void)critical_alpha(p, r0, gamma); }
};

/** Lower bound on the lifespan guaranteed by small data:
 * T >= c ||theta0||^{-r0}, with c an empirically calibrated constant.
 * Zero data never blows up; returns infinity. */
inline double existence_time_estimate(double besov_alpha_norm, double r0, double c_cal) {
    if (!(besov_alpha_norm >= 0.0))
        throw std::domain_error("existence_time_estimate: norm must be nonnegative");
    if (!(r0 >= 2.0)) throw std::domain_error("existence_time_estimate: r0 must lie in [2, inf)");
    if (!(c_cal > 0.0)) throw std::domain_error("existence_time_estimate: c_cal must be positive");
    if (besov_alpha_norm == 0.0) return std::numeric_limits<double>::infinity();
    return c_cal * std::pow(besov_alpha_norm, -r0);
}

} // namespace sqg

#endif
