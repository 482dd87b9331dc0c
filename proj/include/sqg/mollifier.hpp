#ifndef SQG_MOLLIFIER_HPP
#define SQG_MOLLIFIER_HPP

#include <cmath>
#include <string>

namespace sqg {

/** Radial dyadic cutoffs built from the standard smooth bump h(t) = e^{-1/t}.
 *
 * chi is 1 on |xi| <= 1, 0 on |xi| >= 2, and C^infinity in between:
 *   chi(r) = h(2 - r) / (h(2 - r) + h(r - 1)).
 * The annular symbol phi_hat(r) = chi(r) - chi(2r) is supported in
 * 1/2 <= r <= 2 and the dilates phi_hat(2^{-j} r) telescope to 1 for every
 * r > 0:  sum_j [chi(2^{-j} r) - chi(2^{1-j} r)] collapses term by term. */
struct Mollifier {
    static double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

    static double chi(double r) {
        if (r <= 1.0) return 1.0;
        if (r >= 2.0) return 0.0;
        const double a = bump(2.0 - r);
        return a / (a + bump(r - 1.0));
    }

    static double phi_hat(double r) { return chi(r) - chi(2.0 * r); }

    /** Human-readable description recorded in reports. */
    static std::string description() {
        return "chi(r)=h(2-r)/(h(2-r)+h(r-1)), h(t)=exp(-1/t); phi_hat(r)=chi(r)-chi(2r)";
    }
};

} // namespace sqg

#endif
