#include "probesizer/chi_square.hpp"

#include <cmath>

#include "probesizer/error.hpp"

namespace probesizer {

double chi_square_cdf_1df(double x) {
    if (x <= 0.0) {
        return 0.0;
    }
    return std::erf(std::sqrt(0.5 * x));
}

double chi_square_quantile_1df(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        fail_validation("quantile probability must lie in (0,1)");
    }
    double lo = 0.0;
    double hi = 1.0;
    while (chi_square_cdf_1df(hi) < p) {
        hi *= 2.0;
        if (hi > 1e12) {
            break;
        }
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;  // interval collapsed to adjacent doubles
        }
        if (chi_square_cdf_1df(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double chi_square_critical_1df(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        fail_validation("alpha must lie in (0,1)");
    }
    return chi_square_quantile_1df(1.0 - alpha);
}

}  // namespace probesizer
