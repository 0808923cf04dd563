#pragma once

namespace probesizer {

// 1-degree-of-freedom chi-square distribution, the reference distribution of
// the paired discordance statistic. CDF(x) = erf(sqrt(x/2)).
double chi_square_cdf_1df(double x);

// Quantile at probability p in (0,1), by bisection on the monotone CDF.
double chi_square_quantile_1df(double p);

// Critical value at significance level alpha (upper tail).
double chi_square_critical_1df(double alpha);

}  // namespace probesizer
