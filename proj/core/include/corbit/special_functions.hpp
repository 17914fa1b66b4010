#pragma once

namespace corbit::sf {

// Riemann zeta for real s > 1, Euler-Maclaurin with N = 16 leading
// terms and Bernoulli corrections through B_16; ~1e-15 relative.
double zeta(double s);

// Gamma for real positive arguments via the 9-term g = 7 Lanczos
// approximation (~1e-13 relative), with reflection below 1/2.
double gamma(double x);

// Standard normal CDF through std::erfc, full double precision.
double normal_cdf(double z);

// Regularized lower incomplete gamma P(a, x); series for x < a+1,
// continued fraction otherwise. Used for chi-square tail probabilities.
double gamma_p(double a, double x);

}  // namespace corbit::sf
