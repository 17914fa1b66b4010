#pragma once

#include <vector>

#include "corbit/errors.hpp"

namespace corbit::zfun {

// (l-1)! zeta(2) zeta(3) ... zeta(l); equals 1 for l = 1.
double kappa_constant(int ell);

// One certified evaluation: value is the computed partial sum, err is
// a proven bound on |truncation| plus a rounding allowance, cutoff is
// the number of retained terms.
struct ZResult {
    double value = 0.0;
    double err = 0.0;
    int cutoff = 0;
};

// Staircase Z with exponent vector (m, m-1, ..., m-l+1), collapsed to
// the single-index series sum_k k^{m-l} b_k e^{-kt} over the power
// weights b_k. The certified tail uses the halving device
//   sum_{k>K} w_k e^{-kt} <= e^{-Kt/2} sum_k w_k e^{-kt/2}
// twice, closed by the envelope w_k <= 2^{l-1} k^{m-1+(l-1)/2} and the
// elementary bound sum_k k^p e^{-ku} <= zeta(2) (b/e)^b u^{-b}, b = p+2.
// Throws ToleranceError if abs_tol cannot be certified within budget.
ZResult z_staircase(int ell, int m, double t, double abs_tol);

// General exponent vector alpha_1..alpha_l (any reals), same scheme
// with weights built per call and envelope exponent
// sum_i max(alpha_i - 1, 0) + (l-1)/2.
ZResult z_general(const std::vector<double>& alphas, double t, double abs_tol);

// Leading small-t constant: Z(t) ~ c * t^{-a1} with
// c = Gamma(a1) prod_{j>=2} zeta(a1 + 1 - a_j), valid when the largest
// exponent is strictly dominant and positive; throws domain_error in
// the logarithmic regime (tied maximum).
double z_asymptotic_constant(std::vector<double> alphas);

// Smallest certified cutoff for the staircase series at (t, abs_tol),
// and the weight prefix w_k = k^{m-l} b_k for k <= K. These let the
// contour integrand reuse the same certified truncation machinery.
int certified_cutoff_staircase(int ell, int m, double t, double abs_tol);
std::vector<double> staircase_weight_prefix(int ell, int m, int K);

}  // namespace corbit::zfun
