#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "corbit/bigint.hpp"
#include "corbit/special_functions.hpp"

namespace testsupport {

// Reference constants, frozen from 25-digit evaluations of the defining
// formulas (zeta products, Gamma, log). Used as independent anchors for
// the internally computed versions.
inline constexpr double kZeta2 = 1.6449340668482264365;
inline constexpr double kZeta3 = 1.2020569031595942854;
inline constexpr double kZeta4 = 1.0823232337111381915;
inline constexpr double kKappa2 = 1.6449340668482264365;
inline constexpr double kKappa3 = 3.9546087005945922364;
inline constexpr double kKappa4 = 12.840494630669224113;

inline bool rel_close(double a, double b, double tol) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return true;
    return std::abs(a - b) <= tol * scale;
}

// sigma(m) by direct divisor enumeration, independent of power_weights.
inline long long divisor_sigma(int m) {
    long long s = 0;
    for (int d = 1; d <= m; ++d)
        if (m % d == 0) s += d;
    return s;
}

inline int divisor_count(int m) {
    int c = 0;
    for (int d = 1; d <= m; ++d)
        if (m % d == 0) ++c;
    return c;
}

// sum over ordered factorizations m = d_1 d_2 ... d_l of
// d_1^{l-1} ... d_l^0, by direct recursion over divisors. Independent
// oracle for power_weights.
inline long long power_weight_direct(int ell, int m) {
    if (ell == 1) return 1;
    long long s = 0;
    for (int d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        long long f = 1;
        for (int i = 0; i < ell - 1; ++i) f *= d;
        s += f * power_weight_direct(ell - 1, m / d);
    }
    return s;
}

// Direct truncated summation of the collapsed staircase series,
// sum_{k<=K} k^{m-l} w_k e^{-kt}, with w_k from power_weight_direct.
// Slow and obvious on purpose.
inline double z_direct(int ell, int m, double t, int K) {
    double s = 0.0;
    for (int k = K; k >= 1; --k)
        s += std::pow(k, m - ell) * static_cast<double>(power_weight_direct(ell, k)) *
             std::exp(-k * t);
    return s;
}

// Upper chi-square tail probability via the regularized incomplete
// gamma from the library under test; the gamma_p anchor values are
// pinned separately in the special-function checks.
inline double chi_square_tail(double stat, int dof) {
    return 1.0 - corbit::sf::gamma_p(dof / 2.0, stat / 2.0);
}

// Pearson statistic against exact expected probabilities, merging bins
// from the right until every expected count reaches 5.
inline double pearson_merged(const std::vector<long long>& observed,
                             const std::vector<double>& prob, long long total, int& dof_out) {
    std::vector<double> exp_bins;
    std::vector<double> obs_bins;
    double e_acc = 0.0, o_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        e_acc += prob[i] * static_cast<double>(total);
        o_acc += static_cast<double>(observed[i]);
        if (e_acc >= 5.0) {
            exp_bins.push_back(e_acc);
            obs_bins.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    if (e_acc > 0.0 && !exp_bins.empty()) {
        exp_bins.back() += e_acc;
        obs_bins.back() += o_acc;
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < exp_bins.size(); ++i) {
        const double d = obs_bins[i] - exp_bins[i];
        stat += d * d / exp_bins[i];
    }
    dof_out = static_cast<int>(exp_bins.size()) - 1;
    return stat;
}

}  // namespace testsupport
