#pragma once

#include <string>
#include <vector>

#include "corbit/arith_core.hpp"
#include "corbit/bigint.hpp"

namespace corbit::orbits {

// Counts a[n][k] = A(l, n, k) of commuting l-tuples in S_n with k
// joint orbits, n = 0..n_max. They satisfy, with b_m the power weights
// and H_n the normalized row polynomial A_n(x)/n!,
//   n H_n(x) = x sum_{m=1..n} b_m H_{n-m}(x),
// which in integer form (A_n = n! H_n) reads
//   A_n(x) = x sum_{m=1..n} b_m (n-1)(n-2)...(n-m+1) A_{n-m}(x).
// Float mode stores the coefficients of H_n directly in binary64 and
// never materializes the integer counts.
struct OrbitTable {
    int ell = 0;
    int n_max = 0;
    bool exact = true;
    std::vector<std::vector<BigInt>> a;  // exact mode, a[n][k] for k <= n
    std::vector<std::vector<double>> h;  // float mode, h[n][k] = A(l,n,k)/n!
};

enum class TableMode { exact, floating };

OrbitTable build_orbit_table(int ell, int n_max, TableMode mode);

// c_m = b_m / m, the coefficients of L_l(z) = sum c_m z^m with
// exp(x L_l(z)) = sum_n H_n(x) z^n. Requires l >= 2 (l = 1 is served
// by the Ewens formulas in the oracle module).
arith::ArithSeq l_coefficients(int ell, int n_max);

// Exact H_n(x) = sum_k A(l,n,k) x^k / n! for rational x.
Rat h_value_exact(const OrbitTable& table, int n, const Rat& x);

// ln H_n(x) for n = 0..n_max at fixed numeric x > 0, computed by the
// scalar recurrence on e^{-beta n} H_n(x) with a fixed log-shift beta
// that keeps every intermediate inside binary64 range. Compensated
// accumulation throughout.
std::vector<double> log_h_float(int ell, double x, int n_max);

// Checks sum_k A(2,n,k) == n! p(n) for all n <= table.n_max.
struct PartitionCheck {
    bool ok = true;
    int first_mismatch = -1;
};
PartitionCheck h_at_one_vs_partitions(const OrbitTable& table);

std::string table_to_json(const OrbitTable& table);
std::string row_to_csv(const OrbitTable& table, int n);

}  // namespace corbit::orbits
