#pragma once

#include <cstdint>
#include <vector>

#include "corbit/bigint.hpp"

namespace corbit::oracle {

// A permutation of {0..n-1} stored as its image table.
using Perm = std::vector<int>;

bool is_permutation(const Perm& p);
bool commute(const Perm& a, const Perm& b);

// Number of orbits of the group generated by the tuple acting on
// {0..n-1}; union-find over the element/image edges. The tuple is not
// required to commute.
int joint_orbit_count(const std::vector<Perm>& tuple);

// Exact counts a[k] = #{commuting l-tuples with k joint orbits} by
// direct enumeration: the first coordinate runs over conjugacy class
// representatives weighted by class size, later coordinates only over
// the centralizer of everything chosen so far. Throws BudgetError when
// the predicted work exceeds work_budget, before doing any of it.
struct BruteForceResult {
    int ell = 0;
    int n = 0;
    std::vector<BigInt> a;  // index k = 0..n
    BigInt total;           // sum of a[k], the number of commuting tuples
};
BruteForceResult brute_force_counts(int ell, int n, double work_budget = 5e8);

// Unsigned Stirling numbers of the first kind c(n, k) for k = 0..n,
// via c(n,k) = c(n-1,k-1) + (n-1) c(n-1,k).
std::vector<BigInt> stirling_first_row(int n);

// p(0..n_max) by the Euler pentagonal-number recurrence.
std::vector<BigInt> partition_numbers(int n_max);

// Ewens distribution on cycle counts of a single permutation:
// P(K = k) = c(n,k) x^k / (x (x+1) ... (x+n-1)), all exact.
struct EwensDistribution {
    int n = 0;
    Rat x;
    std::vector<Rat> pmf;  // index k = 0..n
    Rat mean;
    Rat variance;
};
EwensDistribution ewens_exact(int n, const Rat& x);

// Feller coupling: K = sum_{j=0}^{n-1} Bernoulli(x/(x+j)). Driven by
// mt19937_64 with one 53-bit uniform draw per Bernoulli (u = (r >> 11)
// * 2^-53, success iff u < p), so output is reproducible across
// platforms for a given seed.
std::vector<int> feller_sample(int n, double x, std::uint64_t seed, int count);

}  // namespace corbit::oracle
