#pragma once

#include <vector>

#include "corbit/bigint.hpp"
#include "corbit/orbit_series.hpp"

namespace corbit::clt {

// Exact distribution of the joint-orbit count under the x-weighted
// measure on l-tuples: P(K = k) = a_{n,k} x^k / sum_j a_{n,j} x^j.
struct PmfExact {
    int ell = 0;
    int n = 0;
    Rat x;
    std::vector<Rat> p;  // k = 0..n
    Rat mean;
    Rat variance;
};
PmfExact pmf_exact(const orbits::OrbitTable& table, int n, const Rat& x);

// Floating pmf at each target n, all from one scaled column sweep
//   u_0 = delta_{n,0},   u_k = (x/k) (c * u_{k-1}),
// with the global e^{-beta n} shift folded into c and the convolution
// truncated at k_run = min(n_max, ceil(8 n_max^{(l-1)/l})), far past
// any k carrying visible mass. mass_defect records the relative gap
// between sum_k u_k[n] and the independent scalar recurrence before
// the pmf is normalized.
struct Pmf {
    int ell = 0;
    int n = 0;
    double x = 0.0;
    double log_h = 0.0;  // ln H_n(x)
    std::vector<double> p;
    double mean = 0.0;
    double variance = 0.0;
    double mass_defect = 0.0;
};
std::vector<Pmf> pmf_float_targets(int ell, double x, const std::vector<int>& targets);

// Leading order E K ~ (x kappa_l)^{1/l} n^{(l-1)/l} / (l-1) and
// Var K ~ E K / l.
struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};
Moments asymptotic_moments(int ell, double x, double n);

// Normalization (K - a)/b. The refined centering takes a = x Z_{l-1}(t_n)
// at the saddle point; the leading one substitutes the closed form. Both
// share b = (x kappa_l)^{1/(2l)} n^{(l-1)/(2l)} / sqrt(l(l-1)).
struct Centering {
    double a = 0.0;
    double b = 0.0;
};
Centering centering_refined(int ell, double x, double n);
Centering centering_leading(int ell, double x, double n);

// psi(s) = ln E exp(s (K - a)/b), one log-sum-exp pass over the pmf.
// Tends to s^2/2 under either centering.
double psi_mgf(const Pmf& dist, double s, double a, double b);

// sup_z |P((K - a)/b <= z) - Phi(z)|, evaluated on both sides of every
// jump of the discrete cdf.
double kolmogorov_distance(const Pmf& dist, double a, double b);

// Checks a_{n,k}^2 >= a_{n,k-1} a_{n,k+1} on every row up to n_max and
// reports the first violation, if any.
struct ConcavityResult {
    bool ok = true;
    int n = 0;
    int k = 0;
};
ConcavityResult log_concavity(const orbits::OrbitTable& table, int n_max);

// Splits psi(s) along H = P J at the saddle t of (x, n): with
// x_s = x e^{s/b},
//   psi(s) = center_term + ln_p_tilted - ln_p_base + r_part,
// where center_term = -s a / b, the prefactor logs are ln P(x_s, t)
// and ln P(x, t) evaluated independently, and
// r_part = ln J(x_s, t) - ln J(x, t) tends to -(l-1) s^2 / 2.
struct MgfDecomposition {
    double t = 0.0;
    double a = 0.0;
    double b = 0.0;
    double center_term = 0.0;
    double ln_p_tilted = 0.0;
    double ln_p_base = 0.0;
    double r_part = 0.0;
    double r_limit = 0.0;
};
MgfDecomposition mgf_decomposition(int ell, double x, int n, double s);

}  // namespace corbit::clt
