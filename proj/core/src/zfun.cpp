#include "corbit/zfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "corbit/arith_core.hpp"
#include "corbit/special_functions.hpp"
#include "corbit/summation.hpp"

namespace corbit::zfun {

double kappa_constant(int ell) {
    if (ell < 1) throw std::invalid_argument("kappa_constant: ell must be >= 1");
    double k = 1.0;
    for (int j = 2; j <= ell; ++j) k *= static_cast<double>(j - 1) * sf::zeta(j);
    return k;
}

namespace {

constexpr int kCutoffBudget = 1 << 24;

// Cache of power-weight prefixes per l; grown (rebuilt) on demand.
std::vector<double>& cached_weights(int ell, int min_size) {
    static std::map<int, std::vector<double>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    std::vector<double>& w = cache[ell];
    if (static_cast<int>(w.size()) < min_size + 1) {
        int n = 1024;
        while (n < min_size) n *= 2;
        const arith::FloatSeq pw = arith::power_weights_f(ell, n);
        w = pw.v;
    }
    return w;
}

double apply_power(double base, int e) {
    switch (e) {
        case -1: return 1.0 / base;
        case 0: return 1.0;
        case 1: return base;
        case 2: return base * base;
        default: return std::pow(base, static_cast<double>(e));
    }
}

struct Envelope {
    double constant;  // C with w_k <= C k^p
    double exponent;  // p
};

// Compensated partial sum over k = 1..K of w(k) e^{-kt}.
template <class WeightAt>
double partial_sum(int K, double t, WeightAt w) {
    CompensatedSum acc;
    for (int k = 1; k <= K; ++k) {
        const double e = std::exp(-t * k);
        if (e == 0.0) break;
        acc.add(w(k) * e);
    }
    return acc.value();
}

// Certified bound on sum_{k>K} w_k e^{-kt}: two levels of the halving
// device with computed partial sums, closed by the crude envelope cap
//   C sum_{k>K} k^p e^{-kv} <= C e^{-Kv/2} zeta(2) (b/e)^b (v/2)^{-b}.
template <class WeightAt>
double tail_bound(int K, double t, const Envelope& env, WeightAt w) {
    const double beta = env.exponent + 2.0;
    const double v = t / 4.0;
    const double crude = env.constant * std::exp(-K * v / 2.0) * sf::zeta(2.0) *
                         std::pow(beta / M_E, beta) * std::pow(v / 2.0, -beta);
    const double p_half = partial_sum(K, t / 2.0, w);
    const double p_quarter = partial_sum(K, t / 4.0, w);
    return std::exp(-K * t / 2.0) *
           (p_half + std::exp(-K * t / 4.0) * (p_quarter + crude));
}

int starting_cutoff(double t, double abs_tol, double order_scale) {
    if (!(t > 0.0)) throw std::domain_error("z evaluation: t must be positive");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("z evaluation: abs_tol must be positive");
    const double lead = std::max(5.0, std::log(1.0 / abs_tol));
    return std::max(static_cast<int>(std::ceil(2.0 * order_scale * lead / t)), 32);
}

template <class WeightAt, class Ensure>
ZResult eval_certified(double t, double abs_tol, double order_scale,
                       const Envelope& env, WeightAt weight_at, Ensure ensure_weights) {
    int K = starting_cutoff(t, abs_tol, order_scale);
    double last_bound = 0.0;
    while (K <= kCutoffBudget) {
        ensure_weights(K);
        const double value = partial_sum(K, t, weight_at);
        const double bound = tail_bound(K, t, env, weight_at) + 1e-14 * std::abs(value);
        if (bound <= abs_tol) return {value, bound, K};
        last_bound = bound;
        K *= 2;
    }
    throw ToleranceError("z evaluation: cannot certify requested tolerance", last_bound);
}

// Cutoff-only variant: certifies the tail alone, with no rounding
// allowance on the partial sum (the caller owns its own accumulation).
template <class WeightAt, class Ensure>
int cutoff_certified(double t, double abs_tol, double order_scale, const Envelope& env,
                     WeightAt weight_at, Ensure ensure_weights) {
    int K = starting_cutoff(t, abs_tol, order_scale);
    double last_bound = 0.0;
    while (K <= kCutoffBudget) {
        ensure_weights(K);
        const double bound = tail_bound(K, t, env, weight_at);
        if (bound <= abs_tol) return K;
        last_bound = bound;
        K *= 2;
    }
    throw ToleranceError("z cutoff: cannot certify requested tolerance", last_bound);
}

Envelope staircase_envelope(int ell, int m) {
    return {std::pow(2.0, ell - 1), std::max(0.0, m - 1.0 + (ell - 1) / 2.0)};
}

}  // namespace

ZResult z_staircase(int ell, int m, double t, double abs_tol) {
    if (ell < 1) throw std::invalid_argument("z_staircase: ell must be >= 1");
    const int shift = m - ell;
    const std::vector<double>* w = nullptr;
    auto ensure = [&](int K) { w = &cached_weights(ell, K); };
    auto weight_at = [&](int k) { return apply_power(k, shift) * (*w)[k]; };
    return eval_certified(t, abs_tol, static_cast<double>(std::abs(m) + ell),
                          staircase_envelope(ell, m), weight_at, ensure);
}

ZResult z_general(const std::vector<double>& alphas, double t, double abs_tol) {
    const int ell = static_cast<int>(alphas.size());
    if (ell < 1) throw std::invalid_argument("z_general: need at least one exponent");
    double psum = 0.0;
    double order = 1.0;
    for (double a : alphas) {
        psum += std::max(a - 1.0, 0.0);
        order += std::abs(a);
    }
    const Envelope env{std::pow(2.0, ell - 1), psum + (ell - 1) / 2.0};

    std::vector<double> w;
    auto ensure = [&](int K) {
        if (static_cast<int>(w.size()) >= K + 1) return;
        arith::FloatSeq acc(K);
        for (int k = 1; k <= K; ++k) acc[k] = std::pow(k, alphas[0] - 1.0);
        for (int i = 1; i < ell; ++i) {
            arith::FloatSeq pw(K);
            for (int k = 1; k <= K; ++k) pw[k] = std::pow(k, alphas[i] - 1.0);
            acc = arith::dirichlet_convolve(acc, pw);
        }
        w = std::move(acc.v);
    };
    auto weight_at = [&](int k) { return w[k]; };
    return eval_certified(t, abs_tol, order, env, weight_at, ensure);
}

double z_asymptotic_constant(std::vector<double> alphas) {
    if (alphas.empty())
        throw std::invalid_argument("z_asymptotic_constant: need at least one exponent");
    std::sort(alphas.begin(), alphas.end(), std::greater<>());
    const double a1 = alphas[0];
    if (!(a1 > 0.0))
        throw std::domain_error("z_asymptotic_constant: leading exponent must be positive");
    if (alphas.size() > 1 && !(a1 > alphas[1]))
        throw std::domain_error(
            "z_asymptotic_constant: tied leading exponent (logarithmic regime)");
    double c = sf::gamma(a1);
    for (std::size_t j = 1; j < alphas.size(); ++j) c *= sf::zeta(a1 + 1.0 - alphas[j]);
    return c;
}

int certified_cutoff_staircase(int ell, int m, double t, double abs_tol) {
    if (ell < 1)
        throw std::invalid_argument("certified_cutoff_staircase: ell must be >= 1");
    const int shift = m - ell;
    const std::vector<double>* w = nullptr;
    auto ensure = [&](int K) { w = &cached_weights(ell, K); };
    auto weight_at = [&](int k) { return apply_power(k, shift) * (*w)[k]; };
    return cutoff_certified(t, abs_tol, static_cast<double>(std::abs(m) + ell),
                            staircase_envelope(ell, m), weight_at, ensure);
}

std::vector<double> staircase_weight_prefix(int ell, int m, int K) {
    if (ell < 1) throw std::invalid_argument("staircase_weight_prefix: ell must be >= 1");
    if (K < 1) throw std::invalid_argument("staircase_weight_prefix: K must be >= 1");
    const std::vector<double>& pw = cached_weights(ell, K);
    std::vector<double> w(K + 1, 0.0);
    const int shift = m - ell;
    for (int k = 1; k <= K; ++k) w[k] = apply_power(k, shift) * pw[k];
    return w;
}

}  // namespace corbit::zfun
