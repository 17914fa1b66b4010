#pragma once

#include <stdexcept>
#include <type_traits>
#include <vector>

#include "corbit/bigint.hpp"
#include "corbit/summation.hpp"

namespace corbit::arith {

/* ------------------------------------------------------------------ */
/* Dense 1-indexed sequences a_1..a_N (slot 0 is kept but unused) and
 * their Dirichlet convolution (a*b)[m] = sum_{d|m} a[d] b[m/d].
 * The same kernel serves the exact (BigInt / rational) sequences and
 * their binary64 twins.                                               */
/* ------------------------------------------------------------------ */

template <class T>
struct Seq {
    explicit Seq(int n_max_) : n_max(n_max_), v(static_cast<std::size_t>(n_max_) + 1) {
        if (n_max_ < 1) throw std::invalid_argument("Seq: n_max must be >= 1");
    }
    int n_max;
    std::vector<T> v;

    T& operator[](int m) { return v[static_cast<std::size_t>(m)]; }
    const T& operator[](int m) const { return v[static_cast<std::size_t>(m)]; }
};

using ArithSeq = Seq<Rat>;
using IntSeq = Seq<BigInt>;
using FloatSeq = Seq<double>;

template <class T>
Seq<T> dirichlet_convolve(const Seq<T>& a, const Seq<T>& b) {
    if (a.n_max != b.n_max)
        throw std::invalid_argument("dirichlet_convolve: length mismatch");
    const int n = a.n_max;
    Seq<T> c(n);
    for (int d = 1; d <= n; ++d) {
        if (a[d] == T(0)) continue;
        for (int j = 1; d * j <= n; ++j) c[d * j] += a[d] * b[j];
    }
    return c;
}

// b_m = sum over ordered factorizations m = d_1 ... d_l of
// d_1^{l-1} d_2^{l-2} ... d_l^0, i.e. the l-fold Dirichlet convolution
// of the power sequences m^{l-1}, ..., m^1, m^0. For l = 1 this is the
// all-ones sequence. Always integer valued.
IntSeq power_weights(int ell, int n_max);

// binary64 twin of power_weights, for the large cutoffs the Z-function
// evaluator needs; values are exact until they pass 2^53.
FloatSeq power_weights_f(int ell, int n_max);

/* ------------------------------------------------------------------ */
/* Truncated power series a_0 + a_1 z + ... + a_N z^N. All binary ops
 * insist on matching truncation order. exp/log use the standard
 * coefficient recurrences driven by g' = f' g:
 *   m g_m = sum_{j=1..m} j f_j g_{m-j}        (exp, needs f_0 = 0)
 *   f_m = g_m - (1/m) sum_{j<m} j f_j g_{m-j} (log, needs g_0 = 1)    */
/* ------------------------------------------------------------------ */

template <class T>
struct Series {
    explicit Series(int order_) : order(order_), c(static_cast<std::size_t>(order_) + 1) {
        if (order_ < 0) throw std::invalid_argument("Series: order must be >= 0");
    }
    int order;
    std::vector<T> c;
};

using SeriesExact = Series<Rat>;
using SeriesF = Series<double>;

namespace detail {

// Accumulates sum_{j} j * f_j * g_{m-j} with compensation in the float
// instantiation so the exact and float paths share one code shape.
template <class T, class Term>
T accumulate_terms(int count, Term term) {
    if constexpr (std::is_same_v<T, double>) {
        CompensatedSum acc;
        for (int j = 1; j <= count; ++j) acc.add(term(j));
        return acc.value();
    } else {
        T acc(0);
        for (int j = 1; j <= count; ++j) acc += term(j);
        return acc;
    }
}

}  // namespace detail

template <class T>
Series<T> series_add(const Series<T>& a, const Series<T>& b) {
    if (a.order != b.order) throw std::invalid_argument("series_add: order mismatch");
    Series<T> r(a.order);
    for (int i = 0; i <= a.order; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

template <class T>
Series<T> series_mul(const Series<T>& a, const Series<T>& b) {
    if (a.order != b.order) throw std::invalid_argument("series_mul: order mismatch");
    Series<T> r(a.order);
    for (int i = 0; i <= a.order; ++i)
        for (int j = 0; i + j <= a.order; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

template <class T>
Series<T> series_exp(const Series<T>& f) {
    if (f.c[0] != T(0))
        throw std::invalid_argument("series_exp: constant term must vanish");
    Series<T> g(f.order);
    g.c[0] = T(1);
    for (int m = 1; m <= f.order; ++m) {
        T s = detail::accumulate_terms<T>(
            m, [&](int j) { return T(j) * f.c[j] * g.c[m - j]; });
        g.c[m] = s / T(m);
    }
    return g;
}

template <class T>
Series<T> series_log(const Series<T>& g) {
    if (g.c[0] != T(1))
        throw std::invalid_argument("series_log: constant term must be 1");
    Series<T> f(g.order);
    for (int m = 1; m <= g.order; ++m) {
        T s = detail::accumulate_terms<T>(
            m - 1, [&](int j) { return T(j) * f.c[j] * g.c[m - j]; });
        f.c[m] = g.c[m] - s / T(m);
    }
    return f;
}

}  // namespace corbit::arith
