#include "corbit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "corbit/errors.hpp"

namespace corbit::oracle {

bool is_permutation(const Perm& p) {
    const int n = static_cast<int>(p.size());
    std::vector<char> seen(n, 0);
    for (int v : p) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

bool commute(const Perm& a, const Perm& b) {
    const int n = static_cast<int>(a.size());
    if (static_cast<int>(b.size()) != n) return false;
    for (int i = 0; i < n; ++i)
        if (a[b[i]] != b[a[i]]) return false;
    return true;
}

namespace {

struct UnionFind {
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    }
    std::vector<int> parent;
};

}  // namespace

int joint_orbit_count(const std::vector<Perm>& tuple) {
    if (tuple.empty()) throw std::invalid_argument("joint_orbit_count: empty tuple");
    const int n = static_cast<int>(tuple[0].size());
    if (n < 1) throw std::invalid_argument("joint_orbit_count: empty ground set");
    for (const Perm& p : tuple) {
        if (static_cast<int>(p.size()) != n)
            throw std::invalid_argument("joint_orbit_count: size mismatch");
        if (!is_permutation(p))
            throw std::invalid_argument("joint_orbit_count: not a permutation");
    }
    UnionFind uf(n);
    for (const Perm& p : tuple)
        for (int i = 0; i < n; ++i) uf.unite(i, p[i]);
    int orbits = 0;
    for (int i = 0; i < n; ++i)
        if (uf.find(i) == i) ++orbits;
    return orbits;
}

/* ------------------------------------------------------------------ */
/* Brute force over commuting tuples.                                  */
/* ------------------------------------------------------------------ */

namespace {

void descending_partitions(int remaining, int cap, std::vector<int>& cur,
                           std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (int part = std::min(cap, remaining); part >= 1; --part) {
        cur.push_back(part);
        descending_partitions(remaining - part, part, cur, out);
        cur.pop_back();
    }
}

BigInt factorial_big(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// n! / prod_j (j^{m_j} m_j!) for the cycle type given as a partition.
BigInt conjugacy_class_size(int n, const std::vector<int>& parts) {
    BigInt denom = 1;
    int run = 1;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        denom *= parts[i];
        if (i + 1 < parts.size() && parts[i + 1] == parts[i]) {
            ++run;
            denom *= run;
        } else {
            run = 1;
        }
    }
    return factorial_big(n) / denom;
}

Perm representative(int n, const std::vector<int>& parts) {
    Perm p(n);
    int base = 0;
    for (int len : parts) {
        for (int i = 0; i < len; ++i) p[base + i] = base + (i + 1) % len;
        base += len;
    }
    return p;
}

// candidates holds exactly the permutations commuting with everything
// in chosen; narrowing by the new coordinate keeps that invariant.
void extend_tuple(const std::vector<Perm>& candidates, std::vector<Perm>& chosen,
                  int coords_left, const BigInt& weight, std::vector<BigInt>& tally) {
    if (coords_left == 0) {
        tally[joint_orbit_count(chosen)] += weight;
        return;
    }
    for (const Perm& q : candidates) {
        std::vector<Perm> narrowed;
        if (coords_left > 1) {
            for (const Perm& r : candidates)
                if (commute(q, r)) narrowed.push_back(r);
        }
        chosen.push_back(q);
        extend_tuple(coords_left > 1 ? narrowed : candidates, chosen, coords_left - 1,
                     weight, tally);
        chosen.pop_back();
    }
}

}  // namespace

BruteForceResult brute_force_counts(int ell, int n, double work_budget) {
    if (ell < 1) throw std::invalid_argument("brute_force_counts: ell must be >= 1");
    if (n < 0) throw std::invalid_argument("brute_force_counts: n must be >= 0");
    if (n == 0) {
        BruteForceResult empty;
        empty.ell = ell;
        empty.n = 0;
        empty.a = {BigInt(1)};
        empty.total = 1;
        return empty;
    }

    std::vector<std::vector<int>> parts_list;
    std::vector<int> cur;
    descending_partitions(n, n, cur, parts_list);

    const BigInt nfact = factorial_big(n);

    // Predicted work: for l >= 2, scanning S_n once per class for the
    // centralizer, then |centralizer|^{l-1} kappa evaluations of cost
    // ~ n*l each; for l = 1 only a tally per class.
    double predicted = 0.0;
    for (const auto& parts : parts_list) {
        if (ell == 1) {
            predicted += n;
            continue;
        }
        const BigInt cls = conjugacy_class_size(n, parts);
        const double cent = (nfact / cls).convert_to<double>();
        predicted += nfact.convert_to<double>() * n;
        predicted += std::pow(cent, ell - 1) * n * ell;
    }
    if (predicted > work_budget)
        throw BudgetError("brute_force_counts: predicted work " +
                          std::to_string(predicted) + " exceeds budget");

    BruteForceResult res;
    res.ell = ell;
    res.n = n;
    res.a.assign(n + 1, BigInt(0));

    for (const auto& parts : parts_list) {
        const Perm rep = representative(n, parts);
        const BigInt weight = conjugacy_class_size(n, parts);
        if (ell == 1) {
            res.a[static_cast<int>(parts.size())] += weight;
            continue;
        }
        std::vector<Perm> centralizer;
        Perm q(n);
        std::iota(q.begin(), q.end(), 0);
        do {
            if (commute(rep, q)) centralizer.push_back(q);
        } while (std::next_permutation(q.begin(), q.end()));

        std::vector<Perm> chosen{rep};
        extend_tuple(centralizer, chosen, ell - 1, weight, res.a);
    }

    res.total = 0;
    for (const BigInt& v : res.a) res.total += v;
    return res;
}

/* ------------------------------------------------------------------ */
/* Classical exact sequences.                                          */
/* ------------------------------------------------------------------ */

std::vector<BigInt> stirling_first_row(int n) {
    if (n < 0) throw std::invalid_argument("stirling_first_row: n must be >= 0");
    std::vector<BigInt> row{BigInt(1)};  // c(0,0) = 1
    for (int m = 1; m <= n; ++m) {
        std::vector<BigInt> next(m + 1);
        for (int k = 1; k <= m; ++k) {
            next[k] = row[k - 1];
            if (k < m) next[k] += BigInt(m - 1) * row[k];
        }
        next[0] = 0;
        row = std::move(next);
    }
    return row;
}

std::vector<BigInt> partition_numbers(int n_max) {
    if (n_max < 0) throw std::invalid_argument("partition_numbers: n_max must be >= 0");
    std::vector<BigInt> p(n_max + 1);
    p[0] = 1;
    for (int n = 1; n <= n_max; ++n) {
        BigInt acc = 0;
        for (int k = 1;; ++k) {
            const long long g1 = static_cast<long long>(k) * (3 * k - 1) / 2;
            const long long g2 = static_cast<long long>(k) * (3 * k + 1) / 2;
            if (g1 > n) break;
            const BigInt t1 = p[n - g1];
            const BigInt t2 = (g2 <= n) ? p[n - g2] : BigInt(0);
            if (k % 2 == 1)
                acc += t1 + t2;
            else
                acc -= t1 + t2;
        }
        p[n] = acc;
    }
    return p;
}

EwensDistribution ewens_exact(int n, const Rat& x) {
    if (n < 1) throw std::invalid_argument("ewens_exact: n must be >= 1");
    if (x <= 0) throw std::invalid_argument("ewens_exact: x must be positive");
    const std::vector<BigInt> c = stirling_first_row(n);
    Rat poch = 1;
    for (int j = 0; j < n; ++j) poch *= (x + j);

    EwensDistribution d;
    d.n = n;
    d.x = x;
    d.pmf.assign(n + 1, Rat(0));
    Rat xpow = 1;
    for (int k = 1; k <= n; ++k) {
        xpow *= x;
        d.pmf[k] = Rat(c[k]) * xpow / poch;
    }
    Rat mean = 0, second = 0;
    for (int k = 1; k <= n; ++k) {
        mean += Rat(k) * d.pmf[k];
        second += Rat(k) * k * d.pmf[k];
    }
    d.mean = mean;
    d.variance = second - mean * mean;
    return d;
}

std::vector<int> feller_sample(int n, double x, std::uint64_t seed, int count) {
    if (n < 1) throw std::invalid_argument("feller_sample: n must be >= 1");
    if (!(x > 0.0)) throw std::invalid_argument("feller_sample: x must be positive");
    if (count < 0) throw std::invalid_argument("feller_sample: count must be >= 0");
    std::mt19937_64 rng(seed);
    std::vector<int> out;
    out.reserve(count);
    for (int s = 0; s < count; ++s) {
        int k = 0;
        for (int j = 0; j < n; ++j) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (u < x / (x + j)) ++k;
        }
        out.push_back(k);
    }
    return out;
}

}  // namespace corbit::oracle
