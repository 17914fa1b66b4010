#include "corbit/orbit_series.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "corbit/oracle.hpp"
#include "corbit/special_functions.hpp"
#include "corbit/summation.hpp"

namespace corbit::orbits {

namespace {

void require_ell(int ell) {
    if (ell < 2)
        throw std::invalid_argument("orbit tables need ell >= 2 (ell = 1 is Ewens)");
}

}  // namespace

arith::ArithSeq l_coefficients(int ell, int n_max) {
    require_ell(ell);
    const arith::IntSeq b = arith::power_weights(ell, n_max);
    arith::ArithSeq c(n_max);
    for (int m = 1; m <= n_max; ++m) c[m] = Rat(b[m], m);
    return c;
}

OrbitTable build_orbit_table(int ell, int n_max, TableMode mode) {
    require_ell(ell);
    if (n_max < 0) throw std::invalid_argument("build_orbit_table: n_max must be >= 0");

    OrbitTable t;
    t.ell = ell;
    t.n_max = n_max;
    t.exact = (mode == TableMode::exact);

    if (n_max == 0) {
        if (t.exact)
            t.a.push_back({BigInt(1)});
        else
            t.h.push_back({1.0});
        return t;
    }

    if (t.exact) {
        const arith::IntSeq b = arith::power_weights(ell, n_max);
        t.a.reserve(n_max + 1);
        t.a.push_back({BigInt(1)});
        for (int n = 1; n <= n_max; ++n) {
            std::vector<BigInt> row(n + 1);
            BigInt falling = 1;  // (n-1)(n-2)...(n-m+1), empty for m = 1
            for (int m = 1; m <= n; ++m) {
                const BigInt w = b[m] * falling;
                const std::vector<BigInt>& prev = t.a[n - m];
                for (int k = 1; k <= n - m + 1; ++k) row[k] += w * prev[k - 1];
                falling *= (n - m);
            }
            t.a.push_back(std::move(row));
        }
    } else {
        const arith::FloatSeq b = arith::power_weights_f(ell, n_max);
        t.h.reserve(n_max + 1);
        t.h.push_back({1.0});
        for (int n = 1; n <= n_max; ++n) {
            std::vector<double> row(n + 1, 0.0);
            for (int m = 1; m <= n; ++m) {
                const double w = b[m] / n;
                const std::vector<double>& prev = t.h[n - m];
                for (int k = 1; k <= n - m + 1; ++k) row[k] += w * prev[k - 1];
            }
            t.h.push_back(std::move(row));
        }
    }
    return t;
}

Rat h_value_exact(const OrbitTable& table, int n, const Rat& x) {
    if (!table.exact) throw std::invalid_argument("h_value_exact: needs an exact table");
    if (n < 0 || n > table.n_max) throw std::invalid_argument("h_value_exact: n out of range");
    const BigInt p = boost::multiprecision::numerator(x);
    const BigInt q = boost::multiprecision::denominator(x);
    BigInt num = 0;
    BigInt ppow = 1;
    // sum_k a[k] p^k q^{n-k}, assembled as q^n * sum a[k] (p/q)^k
    std::vector<BigInt> qpow(n + 1);
    qpow[n] = 1;
    for (int k = n - 1; k >= 0; --k) qpow[k] = qpow[k + 1] * q;
    const std::vector<BigInt>& row = table.a[n];
    for (int k = 0; k <= n; ++k) {
        num += row[k] * ppow * qpow[k];
        ppow *= p;
    }
    BigInt denom = 1;
    for (int i = 2; i <= n; ++i) denom *= i;
    denom *= qpow[0];  // n! q^n
    return Rat(num, denom);
}

std::vector<double> log_h_float(int ell, double x, int n_max) {
    require_ell(ell);
    if (!(x > 0.0)) throw std::invalid_argument("log_h_float: x must be positive");
    if (n_max < 0) throw std::invalid_argument("log_h_float: n_max must be >= 0");

    // Log-shift from the leading-order prediction of ln H_n(x); the
    // shifted peak is below ~0.3 * ln H_N, so binary64 holds well past
    // every supported grid.
    double kappa = 1.0;
    for (int j = 2; j <= ell; ++j) kappa *= static_cast<double>(j - 1) * sf::zeta(j);
    // kappa above is (l-1)! zeta(2)...zeta(l) assembled in one loop
    const double theta = static_cast<double>(ell - 1) / ell;
    const double ln_h_pred = (ell / static_cast<double>(ell - 1)) *
                             std::pow(x * kappa, 1.0 / ell) * std::pow(n_max, theta);
    if (ln_h_pred > 2000.0)
        throw std::domain_error("log_h_float: predicted ln H exceeds supported range");
    const double beta = (n_max >= 1) ? std::max(0.0, ln_h_pred / n_max) : 0.0;

    const arith::FloatSeq b = arith::power_weights_f(ell, n_max > 0 ? n_max : 1);
    std::vector<double> bt(n_max + 1, 0.0);
    for (int m = 1; m <= n_max; ++m) bt[m] = b[m] * std::exp(-beta * m);

    std::vector<double> ht(n_max + 1, 0.0);
    ht[0] = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        CompensatedSum acc;
        for (int m = 1; m <= n; ++m) acc.add(bt[m] * ht[n - m]);
        ht[n] = acc.value() * x / n;
        if (!std::isfinite(ht[n]))
            throw std::runtime_error("log_h_float: overflow in scaled recurrence");
    }
    std::vector<double> out(n_max + 1);
    out[0] = 0.0;
    for (int n = 1; n <= n_max; ++n) out[n] = std::log(ht[n]) + beta * n;
    return out;
}

PartitionCheck h_at_one_vs_partitions(const OrbitTable& table) {
    if (!table.exact || table.ell != 2)
        throw std::invalid_argument("h_at_one_vs_partitions: needs an exact ell = 2 table");
    const std::vector<BigInt> p = oracle::partition_numbers(table.n_max);
    PartitionCheck res;
    BigInt nfact = 1;
    for (int n = 0; n <= table.n_max; ++n) {
        if (n > 0) nfact *= n;
        BigInt row_sum = 0;
        for (const BigInt& v : table.a[n]) row_sum += v;
        if (row_sum != nfact * p[n]) {
            res.ok = false;
            res.first_mismatch = n;
            break;
        }
    }
    return res;
}

std::string table_to_json(const OrbitTable& table) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["ell"] = table.ell;
    doc["n_max"] = table.n_max;
    doc["mode"] = table.exact ? "exact" : "float";
    if (table.exact) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : table.a) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (const BigInt& v : row) r.push_back(dec_string(v));
            rows.push_back(std::move(r));
        }
        doc["a"] = std::move(rows);
    } else {
        doc["h"] = table.h;
    }
    return doc.dump();
}

std::string row_to_csv(const OrbitTable& table, int n) {
    if (n < 0 || n > table.n_max) throw std::invalid_argument("row_to_csv: n out of range");
    std::ostringstream os;
    os << n;
    if (table.exact) {
        for (const BigInt& v : table.a[n]) os << ',' << dec_string(v);
    } else {
        os.precision(17);
        for (double v : table.h[n]) os << ',' << v;
    }
    return os.str();
}

}  // namespace corbit::orbits
