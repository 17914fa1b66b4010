#include "corbit/clt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "corbit/arith_core.hpp"
#include "corbit/saddle.hpp"
#include "corbit/special_functions.hpp"
#include "corbit/summation.hpp"
#include "corbit/zfun.hpp"

namespace corbit::clt {

namespace {

void require_ell2(int ell, const char* who) {
    if (ell < 2) throw std::invalid_argument(std::string(who) + ": ell must be >= 2");
}

// Values this far below the working scale (which the shift keeps at
// e^{0} or above per total row mass) are dropped to avoid crawling
// through subnormals; the mass check certifies the loss is invisible.
constexpr double kColumnFloor = 1e-280;

}  // namespace

PmfExact pmf_exact(const orbits::OrbitTable& table, int n, const Rat& x) {
    if (!table.exact) throw std::invalid_argument("pmf_exact: table must be exact");
    if (n < 0 || n > table.n_max) throw std::out_of_range("pmf_exact: n outside table");
    if (x <= 0) throw std::invalid_argument("pmf_exact: x must be positive");

    const std::vector<BigInt>& row = table.a[static_cast<std::size_t>(n)];
    PmfExact out;
    out.ell = table.ell;
    out.n = n;
    out.x = x;
    out.p.assign(static_cast<std::size_t>(n) + 1, Rat(0));

    Rat xp(1), total(0);
    for (int k = 0; k <= n; ++k) {
        out.p[k] = Rat(row[k]) * xp;
        total += out.p[k];
        xp *= x;
    }
    Rat mean(0), second(0);
    for (int k = 0; k <= n; ++k) {
        out.p[k] /= total;
        mean += Rat(k) * out.p[k];
        second += Rat(k) * Rat(k) * out.p[k];
    }
    out.mean = mean;
    out.variance = second - mean * mean;
    return out;
}

std::vector<Pmf> pmf_float_targets(int ell, double x, const std::vector<int>& targets) {
    require_ell2(ell, "pmf_float_targets");
    if (!(x > 0.0)) throw std::invalid_argument("pmf_float_targets: x must be positive");
    if (targets.empty()) throw std::invalid_argument("pmf_float_targets: no targets");
    for (int t : targets)
        if (t < 1) throw std::invalid_argument("pmf_float_targets: targets must be >= 1");
    const int N = *std::max_element(targets.begin(), targets.end());

    const double theta = (ell - 1.0) / ell;
    const double ln_h_pred = (ell / (ell - 1.0)) *
                             std::pow(x * zfun::kappa_constant(ell), 1.0 / ell) *
                             std::pow(N, theta);
    if (ln_h_pred > 2000.0)
        throw std::domain_error("pmf_float_targets: row scale exceeds binary64 range");
    const double beta = ln_h_pred / N;

    const std::vector<double> logh = orbits::log_h_float(ell, x, N);

    const arith::FloatSeq b = arith::power_weights_f(ell, N);
    std::vector<double> ctil(static_cast<std::size_t>(N) + 1, 0.0);
    for (int m = 1; m <= N; ++m) ctil[m] = b.v[m] * std::exp(-beta * m) / m;

    const int k_run = std::min(N, static_cast<int>(std::ceil(8.0 * std::pow(N, theta))));

    std::vector<Pmf> out(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        out[i].ell = ell;
        out[i].n = targets[i];
        out[i].x = x;
        out[i].p.assign(static_cast<std::size_t>(std::min(targets[i], k_run)) + 1, 0.0);
    }

    std::vector<double> prev(static_cast<std::size_t>(N) + 1, 0.0);
    std::vector<double> cur(static_cast<std::size_t>(N) + 1, 0.0);
    prev[0] = 1.0;

    for (int k = 1; k <= k_run; ++k) {
        std::fill(cur.begin(), cur.end(), 0.0);
        const double scale = x / k;
        // prev (column k-1) vanishes below n = k-1, so n runs from
        // m+k-1; keeping m outermost makes the inner update a plain
        // axpy with no accumulation-order ambiguity.
        for (int m = 1; m <= N - (k - 1); ++m) {
            const double w = scale * ctil[m];
            if (w == 0.0) continue;
            const double* src = prev.data() + (k - 1);
            double* dst = cur.data() + (m + k - 1);
            const int len = N - (m + k - 1) + 1;
            for (int i = 0; i < len; ++i) dst[i] += w * src[i];
        }
        bool any = false;
        for (int n = k; n <= N; ++n) {
            if (cur[n] < kColumnFloor)
                cur[n] = 0.0;
            else
                any = true;
        }
        for (std::size_t i = 0; i < out.size(); ++i)
            if (static_cast<std::size_t>(k) < out[i].p.size())
                out[i].p[k] = cur[out[i].n];
        if (!any) break;
        prev.swap(cur);
    }

    for (Pmf& d : out) {
        CompensatedSum mass;
        for (double v : d.p) mass.add(v);
        const double m = mass.value();
        const double h_scaled = std::exp(logh[d.n] - beta * d.n);
        d.mass_defect = std::abs(m - h_scaled) / h_scaled;
        if (!(m > 0.0) || d.mass_defect > 1e-6)
            throw std::runtime_error("pmf_float_targets: mass check failed");
        d.log_h = std::log(m) + beta * d.n;
        for (double& v : d.p) v /= m;

        CompensatedSum mean;
        for (std::size_t k = 0; k < d.p.size(); ++k) mean.add(k * d.p[k]);
        d.mean = mean.value();
        CompensatedSum var;
        for (std::size_t k = 0; k < d.p.size(); ++k) {
            const double dev = k - d.mean;
            var.add(dev * dev * d.p[k]);
        }
        d.variance = var.value();
    }
    return out;
}

Moments asymptotic_moments(int ell, double x, double n) {
    require_ell2(ell, "asymptotic_moments");
    if (!(x > 0.0) || !(n > 0.0))
        throw std::invalid_argument("asymptotic_moments: x and n must be positive");
    const double lead = std::pow(x * zfun::kappa_constant(ell), 1.0 / ell) *
                        std::pow(n, (ell - 1.0) / ell) / (ell - 1.0);
    return {lead, lead / ell};
}

Centering centering_leading(int ell, double x, double n) {
    const Moments mo = asymptotic_moments(ell, x, n);
    return {mo.mean, std::sqrt(mo.variance)};
}

Centering centering_refined(int ell, double x, double n) {
    const saddle::SaddlePoint sp = saddle::solve_saddle(ell, x, n);
    const double z_tol = 1e-9 * std::max(1.0, n) / x;
    const double a = x * zfun::z_staircase(ell, ell - 1, sp.t, z_tol).value;
    return {a, centering_leading(ell, x, n).b};
}

double psi_mgf(const Pmf& dist, double s, double a, double b) {
    if (!(b > 0.0)) throw std::invalid_argument("psi_mgf: b must be positive");
    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> g(dist.p.size(), neg_inf);
    double mx = neg_inf;
    for (std::size_t k = 0; k < dist.p.size(); ++k) {
        if (dist.p[k] <= 0.0) continue;
        g[k] = std::log(dist.p[k]) + s * (static_cast<double>(k) - a) / b;
        mx = std::max(mx, g[k]);
    }
    if (!std::isfinite(mx)) throw std::runtime_error("psi_mgf: empty distribution");
    CompensatedSum acc;
    for (double gk : g) acc.add(std::exp(gk - mx));
    return mx + std::log(acc.value());
}

double kolmogorov_distance(const Pmf& dist, double a, double b) {
    if (!(b > 0.0)) throw std::invalid_argument("kolmogorov_distance: b must be positive");
    CompensatedSum cum;
    double worst = 0.0;
    for (std::size_t k = 0; k < dist.p.size(); ++k) {
        const double z = (static_cast<double>(k) - a) / b;
        const double phi = sf::normal_cdf(z);
        worst = std::max(worst, std::abs(cum.value() - phi));
        cum.add(dist.p[k]);
        worst = std::max(worst, std::abs(cum.value() - phi));
    }
    return worst;
}

ConcavityResult log_concavity(const orbits::OrbitTable& table, int n_max) {
    if (!table.exact)
        throw std::invalid_argument("log_concavity: table must be exact");
    if (n_max > table.n_max)
        throw std::out_of_range("log_concavity: n_max outside table");
    for (int n = 2; n <= n_max; ++n) {
        const std::vector<BigInt>& row = table.a[static_cast<std::size_t>(n)];
        for (int k = 1; k < n; ++k) {
            if (row[k] * row[k] < row[k - 1] * row[k + 1]) return {false, n, k};
        }
    }
    return {true, 0, 0};
}

MgfDecomposition mgf_decomposition(int ell, double x, int n, double s) {
    require_ell2(ell, "mgf_decomposition");
    if (n < 1) throw std::invalid_argument("mgf_decomposition: n must be >= 1");
    const saddle::SaddlePoint sp = saddle::solve_saddle(ell, x, n);
    const double z_tol = 1e-9 * std::max(1.0, static_cast<double>(n)) / x;
    const double a = x * zfun::z_staircase(ell, ell - 1, sp.t, z_tol).value;
    const double b = centering_leading(ell, x, n).b;
    const double xs = x * std::exp(s / b);

    MgfDecomposition d;
    d.t = sp.t;
    d.a = a;
    d.b = b;
    d.center_term = -s * a / b;
    d.ln_p_tilted = saddle::prefactor_log(ell, xs, sp.t, n);
    d.ln_p_base = saddle::prefactor_log(ell, x, sp.t, n);
    const double j_x = saddle::contour_integral_J(ell, n, x, sp.t).j;
    const double j_xs = saddle::contour_integral_J(ell, n, xs, sp.t).j;
    d.r_part = std::log(j_xs) - std::log(j_x);
    d.r_limit = -(ell - 1.0) * s * s / 2.0;
    return d;
}

}  // namespace corbit::clt
