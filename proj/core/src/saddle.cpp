#include "corbit/saddle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "corbit/errors.hpp"
#include "corbit/zfun.hpp"

namespace corbit::saddle {

namespace {

void require_ell2(int ell, const char* who) {
    if (ell < 2) throw std::invalid_argument(std::string(who) + ": ell must be >= 2");
}

}  // namespace

SaddlePoint solve_saddle(int ell, double x, double n, double rel_tol) {
    require_ell2(ell, "solve_saddle");
    if (!(x > 0.0)) throw std::invalid_argument("solve_saddle: x must be positive");
    if (!(n > 0.0)) throw std::invalid_argument("solve_saddle: n must be positive");
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw std::invalid_argument("solve_saddle: rel_tol out of range");

    const double z_tol = 0.1 * rel_tol * n / x;
    auto F = [&](double t) { return x * zfun::z_staircase(ell, ell, t, z_tol).value - n; };

    const double kappa = zfun::kappa_constant(ell);
    double t0 = std::pow(n / (x * kappa), -1.0 / ell);

    // F is decreasing: shrink lo until F > 0, grow hi until F < 0.
    double lo = t0, hi = t0;
    double flo = F(lo);
    for (int i = 0; flo <= 0.0; ++i) {
        if (i > 200) throw std::runtime_error("solve_saddle: bracketing failed (lo)");
        lo /= 2.0;
        flo = F(lo);
    }
    double fhi = F(hi);
    for (int i = 0; fhi >= 0.0; ++i) {
        if (i > 200) throw std::runtime_error("solve_saddle: bracketing failed (hi)");
        hi *= 2.0;
        fhi = F(hi);
    }

    for (int i = 0; i < 10; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = F(mid);
        if (fm > 0.0)
            lo = mid;
        else
            hi = mid;
    }

    double t = 0.5 * (lo + hi);
    double ft = F(t);
    const double stop = 0.3 * rel_tol * n;
    for (int i = 0; i < 100 && std::abs(ft) > stop; ++i) {
        const double zt = t;
        const double deriv_tol = std::max(1e-4 * ell * (n / x) / zt, 1e-12);
        const double zprime = zfun::z_staircase(ell, ell + 1, t, deriv_tol).value;
        double next = t + ft / (x * zprime);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // fall back to bisection
        const double fn = F(next);
        if (fn > 0.0)
            lo = next;
        else
            hi = next;
        t = next;
        ft = fn;
    }
    if (std::abs(ft) > rel_tol * n)
        throw std::runtime_error("solve_saddle: did not reach requested residual");

    SaddlePoint sp;
    sp.t = t;
    const zfun::ZResult final_z = zfun::z_staircase(ell, ell, t, 0.05 * z_tol);
    sp.residual = x * final_z.value - n;
    sp.z_cutoff = final_z.cutoff;
    sp.lambda = 1.0 / std::sqrt(x * zfun::z_staircase(ell, ell + 1, t, 1e-9 * n / x).value);
    return sp;
}

double prefactor_log(int ell, double x, double t, double n) {
    require_ell2(ell, "prefactor_log");
    if (!(t > 0.0)) throw std::invalid_argument("prefactor_log: t must be positive");
    const double z_tol = 1e-12 * std::max(1.0, n) / x;
    return n * t + x * zfun::z_staircase(ell, ell - 1, t, z_tol).value;
}

/* ------------------------------------------------------------------ */
/* Contour integrand and trapezoid loop.                               */
/* ------------------------------------------------------------------ */

namespace {

struct Integrand {
    double n = 0.0;
    double y = 0.0;
    std::vector<double> d;  // d_k = c_k e^{-ku}, k = 1..K

    // exp(-q(theta)); rotation recurrence resynced every 256 steps.
    std::complex<double> value(double theta) const {
        const int K = static_cast<int>(d.size()) - 1;
        const double cs = std::cos(theta), sn = std::sin(theta);
        double cr = 1.0, ci = 0.0;
        double sum_cos = 0.0, sum_sin = 0.0;
        for (int k = 1; k <= K; ++k) {
            if ((k & 255) == 0) {
                cr = std::cos(k * theta);
                ci = std::sin(k * theta);
            } else {
                const double nr = cr * cs - ci * sn;
                ci = cr * sn + ci * cs;
                cr = nr;
            }
            sum_cos += d[k] * (1.0 - cr);
            sum_sin += d[k] * ci;
        }
        const double re_q = y * sum_cos;
        const double im_q = n * theta - y * sum_sin;
        if (re_q > 745.0) return {0.0, 0.0};  // e^{-q} underflows
        const double mag = std::exp(-re_q);
        return {mag * std::cos(im_q), -mag * std::sin(im_q)};
    }
};

}  // namespace

std::complex<double> q_function(int ell, double n, double y, double u, double theta,
                                double abs_tol) {
    require_ell2(ell, "q_function");
    if (!(y > 0.0)) throw std::invalid_argument("q_function: y must be positive");
    if (!(u > 0.0)) throw std::invalid_argument("q_function: u must be positive");
    // |e^{ik theta} - 1| <= 2, so a weight tail below abs_tol/(2y)
    // certifies q to abs_tol.
    const int K = zfun::certified_cutoff_staircase(ell, ell - 1, u, abs_tol / (2.0 * y));
    const std::vector<double> c = zfun::staircase_weight_prefix(ell, ell - 1, K);
    std::complex<double> s(0.0, 0.0);
    for (int k = 1; k <= K; ++k) {
        const double e = std::exp(-u * k);
        if (e == 0.0) break;
        s += c[k] * e * (std::complex<double>(std::cos(k * theta), std::sin(k * theta)) -
                         1.0);
    }
    return std::complex<double>(0.0, n * theta) - y * s;
}

ContourResult contour_integral_J(int ell, int n, double y, double u, int m) {
    require_ell2(ell, "contour_integral_J");
    if (n < 0) throw std::invalid_argument("contour_integral_J: n must be >= 0");
    if (!(y > 0.0) || !(u > 0.0))
        throw std::invalid_argument("contour_integral_J: y and u must be positive");
    if (m < 0 || m % 2 != 0)
        throw std::invalid_argument("contour_integral_J: grid size must be even");

    Integrand f;
    f.n = n;
    f.y = y;
    const int K = zfun::certified_cutoff_staircase(ell, ell - 1, u, 1e-12 / (2.0 * y));
    const std::vector<double> c = zfun::staircase_weight_prefix(ell, ell - 1, K);
    f.d.assign(K + 1, 0.0);
    for (int k = 1; k <= K; ++k) f.d[k] = c[k] * std::exp(-u * k);

    auto trapezoid = [&](int grid) {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < grid; ++j) {
            const double theta = -M_PI + 2.0 * M_PI * j / grid;
            acc += f.value(theta);
        }
        return acc / static_cast<double>(grid);
    };

    if (m > 0) {
        const std::complex<double> v = trapezoid(m);
        return {v.real(), std::abs(v.imag()) / std::max(std::abs(v.real()), 1e-300), m, K};
    }

    // Starting grid: resolve the Gaussian scale lambda and the alias
    // scale; doubling handles the rest.
    const double zpp = zfun::z_staircase(ell, ell + 1, u, 1e-6 * (1.0 + y)).value;
    const double lambda = 1.0 / std::sqrt(y * zpp);
    int grid = 256;
    while (grid < 16.0 / lambda && grid < (1 << 20)) grid *= 2;

    std::complex<double> prev = trapezoid(grid);
    for (int iter = 0; iter < 14; ++iter) {
        grid *= 2;
        const std::complex<double> cur = trapezoid(grid);
        const double delta = std::abs(cur - prev);
        if (delta <= 1e-10 * std::abs(cur)) {
            return {cur.real(),
                    std::abs(cur.imag()) / std::max(std::abs(cur.real()), 1e-300), grid,
                    K};
        }
        prev = cur;
        if (grid > (1 << 22))
            throw ToleranceError("contour_integral_J: grid did not converge",
                                 delta / std::abs(cur));
    }
    throw ToleranceError("contour_integral_J: grid did not converge", 0.0);
}

double j_gaussian_prediction(int ell, double x, double n, double s) {
    require_ell2(ell, "j_gaussian_prediction");
    if (!(x > 0.0) || !(n > 0.0))
        throw std::invalid_argument("j_gaussian_prediction: x and n must be positive");
    const double kappa = zfun::kappa_constant(ell);
    return std::pow(x * kappa, 1.0 / (2.0 * ell)) / std::sqrt(2.0 * M_PI * ell) *
           std::pow(n, -(ell + 1.0) / (2.0 * ell)) *
           std::exp(-0.5 * (ell - 1.0) * s * s);
}

}  // namespace corbit::saddle
