#pragma once

#include <complex>

namespace corbit::saddle {

// Saddle point t_n of H_n(x) ~ exp(n t + x Z_{l-1}(t)) e^{...}: the
// root of x Z_l(t) = n. Z_l is strictly decreasing, so bracketed
// bisection plus safeguarded Newton (Z_l' = -Z_{l+1}) always lands.
struct SaddlePoint {
    double t = 0.0;
    double residual = 0.0;  // x Z_l(t) - n, recomputed after the solve
    double lambda = 0.0;    // (x Z_{l+1}(t))^{-1/2}, the Gaussian scale
    int z_cutoff = 0;
};

// rel_tol bounds |x Z_l(t_n) - n| / n.
SaddlePoint solve_saddle(int ell, double x, double n, double rel_tol = 1e-9);

// ln P(x, t) = n t + x Z_{l-1}(t); H_n(x) = P * J for every t > 0.
double prefactor_log(int ell, double x, double t, double n);

// q(theta) = i n theta - y sum_k c_k e^{-ku} (e^{ik theta} - 1) with
// c_k = b_k / k; Re q >= 0. One certified evaluation.
std::complex<double> q_function(int ell, double n, double y, double u, double theta,
                                double abs_tol = 1e-11);

// J = (1/2pi) integral of exp(-q) over (-pi, pi], by the uniform
// trapezoid rule with grid doubling until two successive refinements
// agree to 1e-10 relative. m = 0 picks the starting grid from the
// Gaussian scale; a positive even m fixes the grid (no doubling).
struct ContourResult {
    double j = 0.0;
    double imag_rel = 0.0;  // |imaginary part| / |real part|, diagnostic
    int m_used = 0;
    int k_cutoff = 0;
};
ContourResult contour_integral_J(int ell, int n, double y, double u, int m = 0);

// (x kappa_l)^{1/(2l)} / sqrt(2 pi l) * n^{-(l+1)/(2l)} * e^{-(l-1)s^2/2}
double j_gaussian_prediction(int ell, double x, double n, double s);

}  // namespace corbit::saddle
