#include "corbit/arith_core.hpp"

#include <cmath>

namespace corbit::arith {

namespace {

IntSeq int_power_seq(int e, int n_max) {
    IntSeq s(n_max);
    for (int m = 1; m <= n_max; ++m)
        s[m] = boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(e));
    return s;
}

FloatSeq float_power_seq(int e, int n_max) {
    FloatSeq s(n_max);
    for (int m = 1; m <= n_max; ++m)
        s[m] = std::pow(static_cast<double>(m), static_cast<double>(e));
    return s;
}

}  // namespace

IntSeq power_weights(int ell, int n_max) {
    if (ell < 1) throw std::invalid_argument("power_weights: ell must be >= 1");
    IntSeq acc = int_power_seq(ell - 1, n_max);
    for (int e = ell - 2; e >= 0; --e)
        acc = dirichlet_convolve(acc, int_power_seq(e, n_max));
    return acc;
}

FloatSeq power_weights_f(int ell, int n_max) {
    if (ell < 1) throw std::invalid_argument("power_weights_f: ell must be >= 1");
    FloatSeq acc = float_power_seq(ell - 1, n_max);
    for (int e = ell - 2; e >= 0; --e)
        acc = dirichlet_convolve(acc, float_power_seq(e, n_max));
    return acc;
}

}  // namespace corbit::arith
