#pragma once

#include <cmath>

namespace corbit {

// Neumaier variant of Kahan compensated summation. The running
// compensation keeps long nonnegative series accurate to ~1 ulp of the
// final sum instead of accumulating K*eps.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace corbit
