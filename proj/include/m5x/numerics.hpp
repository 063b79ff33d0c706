#pragma once

#include <cmath>
#include <cstddef>

namespace m5x {

// Compensated (Kahan) accumulator for the sums of logs that replace long
// products of near-1 copula values.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

inline double sqr(double x) { return x * x; }

// P(Z <= z) for a standard Frechet variable.
inline double frechet_cdf(double z) { return z > 0.0 ? std::exp(-1.0 / z) : 0.0; }

// Quantile of the standard Frechet distribution, p in (0,1).
inline double frechet_quantile(double p) { return -1.0 / std::log(p); }

}  // namespace m5x
