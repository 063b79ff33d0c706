#pragma once

#include <cmath>
#include <vector>

#include "m5x/model.hpp"
#include "m5x/rng.hpp"
#include "m5x/theory.hpp"

namespace m5x::testing {

// The d=2 reference signature used across the suite:
//   column 1: alpha(1,0)=0.5  alpha(1,1)=0.3  alpha(2,0)=0.2  alpha(2,1)=0.0
//   column 2: alpha(1,0)=0.4  alpha(1,1)=0.1  alpha(2,0)=0.1  alpha(2,1)=0.4
// Hand values: theta_1 = 0.7, theta_2 = 0.8, theta(1,1) = 0.9/1.4,
// lambda_hat = 0.6, lambda_c = 11/14 under the comonotone attractor.
inline SignatureArray example_sig_d2() {
    SignatureArray sig(2, 2, 0, 1);
    sig.at(1, 0, 1) = 0.5;
    sig.at(1, 1, 1) = 0.3;
    sig.at(2, 0, 1) = 0.2;
    sig.at(1, 0, 2) = 0.4;
    sig.at(1, 1, 2) = 0.1;
    sig.at(2, 0, 2) = 0.1;
    sig.at(2, 1, 2) = 0.4;
    return sig;
}

inline M5Model example_model_comonotone() {
    return M5Model(example_sig_d2(), Copula::comonotone(2));
}

// alpha(1,0,j) = 1 for every j: the process is an iid sequence of C* draws.
inline SignatureArray single_weight_sig(int d) {
    SignatureArray sig(d, 1, 0, 0);
    for (int j = 1; j <= d; ++j) sig.at(1, 0, j) = 1.0;
    return sig;
}

// Random finite-support signature with scattered zeros; every pattern kept
// alive and every column normalized.
inline SignatureArray random_signature(RngStream& rng, int d, int max_patterns = 4,
                                       int max_window = 5) {
    const int patterns = 1 + static_cast<int>(rng.next_u64() % max_patterns);
    const int window = 1 + static_cast<int>(rng.next_u64() % max_window);
    const int k_min = -static_cast<int>(rng.next_u64() % 3);
    SignatureArray sig(d, patterns, k_min, k_min + window - 1);
    for (int l = 1; l <= patterns; ++l) {
        for (int k = sig.k_min(); k <= sig.k_max(); ++k)
            for (int j = 1; j <= d; ++j)
                if (rng.uniform01() < 0.65) sig.at(l, k, j) = rng.uniform01();
        bool alive = false;
        for (int k = sig.k_min(); k <= sig.k_max() && !alive; ++k)
            for (int j = 1; j <= d && !alive; ++j) alive = sig.at(l, k, j) > 0.0;
        if (!alive) sig.at(l, sig.k_min(), 1 + static_cast<int>(rng.next_u64() % d)) = rng.uniform01();
    }
    // a column may still be all-zero; give it one entry, then rescale
    for (int j = 1; j <= d; ++j) {
        if (sig.column_sum(j) <= 0.0) sig.at(1 + static_cast<int>(rng.next_u64() % patterns),
                                             sig.k_min(), j) = rng.uniform01();
    }
    return normalize(sig);
}

inline Copula random_copula(RngStream& rng, int d) {
    switch (rng.next_u64() % 3) {
        case 0: return Copula::independence(d);
        case 1: return Copula::comonotone(d);
        default: return Copula::logistic(d, 1.0 + 4.0 * rng.uniform01());
    }
}

inline std::vector<double> random_tau(RngStream& rng, int d, double lo = 0.2, double hi = 3.0) {
    std::vector<double> tau(static_cast<std::size_t>(d));
    for (auto& t : tau) t = lo + (hi - lo) * rng.uniform01();
    return tau;
}

// Plain-product oracle for the (l,k) copula products: no log space, no
// compensation, straight transcription.
inline double oracle_product_over_support(const M5Model& m, std::span<const double> u) {
    double prod = 1.0;
    std::vector<double> v(u.size());
    for (int l = 1; l <= m.sig.patterns(); ++l)
        for (int k = m.sig.k_min(); k <= m.sig.k_max(); ++k) {
            for (int j = 1; j <= m.dim(); ++j)
                v[static_cast<std::size_t>(j - 1)] =
                    std::pow(u[static_cast<std::size_t>(j - 1)], m.sig.at(l, k, j));
            prod *= m.cstar.evaluate(v);
        }
    return prod;
}

}  // namespace m5x::testing
