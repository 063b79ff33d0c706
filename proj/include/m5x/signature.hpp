#pragma once

#include <vector>

#include "m5x/errors.hpp"

namespace m5x {

// The coefficient family alpha[l][k][j] defining a moving-maxima model:
// L signature patterns, lag window [k_min, k_max], d components. Each
// component column must carry total weight 1. Dense storage; supports are
// small by construction.
//
// Indices are domain-style: l in 1..L, j in 1..d, k as declared (lags may be
// negative).
class SignatureArray {
public:
    SignatureArray(int d, int patterns, int k_min, int k_max)
        : d_(d), patterns_(patterns), k_min_(k_min), k_max_(k_max) {
        if (d < 1 || patterns < 1 || k_min > k_max)
            throw ValidationError("SignatureArray: need d >= 1, L >= 1, k_min <= k_max");
        alpha_.assign(static_cast<std::size_t>(patterns) * window() * d, 0.0);
    }

    int dim() const { return d_; }
    int patterns() const { return patterns_; }
    int k_min() const { return k_min_; }
    int k_max() const { return k_max_; }
    int window() const { return k_max_ - k_min_ + 1; }

    double at(int l, int k, int j) const { return alpha_[index(l, k, j)]; }
    double& at(int l, int k, int j) { return alpha_[index(l, k, j)]; }

    // Total weight of component column j.
    double column_sum(int j) const;

    bool operator==(const SignatureArray&) const = default;

private:
    std::size_t index(int l, int k, int j) const {
        if (l < 1 || l > patterns_ || k < k_min_ || k > k_max_ || j < 1 || j > d_)
            throw BadIndex("SignatureArray: index (l,k,j) out of range");
        return (static_cast<std::size_t>(l - 1) * window() + (k - k_min_)) * d_ + (j - 1);
    }

    int d_, patterns_, k_min_, k_max_;
    std::vector<double> alpha_;
};

// Checks the model constraints and returns the array unchanged:
// every weight nonnegative, every column summing to 1 within 1e-9, and no
// pattern with all-zero weights. Throws NegativeWeight, BadNormalization
// (naming the offending column and its sum) or DeadPattern.
const SignatureArray& validate(const SignatureArray& sig);

// Rescales each column to sum to 1. Columns already within 1e-12 of 1 are
// left untouched, which makes the operation idempotent bit for bit.
// Throws ZeroColumn if a column carries no weight, NegativeWeight on any
// negative entry.
SignatureArray normalize(const SignatureArray& sig);

// sum over l of max over k of alpha[l][k][j]: the extremal index of the
// j-th component sequence. In (0, 1] for a valid array.
double column_max_sum(const SignatureArray& sig, int j);

// The two-column sub-array for components (j, j2), j < j2, with patterns
// that are dead in both columns dropped (they contribute nothing to any
// bivariate quantity). The result passes validate().
SignatureArray pair_signature(const SignatureArray& sig, int j, int j2);

}  // namespace m5x
