#include "m5x/signature.hpp"

#include <cmath>
#include <string>

#include "m5x/numerics.hpp"

namespace m5x {

double SignatureArray::column_sum(int j) const {
    KahanSum s;
    for (int l = 1; l <= patterns_; ++l)
        for (int k = k_min_; k <= k_max_; ++k) s.add(at(l, k, j));
    return s.value();
}

const SignatureArray& validate(const SignatureArray& sig) {
    for (int l = 1; l <= sig.patterns(); ++l) {
        bool alive = false;
        for (int k = sig.k_min(); k <= sig.k_max(); ++k) {
            for (int j = 1; j <= sig.dim(); ++j) {
                const double a = sig.at(l, k, j);
                if (a < 0.0 || !std::isfinite(a))
                    throw NegativeWeight("alpha[" + std::to_string(l) + "][" + std::to_string(k) +
                                         "][" + std::to_string(j) + "] = " + std::to_string(a));
                if (a > 0.0) alive = true;
            }
        }
        if (!alive) throw DeadPattern("pattern l=" + std::to_string(l) + " has no positive weight");
    }
    for (int j = 1; j <= sig.dim(); ++j) {
        const double s = sig.column_sum(j);
        if (std::abs(s - 1.0) > 1e-9)
            throw BadNormalization("column j=" + std::to_string(j) + " sums to " +
                                   std::to_string(s) + ", expected 1");
    }
    return sig;
}

SignatureArray normalize(const SignatureArray& sig) {
    SignatureArray out = sig;
    for (int j = 1; j <= sig.dim(); ++j) {
        KahanSum s;
        for (int l = 1; l <= sig.patterns(); ++l) {
            for (int k = sig.k_min(); k <= sig.k_max(); ++k) {
                const double a = sig.at(l, k, j);
                if (a < 0.0 || !std::isfinite(a))
                    throw NegativeWeight("alpha[" + std::to_string(l) + "][" + std::to_string(k) +
                                         "][" + std::to_string(j) + "] = " + std::to_string(a));
                s.add(a);
            }
        }
        const double sum = s.value();
        if (sum <= 0.0) throw ZeroColumn("column j=" + std::to_string(j) + " has no weight");
        if (std::abs(sum - 1.0) <= 1e-12) continue;  // idempotence: rescaling by 1+O(1e-13) is noise
        for (int l = 1; l <= sig.patterns(); ++l)
            for (int k = sig.k_min(); k <= sig.k_max(); ++k) out.at(l, k, j) = sig.at(l, k, j) / sum;
    }
    return out;
}

double column_max_sum(const SignatureArray& sig, int j) {
    if (j < 1 || j > sig.dim()) throw BadIndex("column_max_sum: j out of range");
    KahanSum s;
    for (int l = 1; l <= sig.patterns(); ++l) {
        double m = 0.0;
        for (int k = sig.k_min(); k <= sig.k_max(); ++k) m = std::max(m, sig.at(l, k, j));
        s.add(m);
    }
    return s.value();
}

SignatureArray pair_signature(const SignatureArray& sig, int j, int j2) {
    if (!(1 <= j && j < j2 && j2 <= sig.dim()))
        throw BadIndex("pair_signature: need 1 <= j < j2 <= d");
    std::vector<int> live;
    for (int l = 1; l <= sig.patterns(); ++l) {
        bool alive = false;
        for (int k = sig.k_min(); k <= sig.k_max() && !alive; ++k)
            alive = sig.at(l, k, j) > 0.0 || sig.at(l, k, j2) > 0.0;
        if (alive) live.push_back(l);
    }
    SignatureArray out(2, static_cast<int>(live.size()), sig.k_min(), sig.k_max());
    for (std::size_t i = 0; i < live.size(); ++i) {
        for (int k = sig.k_min(); k <= sig.k_max(); ++k) {
            out.at(static_cast<int>(i) + 1, k, 1) = sig.at(live[i], k, j);
            out.at(static_cast<int>(i) + 1, k, 2) = sig.at(live[i], k, j2);
        }
    }
    return out;
}

}  // namespace m5x
