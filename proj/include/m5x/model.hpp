#pragma once

#include <span>
#include <utility>

#include "m5x/copula.hpp"
#include "m5x/signature.hpp"

namespace m5x {

// A moving-maxima model: Y_{n,j} = max_{l,k} alpha[l][k][j] * Z_{l,n-k,j},
// where the innovation vectors Z have standard Frechet margins and copula
// cstar. The innovation copula is restricted to max-stable families, so it
// is its own attractor and every limit law below is exact.
struct M5Model {
    SignatureArray sig;
    Copula cstar;

    M5Model(SignatureArray s, Copula c) : sig(std::move(s)), cstar(std::move(c)) {
        if (sig.dim() != cstar.dim())
            throw DimensionMismatch("model: signature dimension " + std::to_string(sig.dim()) +
                                    " != copula dimension " + std::to_string(cstar.dim()));
        validate(sig);
    }

    int dim() const { return sig.dim(); }
};

// Sub-model for the component pair (j, j2): two-column signature plus the
// bivariate copula margin. Its extremal index is the bivariate extremal
// index of the (j, j2) sub-process.
M5Model pair_model(const M5Model& m, int j, int j2);

// Throws unless tau has length d with strictly positive finite entries.
void require_tau(const M5Model& m, std::span<const double> tau);

}  // namespace m5x
