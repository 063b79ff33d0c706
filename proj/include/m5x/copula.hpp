#pragma once

#include <span>
#include <vector>

#include "m5x/errors.hpp"
#include "m5x/rng.hpp"

namespace m5x {

enum class CopulaKind { independence, comonotone, logistic };

// d-variate copula used both as the innovation dependence and as the
// max-stable attractor. Three exchangeable, margin-closed families:
//
//   independence  prod_j u_j
//   comonotone    min_j u_j
//   logistic      exp(-(sum_j (-log u_j)^a)^(1/a)), a >= 1
//
// All three are max-stable and positive lower orthant dependent, so a single
// instance can serve as C_Z and as its own attractor.
class Copula {
public:
    static Copula independence(int d) { return Copula(CopulaKind::independence, d, 1.0); }
    static Copula comonotone(int d) { return Copula(CopulaKind::comonotone, d, 1.0); }
    static Copula logistic(int d, double alpha) {
        if (!(alpha >= 1.0))
            throw ValidationError("logistic copula needs dependence parameter alpha >= 1");
        return Copula(CopulaKind::logistic, d, alpha);
    }

    int dim() const { return d_; }
    CopulaKind kind() const { return kind_; }
    double dep_alpha() const { return alpha_; }
    bool max_stable() const { return true; }  // all supported kinds

    // C(u) for u in [0,1]^d.
    double evaluate(std::span<const double> u) const;

    // log C(e^{-t_1}, ..., e^{-t_d}) for t_j >= 0 (t_j may be +inf).
    // Every closed form downstream evaluates the copula at points of this
    // shape; computing the log directly avoids exp/log round trips.
    double log_value_at_exp(std::span<const double> t) const;

    // Bivariate margin for components (j, j2), 1 <= j < j2 <= d. The three
    // families are exchangeable and margin-closed, so this is the same kind
    // with d = 2.
    Copula margin(int j, int j2) const;

    // One joint draw with standard Frechet margins and this copula.
    // The logistic sampler uses the positive-stable mixture construction.
    void sample_frechet(RngStream& rng, std::span<double> out) const;
    std::vector<double> sample_frechet(RngStream& rng) const {
        std::vector<double> z(static_cast<std::size_t>(d_));
        sample_frechet(rng, z);
        return z;
    }

private:
    Copula(CopulaKind kind, int d, double alpha) : kind_(kind), d_(d), alpha_(alpha) {
        if (d < 1) throw ValidationError("copula dimension must be >= 1");
    }

    CopulaKind kind_;
    int d_;
    double alpha_;
};

const char* to_string(CopulaKind kind);

struct MaxStabilityCheck {
    bool ok;
    double max_deviation;
};

// max over the grid of |C(u_1^{1/n},...,u_d^{1/n})^n - C(u)|, compared to
// 1e-10. Grid points must lie in (0,1)^d.
MaxStabilityCheck check_max_stable(const Copula& c, int n,
                                   std::span<const std::vector<double>> grid);

struct PlodCheck {
    bool ok;
    double worst_violation;  // max over grid of prod_j u_j - C(u), floored at 0
    std::vector<double> worst_point;
};

// Positive lower orthant dependence: C(u) >= prod_j u_j - 1e-12 on the grid.
PlodCheck check_plod(const Copula& c, std::span<const std::vector<double>> grid);

// Random grid in (lo, hi)^d, handy for the checks above and for tests.
std::vector<std::vector<double>> random_grid(int d, int count, RngStream& rng, double lo = 0.02,
                                             double hi = 0.98);

}  // namespace m5x
