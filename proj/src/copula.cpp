#include "m5x/copula.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "m5x/numerics.hpp"

namespace m5x {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dim(int d, std::size_t got, const char* who) {
    if (static_cast<std::size_t>(d) != got)
        throw DimensionMismatch(std::string(who) + ": expected dimension " + std::to_string(d) +
                                ", got " + std::to_string(got));
}

}  // namespace

const char* to_string(CopulaKind kind) {
    switch (kind) {
        case CopulaKind::independence: return "independence";
        case CopulaKind::comonotone: return "comonotone";
        case CopulaKind::logistic: return "logistic";
    }
    return "?";
}

double Copula::log_value_at_exp(std::span<const double> t) const {
    require_dim(d_, t.size(), "copula");
    for (double v : t)
        if (v == kInf) return -kInf;  // some u_j = 0: grounded at 0

    switch (kind_) {
        case CopulaKind::independence: {
            KahanSum s;
            for (double v : t) s.add(v);
            return -s.value();
        }
        case CopulaKind::comonotone: {
            double m = 0.0;
            for (double v : t) m = std::max(m, v);
            return -m;
        }
        case CopulaKind::logistic: {
            // (sum t_j^a)^(1/a), factored by the max so that large dependence
            // parameters cannot overflow the powers.
            double m = 0.0;
            for (double v : t) m = std::max(m, v);
            if (m == 0.0) return 0.0;
            double s = 0.0;
            for (double v : t) s += std::pow(v / m, alpha_);
            return -m * std::pow(s, 1.0 / alpha_);
        }
    }
    throw InternalError("unreachable copula kind");
}

double Copula::evaluate(std::span<const double> u) const {
    require_dim(d_, u.size(), "copula");
    std::vector<double> t(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (!(u[j] >= 0.0 && u[j] <= 1.0)) throw ValidationError("copula argument outside [0,1]");
        t[j] = -std::log(u[j]);
    }
    return std::exp(log_value_at_exp(t));
}

Copula Copula::margin(int j, int j2) const {
    if (!(1 <= j && j < j2 && j2 <= d_)) throw BadIndex("copula margin: need 1 <= j < j2 <= d");
    return Copula(kind_, 2, alpha_);
}

void Copula::sample_frechet(RngStream& rng, std::span<double> out) const {
    require_dim(d_, out.size(), "sample");
    switch (kind_) {
        case CopulaKind::comonotone: {
            const double z = -1.0 / std::log(rng.uniform01());
            std::ranges::fill(out, z);
            return;
        }
        case CopulaKind::independence: {
            for (auto& z : out) z = -1.0 / std::log(rng.uniform01());
            return;
        }
        case CopulaKind::logistic: {
            if (alpha_ == 1.0) {
                for (auto& z : out) z = -1.0 / std::log(rng.uniform01());
                return;
            }
            // Marshall-Olkin mixture: S positive stable with Laplace transform
            // exp(-t^a), a = 1/alpha, simulated by the Kanter representation;
            // then z_j = (S/E_j)^a has standard Frechet margins and the
            // logistic copula with parameter alpha.
            const double a = 1.0 / alpha_;
            const double theta = std::numbers::pi * rng.uniform01();
            const double w = rng.exponential();
            const double log_s = std::log(std::sin(a * theta)) +
                                 (1.0 - a) / a * std::log(std::sin((1.0 - a) * theta)) -
                                 std::log(std::sin(theta)) / a - (1.0 - a) / a * std::log(w);
            for (auto& z : out) z = std::exp(a * (log_s - std::log(rng.exponential())));
            return;
        }
    }
    throw InternalError("unreachable copula kind");
}

MaxStabilityCheck check_max_stable(const Copula& c, int n,
                                   std::span<const std::vector<double>> grid) {
    MaxStabilityCheck res{true, 0.0};
    std::vector<double> t(static_cast<std::size_t>(c.dim()));
    std::vector<double> tn(t.size());
    for (const auto& u : grid) {
        require_dim(c.dim(), u.size(), "max-stability grid");
        for (std::size_t j = 0; j < t.size(); ++j) {
            t[j] = -std::log(u[j]);
            tn[j] = t[j] / n;
        }
        const double lhs = std::exp(n * c.log_value_at_exp(tn));
        const double rhs = std::exp(c.log_value_at_exp(t));
        res.max_deviation = std::max(res.max_deviation, std::abs(lhs - rhs));
    }
    res.ok = res.max_deviation <= 1e-10;
    return res;
}

PlodCheck check_plod(const Copula& c, std::span<const std::vector<double>> grid) {
    PlodCheck res{true, 0.0, {}};
    for (const auto& u : grid) {
        double prod = 1.0;
        for (double v : u) prod *= v;
        const double gap = prod - c.evaluate(u);
        if (gap > res.worst_violation) {
            res.worst_violation = gap;
            res.worst_point = u;
        }
    }
    res.ok = res.worst_violation <= 1e-12;
    return res;
}

std::vector<std::vector<double>> random_grid(int d, int count, RngStream& rng, double lo,
                                             double hi) {
    std::vector<std::vector<double>> grid(static_cast<std::size_t>(count));
    for (auto& u : grid) {
        u.resize(static_cast<std::size_t>(d));
        for (auto& v : u) v = lo + (hi - lo) * rng.uniform01();
    }
    return grid;
}

}  // namespace m5x
