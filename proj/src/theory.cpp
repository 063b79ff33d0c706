#include "m5x/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "m5x/numerics.hpp"

namespace m5x {

M5Model pair_model(const M5Model& m, int j, int j2) {
    return M5Model(pair_signature(m.sig, j, j2), m.cstar.margin(j, j2));
}

void require_tau(const M5Model& m, std::span<const double> tau) {
    if (tau.size() != static_cast<std::size_t>(m.dim()))
        throw DimensionMismatch("tau: expected length " + std::to_string(m.dim()));
    for (double t : tau)
        if (!(t > 0.0) || !std::isfinite(t))
            throw ValidationError("tau entries must be strictly positive and finite");
}

namespace {

void require_point(const M5Model& m, std::span<const double> u) {
    if (u.size() != static_cast<std::size_t>(m.dim()))
        throw DimensionMismatch("u: expected length " + std::to_string(m.dim()));
    for (double v : u)
        if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("u entries must lie in [0,1]");
}

// log Chat(e^{-tau_1}, ..., e^{-tau_d}) = sum_{l,k} log C*(e^{-alpha tau});
// equals log gamma_hat(tau). Accepts zero coordinates.
double log_gamma_hat(const M5Model& m, std::span<const double> tau) {
    const auto& sig = m.sig;
    std::vector<double> a(static_cast<std::size_t>(sig.dim()));
    KahanSum s;
    for (int l = 1; l <= sig.patterns(); ++l) {
        for (int k = sig.k_min(); k <= sig.k_max(); ++k) {
            for (int j = 1; j <= sig.dim(); ++j)
                a[static_cast<std::size_t>(j - 1)] = sig.at(l, k, j) * tau[static_cast<std::size_t>(j - 1)];
            s.add(m.cstar.log_value_at_exp(a));
        }
    }
    return s.value();
}

// log gamma(tau) = sum_l log C*(e^{-max_k alpha tau}). Accepts zero coordinates.
double log_gamma(const M5Model& m, std::span<const double> tau) {
    const auto& sig = m.sig;
    std::vector<double> a(static_cast<std::size_t>(sig.dim()));
    KahanSum s;
    for (int l = 1; l <= sig.patterns(); ++l) {
        for (int j = 1; j <= sig.dim(); ++j) {
            double mx = 0.0;
            for (int k = sig.k_min(); k <= sig.k_max(); ++k) mx = std::max(mx, sig.at(l, k, j));
            a[static_cast<std::size_t>(j - 1)] = mx * tau[static_cast<std::size_t>(j - 1)];
        }
        s.add(m.cstar.log_value_at_exp(a));
    }
    return s.value();
}

// theta(tau) for tau >= 0 with at least one positive coordinate.
double theta_nonneg(const M5Model& m, std::span<const double> tau) {
    const double den = log_gamma_hat(m, tau);
    if (den >= -1e-300)
        throw InternalError("extremal index: degenerate denominator (model carries no mass)");
    const double num = log_gamma(m, tau);
    const double theta = num / den;
    if (!(theta > 0.0) || theta > 1.0 + 1e-12)
        throw InternalError("extremal index " + std::to_string(theta) + " escaped (0,1]");
    return theta;
}

}  // namespace

double copula_y(const M5Model& m, std::span<const double> u) {
    require_point(m, u);
    for (double v : u)
        if (v == 0.0) return 0.0;
    const auto& sig = m.sig;
    std::vector<double> v(static_cast<std::size_t>(sig.dim()));
    KahanSum s;
    for (int l = 1; l <= sig.patterns(); ++l) {
        for (int k = sig.k_min(); k <= sig.k_max(); ++k) {
            for (int j = 1; j <= sig.dim(); ++j)
                v[static_cast<std::size_t>(j - 1)] =
                    std::pow(u[static_cast<std::size_t>(j - 1)], sig.at(l, k, j));
            s.add(std::log(m.cstar.evaluate(v)));
        }
    }
    return std::exp(s.value());
}

double copula_hat(const M5Model& m, std::span<const double> u) {
    require_point(m, u);
    for (double v : u)
        if (v == 0.0) return 0.0;
    std::vector<double> t(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) t[j] = -std::log(u[j]);
    return std::exp(log_gamma_hat(m, t));
}

double limit_block_maxima(const M5Model& m, std::span<const double> tau) {
    require_tau(m, tau);
    return std::exp(log_gamma(m, tau));
}

double gamma_hat(const M5Model& m, std::span<const double> tau) {
    require_tau(m, tau);
    return std::exp(log_gamma_hat(m, tau));
}

double extremal_index(const M5Model& m, std::span<const double> tau) {
    require_tau(m, tau);
    return theta_nonneg(m, tau);
}

double marginal_extremal_index(const M5Model& m, int j) {
    return column_max_sum(m.sig, j);
}

double copula_limit(const M5Model& m, std::span<const double> u) {
    require_point(m, u);
    bool all_one = true;
    for (double v : u) {
        if (v == 0.0) return 0.0;
        all_one = all_one && v == 1.0;
    }
    if (all_one) return 1.0;
    // C(u) = Chat(e^{-s})^{theta(s)} with s_j = -log(u_j)/theta_j.
    std::vector<double> s(u.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        s[j] = -std::log(u[j]) / column_max_sum(m.sig, static_cast<int>(j) + 1);
    return std::exp(theta_nonneg(m, s) * log_gamma_hat(m, s));
}

namespace {

void require_pair(const M5Model& m, int j, int j2) {
    if (!(1 <= j && j < j2 && j2 <= m.dim()))
        throw BadIndex("pair (j, j2): need 1 <= j < j2 <= d");
}

// sum_{l,k} log C*_{j,j2}(e^{-alpha_j tau_j}, e^{-alpha_j2 tau_j2})
double pair_log_sum(const M5Model& m, int j, int j2, double tau_j, double tau_j2) {
    const Copula margin = m.cstar.margin(j, j2);
    const auto& sig = m.sig;
    KahanSum s;
    double a[2];
    for (int l = 1; l <= sig.patterns(); ++l) {
        for (int k = sig.k_min(); k <= sig.k_max(); ++k) {
            a[0] = sig.at(l, k, j) * tau_j;
            a[1] = sig.at(l, k, j2) * tau_j2;
            s.add(margin.log_value_at_exp(a));
        }
    }
    return s.value();
}

// Chat_{j,j2}(u, v): the bivariate margin of Chat, evaluated on the full
// model with every other coordinate pinned at 1.
double copula_hat_pair(const M5Model& m, int j, int j2, double u, double v) {
    std::vector<double> point(static_cast<std::size_t>(m.dim()), 1.0);
    point[static_cast<std::size_t>(j - 1)] = u;
    point[static_cast<std::size_t>(j2 - 1)] = v;
    return copula_hat(m, point);
}

}  // namespace

double tail_dependence_hat(const M5Model& m, int j, int j2) {
    require_pair(m, j, j2);
    return 2.0 + pair_log_sum(m, j, j2, 1.0, 1.0);
}

double tail_dependence_c(const M5Model& m, int j, int j2) {
    require_pair(m, j, j2);
    const double th_j = column_max_sum(m.sig, j);
    const double th_j2 = column_max_sum(m.sig, j2);
    const double tau[2] = {1.0 / th_j, 1.0 / th_j2};
    const double theta_pair = extremal_index(pair_model(m, j, j2), tau);
    return 2.0 + theta_pair * pair_log_sum(m, j, j2, 1.0 / th_j, 1.0 / th_j2);
}

std::array<IdentityPair, 2> tail_dependence_relation(const M5Model& m, int j, int j2) {
    require_pair(m, j, j2);
    const double th_j = column_max_sum(m.sig, j);
    const double th_j2 = column_max_sum(m.sig, j2);
    const double tau[2] = {1.0 / th_j, 1.0 / th_j2};
    const double theta_pair = extremal_index(pair_model(m, j, j2), tau);

    const double lam_c = tail_dependence_c(m, j, j2);
    const double lam_hat = tail_dependence_hat(m, j, j2);

    const double rhs_a =
        2.0 + theta_pair * std::log(copula_hat_pair(m, j, j2, std::exp(-1.0 / th_j),
                                                    std::exp(-1.0 / th_j2)));
    const double rhs_b =
        lam_hat + std::log(copula_hat_pair(m, j, j2, std::exp(-theta_pair / th_j),
                                           std::exp(-theta_pair / th_j2)) /
                           copula_hat_pair(m, j, j2, std::exp(-1.0), std::exp(-1.0)));

    return {IdentityPair{lam_c, rhs_a}, IdentityPair{lam_c, rhs_b}};
}

double extremal_coefficient(const M5Model& m, ExtremalCoefficient which) {
    std::vector<double> s(static_cast<std::size_t>(m.dim()), 1.0);
    if (which == ExtremalCoefficient::hat) return -log_gamma_hat(m, s);
    for (int j = 1; j <= m.dim(); ++j)
        s[static_cast<std::size_t>(j - 1)] = 1.0 / column_max_sum(m.sig, j);
    return -theta_nonneg(m, s) * log_gamma_hat(m, s);
}

std::vector<double> converge_to_attractor(const Copula& c, std::span<const double> u,
                                          std::span<const int> n_list) {
    std::vector<double> t(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (!(u[j] > 0.0 && u[j] < 1.0))
            throw ValidationError("converge_to_attractor: u must lie in (0,1)^d");
        t[j] = -std::log(u[j]);
    }
    const double target = std::exp(c.log_value_at_exp(t));
    std::vector<double> dev;
    dev.reserve(n_list.size());
    std::vector<double> tn(t.size());
    for (int n : n_list) {
        for (std::size_t j = 0; j < t.size(); ++j) tn[j] = t[j] / n;
        dev.push_back(std::abs(std::exp(n * c.log_value_at_exp(tn)) - target));
    }
    return dev;
}

TheorySummary summarize(const M5Model& m, std::span<const double> tau) {
    require_tau(m, tau);
    TheorySummary out;
    out.d = m.dim();
    out.tau.assign(tau.begin(), tau.end());
    out.theta_tau = extremal_index(m, tau);
    out.theta_j.resize(static_cast<std::size_t>(m.dim()));
    for (int j = 1; j <= m.dim(); ++j)
        out.theta_j[static_cast<std::size_t>(j - 1)] = marginal_extremal_index(m, j);
    out.lambda_hat.assign(static_cast<std::size_t>(m.dim()) * m.dim(), 1.0);
    out.lambda_c = out.lambda_hat;
    for (int j = 1; j <= m.dim(); ++j) {
        for (int j2 = j + 1; j2 <= m.dim(); ++j2) {
            const auto idx = [&](int a, int b) {
                return static_cast<std::size_t>(a - 1) * m.dim() + (b - 1);
            };
            const double lh = tail_dependence_hat(m, j, j2);
            const double lc = tail_dependence_c(m, j, j2);
            out.lambda_hat[idx(j, j2)] = out.lambda_hat[idx(j2, j)] = lh;
            out.lambda_c[idx(j, j2)] = out.lambda_c[idx(j2, j)] = lc;
        }
    }
    out.eps_hat = extremal_coefficient(m, ExtremalCoefficient::hat);
    out.eps_c = extremal_coefficient(m, ExtremalCoefficient::limiting);
    out.gamma_hat_value = gamma_hat(m, tau);
    out.gamma_value = limit_block_maxima(m, tau);
    return out;
}

namespace closed_form {

namespace {
double col_theta(const SignatureArray& sig, int j) { return column_max_sum(sig, j); }
}  // namespace

double limit_min(const SignatureArray& sig, std::span<const double> tau) {
    KahanSum s;
    for (int l = 1; l <= sig.patterns(); ++l) {
        double mx = 0.0;
        for (int k = sig.k_min(); k <= sig.k_max(); ++k)
            for (int j = 1; j <= sig.dim(); ++j)
                mx = std::max(mx, sig.at(l, k, j) * tau[static_cast<std::size_t>(j - 1)]);
        s.add(mx);
    }
    return std::exp(-s.value());
}

double theta_min(const SignatureArray& sig, std::span<const double> tau) {
    KahanSum num, den;
    for (int l = 1; l <= sig.patterns(); ++l) {
        double pattern_max = 0.0;
        for (int k = sig.k_min(); k <= sig.k_max(); ++k) {
            double point_max = 0.0;
            for (int j = 1; j <= sig.dim(); ++j)
                point_max = std::max(point_max, sig.at(l, k, j) * tau[static_cast<std::size_t>(j - 1)]);
            den.add(point_max);
            pattern_max = std::max(pattern_max, point_max);
        }
        num.add(pattern_max);
    }
    return num.value() / den.value();
}

double lambda_hat_min(const SignatureArray& sig, int j, int j2) {
    KahanSum s;
    for (int l = 1; l <= sig.patterns(); ++l)
        for (int k = sig.k_min(); k <= sig.k_max(); ++k)
            s.add(std::max(sig.at(l, k, j), sig.at(l, k, j2)));
    return 2.0 - s.value();
}

double lambda_c_min(const SignatureArray& sig, int j, int j2) {
    const double th_j = col_theta(sig, j);
    const double th_j2 = col_theta(sig, j2);
    KahanSum s;
    for (int l = 1; l <= sig.patterns(); ++l) {
        double m1 = 0.0, m2 = 0.0;
        for (int k = sig.k_min(); k <= sig.k_max(); ++k) {
            m1 = std::max(m1, sig.at(l, k, j));
            m2 = std::max(m2, sig.at(l, k, j2));
        }
        s.add(std::max(m1 / th_j, m2 / th_j2));
    }
    return 2.0 - s.value();
}

double lambda_gap_min(const SignatureArray& sig, int j, int j2) {
    const double th_j = col_theta(sig, j);
    const double th_j2 = col_theta(sig, j2);
    KahanSum pointwise, per_pattern;
    for (int l = 1; l <= sig.patterns(); ++l) {
        double m1 = 0.0, m2 = 0.0;
        for (int k = sig.k_min(); k <= sig.k_max(); ++k) {
            pointwise.add(std::max(sig.at(l, k, j), sig.at(l, k, j2)));
            m1 = std::max(m1, sig.at(l, k, j));
            m2 = std::max(m2, sig.at(l, k, j2));
        }
        per_pattern.add(std::max(m1 / th_j, m2 / th_j2));
    }
    return pointwise.value() - per_pattern.value();
}

double limit_product(const SignatureArray& sig, std::span<const double> tau) {
    KahanSum s;
    for (int j = 1; j <= sig.dim(); ++j)
        s.add(col_theta(sig, j) * tau[static_cast<std::size_t>(j - 1)]);
    return std::exp(-s.value());
}

double theta_product(const SignatureArray& sig, std::span<const double> tau) {
    KahanSum num, den;
    for (int j = 1; j <= sig.dim(); ++j) {
        num.add(col_theta(sig, j) * tau[static_cast<std::size_t>(j - 1)]);
        den.add(tau[static_cast<std::size_t>(j - 1)]);
    }
    return num.value() / den.value();
}

double theta_logistic(const SignatureArray& sig, std::span<const double> tau, double alpha) {
    KahanSum num, den;
    for (int l = 1; l <= sig.patterns(); ++l) {
        double num_inner = 0.0;
        for (int j = 1; j <= sig.dim(); ++j) {
            double m = 0.0;
            for (int k = sig.k_min(); k <= sig.k_max(); ++k) m = std::max(m, sig.at(l, k, j));
            num_inner += std::pow(m * tau[static_cast<std::size_t>(j - 1)], alpha);
        }
        num.add(std::pow(num_inner, 1.0 / alpha));
        for (int k = sig.k_min(); k <= sig.k_max(); ++k) {
            double den_inner = 0.0;
            for (int j = 1; j <= sig.dim(); ++j)
                den_inner += std::pow(sig.at(l, k, j) * tau[static_cast<std::size_t>(j - 1)], alpha);
            den.add(std::pow(den_inner, 1.0 / alpha));
        }
    }
    return num.value() / den.value();
}

}  // namespace closed_form

}  // namespace m5x
