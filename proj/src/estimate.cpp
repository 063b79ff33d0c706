#include "m5x/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "m5x/numerics.hpp"

namespace m5x {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double z_score(double empirical, double theoretical, double se) {
    if (se > 0.0) return (empirical - theoretical) / se;
    if (empirical == theoretical) return 0.0;
    return std::numeric_limits<double>::infinity();
}

std::string fmt_tau(std::span<const double> tau) {
    std::string s = "tau=(";
    char buf[48];
    for (std::size_t i = 0; i < tau.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%g", tau[i]);
        if (i) s += ',';
        s += buf;
    }
    return s + ")";
}

}  // namespace

Estimate empirical_limit_prob(std::span<const BlockMaxima> maxima, std::int64_t n,
                              std::span<const double> tau, MaximaKind which) {
    if (maxima.size() < 100) throw EmptyInput("empirical_limit_prob: need at least 100 replications");
    const std::size_t d = tau.size();
    std::vector<double> thr(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (!(tau[j] > 0.0)) throw ValidationError("empirical_limit_prob: tau must be positive");
        thr[j] = static_cast<double>(n) / tau[j];
    }
    std::int64_t hits = 0;
    for (const auto& bm : maxima) {
        const auto& m = which == MaximaKind::dep ? bm.m_dep : bm.m_iid;
        if (m.size() != d) throw DimensionMismatch("empirical_limit_prob: maxima/tau length mismatch");
        bool all = true;
        for (std::size_t j = 0; j < d && all; ++j) all = m[j] <= thr[j];
        hits += all;
    }
    const double reps = static_cast<double>(maxima.size());
    const double p = static_cast<double>(hits) / reps;
    return {p, std::sqrt(p * (1.0 - p) / reps)};
}

Estimate empirical_extremal_index(std::span<const BlockMaxima> maxima, std::int64_t n,
                                  std::span<const double> tau) {
    const Estimate pd = empirical_limit_prob(maxima, n, tau, MaximaKind::dep);
    const Estimate pi = empirical_limit_prob(maxima, n, tau, MaximaKind::iid);
    if (!(pd.value > 0.0 && pd.value < 1.0 && pi.value > 0.0 && pi.value < 1.0))
        throw DegenerateProb("empirical_extremal_index: a limit probability hit 0 or 1; "
                             "resize n, reps or tau");
    const double log_pd = std::log(pd.value);
    const double log_pi = std::log(pi.value);
    const double theta = log_pd / log_pi;
    // var(theta) ~ (d theta/d p_d)^2 var(p_d) + (d theta/d p_i)^2 var(p_i)
    const double g_d = 1.0 / (pd.value * log_pi);
    const double g_i = -log_pd / (pi.value * log_pi * log_pi);
    const double se = std::sqrt(sqr(g_d * pd.se) + sqr(g_i * pi.se));
    return {theta, se};
}

std::vector<TailLevelEstimate> empirical_tail_dependence(const SampleMatrix& samples, int j,
                                                         int j2,
                                                         std::span<const double> u_levels,
                                                         std::uint64_t seed, int bootstrap_reps) {
    if (!(1 <= j && j < j2 && j2 <= samples.d))
        throw BadIndex("empirical_tail_dependence: need 1 <= j < j2 <= d");
    const std::int64_t n = samples.rows;
    if (n < 2) throw EmptyInput("empirical_tail_dependence: too few samples");
    for (double u : u_levels)
        if (!(u > 0.0 && u < 1.0))
            throw ValidationError("empirical_tail_dependence: levels must lie in (0,1)");

    // Ranks 1..n per column; ties broken by row index (the data are
    // continuous draws, so real ties do not occur).
    const auto ranks_of = [&](int col) {
        std::vector<std::int32_t> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
            const double va = samples.at(a, col), vb = samples.at(b, col);
            return va != vb ? va < vb : a < b;
        });
        std::vector<std::int32_t> rank(static_cast<std::size_t>(n));
        for (std::int64_t pos = 0; pos < n; ++pos)
            rank[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] =
                static_cast<std::int32_t>(pos + 1);
        return rank;
    };
    const std::vector<std::int32_t> r1 = ranks_of(j);
    const std::vector<std::int32_t> r2 = ranks_of(j2);

    // Cemp(u,u) = #{max(r1,r2) <= u n} / n; joint exceedances use min(r1,r2).
    std::vector<std::int64_t> cum_max(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::int64_t> cum_min(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t i = 0; i < n; ++i) {
        ++cum_max[static_cast<std::size_t>(std::max(r1[static_cast<std::size_t>(i)],
                                                    r2[static_cast<std::size_t>(i)]))];
        ++cum_min[static_cast<std::size_t>(std::min(r1[static_cast<std::size_t>(i)],
                                                    r2[static_cast<std::size_t>(i)]))];
    }
    for (std::size_t v = 1; v <= static_cast<std::size_t>(n); ++v) {
        cum_max[v] += cum_max[v - 1];
        cum_min[v] += cum_min[v - 1];
    }

    std::vector<TailLevelEstimate> out;
    out.reserve(u_levels.size());
    std::vector<std::size_t> kept;
    for (std::size_t li = 0; li < u_levels.size(); ++li) {
        const double u = u_levels[li];
        const auto cut = static_cast<std::size_t>(std::floor(u * static_cast<double>(n)));
        TailLevelEstimate e;
        e.u = u;
        e.joint_exceedances = n - cum_min[cut];
        const double c_emp = static_cast<double>(cum_max[cut]) / static_cast<double>(n);
        e.value = c_emp > 0.0 ? 2.0 - std::log(c_emp) / std::log(u) : kNan;
        // fewer than 50 joint exceedances: the level is reported but flagged,
        // and verify() turns it into a warning record instead of a z test
        e.enough_tail = e.joint_exceedances >= 50 && c_emp > 0.0;
        out.push_back(e);
        if (c_emp > 0.0) kept.push_back(li);
    }
    if (kept.empty() || bootstrap_reps <= 0) return out;

    // Nonparametric bootstrap over rows. Each resample recomputes both
    // marginal ECDFs by counting over ranks, O(n) per replicate.
    std::vector<std::int32_t> c1(static_cast<std::size_t>(n) + 1);
    std::vector<std::int32_t> c2(static_cast<std::size_t>(n) + 1);
    std::vector<std::int64_t> hist(static_cast<std::size_t>(n) + 1);
    std::vector<std::int32_t> picks(static_cast<std::size_t>(n));
    std::vector<std::vector<double>> boot_values(u_levels.size());
    for (std::size_t li : kept) boot_values[li].reserve(static_cast<std::size_t>(bootstrap_reps));

    for (int b = 0; b < bootstrap_reps; ++b) {
        RngStream rng(seed, stream_id::bootstrap(static_cast<std::uint64_t>(b)));
        std::fill(c1.begin(), c1.end(), 0);
        std::fill(c2.begin(), c2.end(), 0);
        for (auto& p : picks) {
            p = static_cast<std::int32_t>(rng.next_u64() % static_cast<std::uint64_t>(n));
            ++c1[static_cast<std::size_t>(r1[static_cast<std::size_t>(p)])];
            ++c2[static_cast<std::size_t>(r2[static_cast<std::size_t>(p)])];
        }
        for (std::size_t v = 1; v <= static_cast<std::size_t>(n); ++v) {
            c1[v] += c1[v - 1];
            c2[v] += c2[v - 1];
        }
        std::fill(hist.begin(), hist.end(), 0);
        for (auto p : picks) {
            const std::int32_t m = std::max(c1[static_cast<std::size_t>(r1[static_cast<std::size_t>(p)])],
                                            c2[static_cast<std::size_t>(r2[static_cast<std::size_t>(p)])]);
            ++hist[static_cast<std::size_t>(m)];
        }
        for (std::size_t v = 1; v <= static_cast<std::size_t>(n); ++v) hist[v] += hist[v - 1];
        for (std::size_t li : kept) {
            const auto cut =
                static_cast<std::size_t>(std::floor(u_levels[li] * static_cast<double>(n)));
            const double c_emp =
                std::max<std::int64_t>(hist[cut], 1) / static_cast<double>(n);
            boot_values[li].push_back(2.0 - std::log(c_emp) / std::log(u_levels[li]));
        }
    }
    for (std::size_t li : kept) {
        const auto& v = boot_values[li];
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v) ss += sqr(x - mean);
        out[li].se = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return out;
}

double VerifyReport::max_abs_z() const {
    double m = 0.0;
    for (const auto& r : records) m = std::max(m, std::abs(r.z));
    return m;
}

bool VerifyReport::passed(double z_gate) const {
    for (const auto& r : records)
        if (!(std::abs(r.z) <= z_gate)) return false;
    return true;
}

VerifyReport verify(const SimConfig& cfg, std::span<const std::vector<double>> tau_list,
                    std::span<const double> u_levels, const VerifyOptions& opts) {
    const M5Model& m = cfg.model;
    VerifyReport report;
    const auto add = [&](std::string quantity, std::string context, double theoretical,
                         Estimate e) {
        report.records.push_back({std::move(quantity), std::move(context), theoretical, e.value,
                                  e.se, z_score(e.value, theoretical, e.se)});
    };

    const std::vector<BlockMaxima> maxima = block_maxima(cfg, opts.threads);
    for (const auto& tau : tau_list) {
        require_tau(m, tau);
        const std::string ctx = fmt_tau(tau);
        add("prob_dep", ctx, limit_block_maxima(m, tau),
            empirical_limit_prob(maxima, cfg.n, tau, MaximaKind::dep));
        add("prob_iid", ctx, gamma_hat(m, tau),
            empirical_limit_prob(maxima, cfg.n, tau, MaximaKind::iid));
        add("theta", ctx, extremal_index(m, tau), empirical_extremal_index(maxima, cfg.n, tau));
    }
    for (int j = 1; j <= m.dim(); ++j) {
        std::vector<double> tau(static_cast<std::size_t>(m.dim()), opts.tiny_tau);
        tau[static_cast<std::size_t>(j - 1)] = 1.0;
        add("theta_marginal", "j=" + std::to_string(j), marginal_extremal_index(m, j),
            empirical_extremal_index(maxima, cfg.n, tau));
    }

    if (!u_levels.empty() && m.dim() >= 2 && opts.fy_draws > 0) {
        const SampleMatrix samples = sample_fy(m, opts.fy_draws, cfg.seed, opts.threads);
        for (int j = 1; j <= m.dim(); ++j) {
            for (int j2 = j + 1; j2 <= m.dim(); ++j2) {
                const double lam = tail_dependence_hat(m, j, j2);
                const auto levels = empirical_tail_dependence(samples, j, j2, u_levels, cfg.seed,
                                                              opts.bootstrap_reps);
                for (const auto& e : levels) {
                    char ctx[96];
                    std::snprintf(ctx, sizeof ctx, "j=%d,j2=%d,u=%g", j, j2, e.u);
                    if (e.enough_tail) {
                        add("lambda_hat", ctx, lam, Estimate{e.value, e.se});
                    } else {
                        report.records.push_back(
                            {"lambda_hat_skipped", ctx, lam, kNan, 0.0, 0.0});
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace m5x
