#include "m5x/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace m5x {

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

// Runs fn(i) for i in [0, count) across the given number of threads.
// Work is claimed through an atomic counter; every unit writes only into its
// own output slot, so the merge is order-independent.
template <typename Fn>
void parallel_for(std::int64_t count, int threads, Fn&& fn) {
    threads = std::min<std::int64_t>(resolve_threads(threads), count);
    if (threads <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::int64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

InnovationArray gen_innovations(const M5Model& m, std::int64_t n, RngStream& rng) {
    const auto& sig = m.sig;
    InnovationArray innov;
    innov.patterns = sig.patterns();
    innov.d = sig.dim();
    innov.t_min = 1 - sig.k_max();
    innov.count = n + sig.k_max() - sig.k_min();
    innov.z.resize(static_cast<std::size_t>(innov.patterns) * innov.count * innov.d);
    std::span<double> all(innov.z);
    for (std::size_t cell = 0; cell < innov.z.size() / innov.d; ++cell)
        m.cstar.sample_frechet(rng, all.subspan(cell * innov.d, static_cast<std::size_t>(innov.d)));
    return innov;
}

ProcessPath build_path(const M5Model& m, const InnovationArray& innov, std::int64_t n) {
    const auto& sig = m.sig;
    if (innov.patterns != sig.patterns() || innov.d != sig.dim())
        throw DimensionMismatch("build_path: innovation array does not match the model");
    if (innov.t_min > 1 - sig.k_max() || innov.t_max() < n - sig.k_min())
        throw IndexCoverage("build_path: innovations must cover times [1-k_max, n-k_min]");
    ProcessPath path;
    path.n = n;
    path.d = sig.dim();
    path.y.assign(static_cast<std::size_t>(n) * sig.dim(), 0.0);
    for (std::int64_t t = 1; t <= n; ++t) {
        for (int l = 1; l <= sig.patterns(); ++l) {
            for (int k = sig.k_min(); k <= sig.k_max(); ++k) {
                for (int j = 1; j <= sig.dim(); ++j) {
                    const double v = sig.at(l, k, j) * innov.at(l, t - k, j);
                    double& y = path.y[static_cast<std::size_t>(t - 1) * sig.dim() +
                                       static_cast<std::size_t>(j - 1)];
                    y = std::max(y, v);
                }
            }
        }
    }
    return path;
}

void draw_from_fy(const M5Model& m, RngStream& rng, std::span<double> out) {
    const auto& sig = m.sig;
    if (out.size() != static_cast<std::size_t>(sig.dim()))
        throw DimensionMismatch("draw_from_fy: output span of wrong length");
    std::ranges::fill(out, 0.0);
    std::vector<double> z(static_cast<std::size_t>(sig.dim()));
    for (int l = 1; l <= sig.patterns(); ++l) {
        for (int k = sig.k_min(); k <= sig.k_max(); ++k) {
            m.cstar.sample_frechet(rng, z);
            for (int j = 1; j <= sig.dim(); ++j) {
                const std::size_t jj = static_cast<std::size_t>(j - 1);
                out[jj] = std::max(out[jj], sig.at(l, k, j) * z[jj]);
            }
        }
    }
}

std::vector<BlockMaxima> block_maxima(const SimConfig& cfg, int threads) {
    if (cfg.n < 1 || cfg.reps < 1) throw ValidationError("block_maxima: need n >= 1 and reps >= 1");
    const int d = cfg.model.dim();
    std::vector<BlockMaxima> out(static_cast<std::size_t>(cfg.reps));
    parallel_for(cfg.reps, threads, [&](std::int64_t rep) {
        BlockMaxima& bm = out[static_cast<std::size_t>(rep)];
        bm.m_dep.assign(static_cast<std::size_t>(d), 0.0);
        bm.m_iid.assign(static_cast<std::size_t>(d), 0.0);

        RngStream dep_rng(cfg.seed, stream_id::dep_path(static_cast<std::uint64_t>(rep)));
        const InnovationArray innov = gen_innovations(cfg.model, cfg.n, dep_rng);
        const ProcessPath path = build_path(cfg.model, innov, cfg.n);
        for (std::int64_t t = 1; t <= cfg.n; ++t)
            for (int j = 1; j <= d; ++j) {
                double& mx = bm.m_dep[static_cast<std::size_t>(j - 1)];
                mx = std::max(mx, path.at(t, j));
            }

        RngStream iid_rng(cfg.seed, stream_id::iid_draws(static_cast<std::uint64_t>(rep)));
        std::vector<double> y(static_cast<std::size_t>(d));
        for (std::int64_t t = 0; t < cfg.n; ++t) {
            draw_from_fy(cfg.model, iid_rng, y);
            for (int j = 1; j <= d; ++j) {
                double& mx = bm.m_iid[static_cast<std::size_t>(j - 1)];
                mx = std::max(mx, y[static_cast<std::size_t>(j - 1)]);
            }
        }
    });
    return out;
}

SampleMatrix sample_fy(const M5Model& m, std::int64_t count, std::uint64_t seed, int threads) {
    SampleMatrix s;
    s.rows = count;
    s.d = m.dim();
    s.data.resize(static_cast<std::size_t>(count) * m.dim());
    std::span<double> all(s.data);
    parallel_for(count, threads, [&](std::int64_t i) {
        RngStream rng(seed, stream_id::fy_draw(static_cast<std::uint64_t>(i)));
        draw_from_fy(m, rng,
                     all.subspan(static_cast<std::size_t>(i) * m.dim(),
                                 static_cast<std::size_t>(m.dim())));
    });
    return s;
}

}  // namespace m5x
