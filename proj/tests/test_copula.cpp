#include <doctest.h>

#include <cmath>

#include "m5x/copula.hpp"
#include "m5x/numerics.hpp"
#include "test_helpers.hpp"

using namespace m5x;

namespace {

double emp_joint_leq(const std::vector<std::vector<double>>& us, double g1, double g2) {
    std::int64_t hits = 0;
    for (const auto& u : us) hits += u[0] <= g1 && u[1] <= g2;
    return static_cast<double>(hits) / static_cast<double>(us.size());
}

// N draws mapped to uniforms through the exact Frechet margins.
std::vector<std::vector<double>> draw_uniforms(const Copula& c, int n, RngStream& rng) {
    std::vector<std::vector<double>> us(static_cast<std::size_t>(n));
    std::vector<double> z(static_cast<std::size_t>(c.dim()));
    for (auto& u : us) {
        c.sample_frechet(rng, z);
        u.resize(z.size());
        for (std::size_t j = 0; j < z.size(); ++j) u[j] = std::exp(-1.0 / z[j]);
    }
    return us;
}

}  // namespace

TEST_CASE("evaluate: closed forms") {
    const Copula como = Copula::comonotone(2);
    const double u1[2] = {0.3, 0.7};
    CHECK(como.evaluate(u1) == doctest::Approx(0.3).epsilon(1e-14));

    const Copula log1 = Copula::logistic(3, 1.0);
    const Copula ind = Copula::independence(3);
    RngStream rng(3, stream_id::test(3));
    for (const auto& u : random_grid(3, 50, rng))
        CHECK(log1.evaluate(u) == doctest::Approx(ind.evaluate(u)).epsilon(1e-14));

    const Copula log2 = Copula::logistic(2, 2.0);
    const double e1 = std::exp(-1.0);
    const double u2[2] = {e1, e1};
    CHECK(log2.evaluate(u2) == doctest::Approx(std::exp(-std::sqrt(2.0))).epsilon(1e-14));

    const double u3[3] = {0.5, 0.5, 0.5};
    CHECK_THROWS_AS(como.evaluate(u3), DimensionMismatch);
}

TEST_CASE("evaluate: uniform margins, groundedness, upper corner") {
    RngStream rng(5, stream_id::test(4));
    for (const Copula& c : {Copula::independence(3), Copula::comonotone(3),
                            Copula::logistic(3, 1.7)}) {
        for (double v : {0.05, 0.3, 0.77, 0.999}) {
            for (int j = 0; j < 3; ++j) {
                std::vector<double> u(3, 1.0);
                u[static_cast<std::size_t>(j)] = v;
                CHECK(c.evaluate(u) == doctest::Approx(v).epsilon(1e-12));
            }
        }
        std::vector<double> u(3, rng.uniform01());
        u[1] = 0.0;
        CHECK(c.evaluate(u) == 0.0);
        const std::vector<double> ones(3, 1.0);
        CHECK(c.evaluate(ones) == 1.0);
    }
}

TEST_CASE("evaluate: coordinatewise monotone") {
    RngStream rng(6, stream_id::test(5));
    for (const Copula& c : {Copula::independence(2), Copula::comonotone(2),
                            Copula::logistic(2, 2.4)}) {
        for (int rep = 0; rep < 200; ++rep) {
            std::vector<double> lo{rng.uniform01(), rng.uniform01()};
            std::vector<double> hi = lo;
            const std::size_t j = rng.next_u64() % 2;
            hi[j] = std::min(1.0, hi[j] + rng.uniform01());
            CHECK(c.evaluate(hi) >= c.evaluate(lo) - 1e-15);
        }
    }
}

TEST_CASE("logistic limits: alpha=1 is independence, large alpha approaches comonotone") {
    RngStream rng(8, stream_id::test(6));
    const Copula ind = Copula::independence(2);
    const Copula log1 = Copula::logistic(2, 1.0);
    const Copula logbig = Copula::logistic(2, 1e4);
    const Copula como = Copula::comonotone(2);
    for (const auto& u : random_grid(2, 100, rng)) {
        CHECK(log1.evaluate(u) == doctest::Approx(ind.evaluate(u)).epsilon(1e-14));
        CHECK(std::abs(logbig.evaluate(u) - como.evaluate(u)) <= 1e-3);
    }
    CHECK_THROWS_AS(Copula::logistic(2, 0.7), ValidationError);
}

TEST_CASE("margin: same family, dimension 2") {
    CHECK(Copula::independence(4).margin(1, 3).kind() == CopulaKind::independence);
    CHECK(Copula::comonotone(5).margin(2, 5).kind() == CopulaKind::comonotone);
    const Copula sub = Copula::logistic(3, 1.9).margin(1, 2);
    CHECK(sub.kind() == CopulaKind::logistic);
    CHECK(sub.dim() == 2);
    CHECK(sub.dep_alpha() == 1.9);
    CHECK_THROWS_AS(Copula::independence(3).margin(2, 2), BadIndex);
}

TEST_CASE("sampling: comonotone draws are identical across coordinates") {
    const Copula c = Copula::comonotone(4);
    RngStream rng(9, stream_id::test(7));
    for (int i = 0; i < 100; ++i) {
        const auto z = c.sample_frechet(rng);
        for (double v : z) {
            CHECK(v == z[0]);
            CHECK(v > 0.0);
            CHECK(std::isfinite(v));
        }
    }
}

TEST_CASE("sampling: independence tail factorization at the 0.9 quantile") {
    const Copula c = Copula::independence(2);
    RngStream rng(10, stream_id::test(8));
    const double q = frechet_quantile(0.9);
    const int n = 1000000;
    std::int64_t n1 = 0, n12 = 0;
    std::vector<double> z(2);
    for (int i = 0; i < n; ++i) {
        c.sample_frechet(rng, z);
        if (z[0] > q) {
            ++n1;
            n12 += z[1] > q;
        }
    }
    const double cond = static_cast<double>(n12) / static_cast<double>(n1);
    const double se = std::sqrt(0.1 * 0.9 / static_cast<double>(n1));
    CHECK(std::abs(cond - 0.1) <= 3 * se);
}

TEST_CASE("sampling: logistic empirical copula matches the closed form at (0.5, 0.5)") {
    const Copula c = Copula::logistic(2, 2.0);
    RngStream rng(11, stream_id::test(9));
    const auto us = draw_uniforms(c, 1000000, rng);
    const double target = std::exp(-std::sqrt(2.0) * std::log(2.0));
    const double emp = emp_joint_leq(us, 0.5, 0.5);
    const double se = std::sqrt(target * (1.0 - target) / static_cast<double>(us.size()));
    CHECK(std::abs(emp - target) <= 3 * se);
}

TEST_CASE("sampling: empirical copula matches evaluate on a 5x5 grid for every kind") {
    RngStream rng(12, stream_id::test(10));
    const double levels[5] = {1.0 / 6, 2.0 / 6, 3.0 / 6, 4.0 / 6, 5.0 / 6};
    for (const Copula& c : {Copula::independence(2), Copula::comonotone(2),
                            Copula::logistic(2, 1.6), Copula::logistic(2, 3.5)}) {
        const auto us = draw_uniforms(c, 100000, rng);
        for (double g1 : levels) {
            for (double g2 : levels) {
                const double u[2] = {g1, g2};
                const double target = c.evaluate(u);
                const double se =
                    std::sqrt(std::max(target * (1.0 - target), 1e-12) / static_cast<double>(us.size()));
                CHECK(std::abs(emp_joint_leq(us, g1, g2) - target) <= 4 * se);
            }
        }
    }
}

TEST_CASE("sampling: margins are standard Frechet for the logistic kind") {
    const Copula c = Copula::logistic(3, 2.5);
    RngStream rng(13, stream_id::test(11));
    const int n = 60000;
    std::vector<double> z(3);
    for (double zq : {0.5, 1.0, 2.0}) {
        std::int64_t hits = 0;
        RngStream r2 = rng;
        for (int i = 0; i < n; ++i) {
            c.sample_frechet(r2, z);
            hits += z[1] <= zq;
        }
        const double p = frechet_cdf(zq);
        const double se = std::sqrt(p * (1.0 - p) / n);
        CHECK(std::abs(static_cast<double>(hits) / n - p) <= 4 * se);
    }
}

TEST_CASE("max-stability check: all kinds pass, comonotone exactly at dyadic n") {
    RngStream rng(14, stream_id::test(12));
    const auto grid = random_grid(2, 100, rng);

    for (int n : {2, 4, 8, 64}) {
        const auto r = check_max_stable(Copula::comonotone(2), n, grid);
        CHECK(r.ok);
        CHECK(r.max_deviation == 0.0);
    }
    CHECK(check_max_stable(Copula::comonotone(2), 7, grid).max_deviation <= 1e-15);
    for (int n : {2, 10, 100})
        CHECK(check_max_stable(Copula::independence(2), n, grid).max_deviation <= 1e-15);
    const auto r = check_max_stable(Copula::logistic(2, 1.5), 7, grid);
    CHECK(r.ok);
    CHECK(r.max_deviation <= 1e-12);
}

TEST_CASE("PLOD check: product is the boundary case, the others sit above it") {
    RngStream rng(15, stream_id::test(13));
    const auto grid = random_grid(2, 1000, rng);
    const auto ind = check_plod(Copula::independence(2), grid);
    CHECK(ind.ok);
    CHECK(ind.worst_violation <= 1e-15);

    const std::vector<std::vector<double>> pt{{0.5, 0.5}};
    const auto como = check_plod(Copula::comonotone(2), pt);
    CHECK(como.ok);
    CHECK(como.worst_violation == 0.0);

    CHECK(check_plod(Copula::logistic(2, 3.0), grid).ok);
}
