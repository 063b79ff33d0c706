#include <doctest.h>

#include <cmath>

#include "m5x/estimate.hpp"
#include "m5x/numerics.hpp"
#include "m5x/report.hpp"
#include "test_helpers.hpp"

using namespace m5x;

namespace {

SimConfig small_cfg(M5Model m, std::int64_t n, std::int64_t reps, std::uint64_t seed) {
    return SimConfig{n, reps, seed, std::move(m)};
}

}  // namespace

TEST_CASE("empirical_limit_prob: vanishing tau saturates the estimate at 1") {
    const auto maxima = block_maxima(small_cfg(testing::example_model_comonotone(), 50, 200, 1), 2);
    const std::vector<double> tau{1e-6, 1e-6};
    const Estimate e = empirical_limit_prob(maxima, 50, tau, MaximaKind::dep);
    CHECK(e.value == 1.0);
    CHECK(e.se == 0.0);
}

TEST_CASE("empirical_limit_prob: single-weight model agrees with theory and across kinds") {
    const M5Model m(testing::single_weight_sig(2), Copula::comonotone(2));
    const std::int64_t n = 500;
    const auto maxima = block_maxima(small_cfg(m, n, 2000, 2), 2);
    const std::vector<double> tau{1.0, 1.0};
    const Estimate dep = empirical_limit_prob(maxima, n, tau, MaximaKind::dep);
    const Estimate iid = empirical_limit_prob(maxima, n, tau, MaximaKind::iid);
    const double target = std::exp(-1.0);  // C*(e^-1, e^-1) for the comonotone kind
    CHECK(std::abs(dep.value - iid.value) <= 3 * std::sqrt(sqr(dep.se) + sqr(iid.se)));
    CHECK(std::abs(dep.value - target) <= 4 * dep.se);
    CHECK(std::abs(iid.value - target) <= 4 * iid.se);
}

TEST_CASE("empirical_limit_prob: block maxima with one observation match the iid draw") {
    const auto maxima = block_maxima(small_cfg(testing::example_model_comonotone(), 1, 4000, 3), 2);
    const std::vector<double> tau{1.0, 1.0};
    const Estimate dep = empirical_limit_prob(maxima, 1, tau, MaximaKind::dep);
    const Estimate iid = empirical_limit_prob(maxima, 1, tau, MaximaKind::iid);
    CHECK(std::abs(dep.value - iid.value) <= 4 * std::sqrt(sqr(dep.se) + sqr(iid.se)));
}

TEST_CASE("empirical_limit_prob: monotone nonincreasing in each tau coordinate") {
    const auto maxima = block_maxima(small_cfg(testing::example_model_comonotone(), 100, 300, 4), 2);
    double last = 1.0;
    for (double t : {0.2, 0.5, 1.0, 2.0, 4.0}) {
        const std::vector<double> tau{t, 0.7};
        const double p = empirical_limit_prob(maxima, 100, tau, MaximaKind::dep).value;
        CHECK(p <= last);
        last = p;
    }
    CHECK_THROWS_AS(empirical_limit_prob(std::vector<BlockMaxima>{}, 100,
                                         std::vector<double>{1.0, 1.0}, MaximaKind::dep),
                    EmptyInput);
}

TEST_CASE("empirical_extremal_index: reference model at desk scale") {
    const std::int64_t n = 500;
    const auto maxima = block_maxima(small_cfg(testing::example_model_comonotone(), n, 4000, 5), 0);
    const std::vector<double> tau{1.0, 1.0};
    const Estimate th = empirical_extremal_index(maxima, n, tau);
    CHECK(th.se > 0.0);
    CHECK(std::abs(th.value - 0.9 / 1.4) <= 4 * th.se);

    // marginal index through a degenerate tau coordinate
    const std::vector<double> tau1{1.0, 1e-6};
    const Estimate th1 = empirical_extremal_index(maxima, n, tau1);
    CHECK(std::abs(th1.value - 0.7) <= 4 * th1.se);
}

TEST_CASE("empirical_extremal_index: saturated probabilities are rejected") {
    const auto maxima = block_maxima(small_cfg(testing::example_model_comonotone(), 50, 150, 6), 2);
    const std::vector<double> tau{1e-6, 1e-6};
    CHECK_THROWS_AS(empirical_extremal_index(maxima, 50, tau), DegenerateProb);
}

TEST_CASE("empirical_tail_dependence: comonotone twins, disjoint independence, reference model") {
    SUBCASE("identical columns give lambda ~ 1") {
        SignatureArray twin(2, 2, 0, 1);
        for (int j = 1; j <= 2; ++j) {
            twin.at(1, 0, j) = 0.5;
            twin.at(1, 1, j) = 0.3;
            twin.at(2, 0, j) = 0.2;
        }
        const M5Model m(twin, Copula::comonotone(2));
        const SampleMatrix s = sample_fy(m, 20000, 7, 2);
        const auto est = empirical_tail_dependence(s, 1, 2, std::vector<double>{0.95}, 7);
        REQUIRE(est.size() == 1);
        CHECK(est[0].enough_tail);
        CHECK(std::abs(est[0].value - 1.0) <= std::max(4 * est[0].se, 1e-3));
    }
    SUBCASE("disjoint supports under the independence kind give lambda ~ 0") {
        SignatureArray dis(2, 1, 0, 1);
        dis.at(1, 0, 1) = 1.0;
        dis.at(1, 1, 2) = 1.0;
        const M5Model m(dis, Copula::independence(2));
        const SampleMatrix s = sample_fy(m, 20000, 8, 2);
        const auto est = empirical_tail_dependence(s, 1, 2, std::vector<double>{0.95}, 8);
        CHECK(est[0].enough_tail);
        CHECK(est[0].se > 0.0);
        CHECK(std::abs(est[0].value - 0.0) <= 4 * est[0].se);
    }
    SUBCASE("reference model at u = 0.99") {
        const M5Model m = testing::example_model_comonotone();
        const SampleMatrix s = sample_fy(m, 30000, 9, 2);
        const auto est = empirical_tail_dependence(s, 1, 2, std::vector<double>{0.99}, 9);
        CHECK(est[0].enough_tail);
        CHECK(est[0].se > 0.0);
        CHECK(std::abs(est[0].value - 0.6) <= 4 * est[0].se);
    }
    SUBCASE("thin joint tails are flagged") {
        const M5Model m = testing::example_model_comonotone();
        const SampleMatrix s = sample_fy(m, 2000, 10, 2);
        const auto est = empirical_tail_dependence(s, 1, 2, std::vector<double>{0.995}, 10);
        CHECK_FALSE(est[0].enough_tail);
        CHECK(est[0].joint_exceedances < 50);
    }
}

TEST_CASE("verify: single-weight model passes the z gate with theta records near 1") {
    SimConfig cfg = small_cfg(M5Model(testing::single_weight_sig(2), Copula::comonotone(2)), 200,
                              1500, 11);
    VerifyOptions opts;
    opts.fy_draws = 20000;
    opts.threads = 0;
    const std::vector<std::vector<double>> taus{{1.0, 1.0}};
    const VerifyReport rep = verify(cfg, taus, std::vector<double>{0.95}, opts);
    CHECK(rep.passed(4.0));
    bool saw_theta = false;
    for (const auto& r : rep.records) {
        if (r.quantity == "theta" || r.quantity == "theta_marginal") {
            saw_theta = true;
            CHECK(r.theoretical == 1.0);
            CHECK(std::abs(r.empirical - 1.0) <= 0.05);
        }
        if (r.se > 0.0)
            CHECK(r.z == doctest::Approx((r.empirical - r.theoretical) / r.se).epsilon(1e-12));
    }
    CHECK(saw_theta);
}

TEST_CASE("verify: reference model report carries the 0.9/1.4 comparison; CSV is stable") {
    SimConfig cfg = small_cfg(testing::example_model_comonotone(), 300, 2000, 12);
    VerifyOptions opts;
    opts.fy_draws = 20000;
    opts.threads = 0;
    const std::vector<std::vector<double>> taus{{1.0, 1.0}};
    const VerifyReport rep = verify(cfg, taus, std::vector<double>{0.95, 0.99}, opts);

    bool saw = false;
    for (const auto& r : rep.records)
        if (r.quantity == "theta") {
            saw = true;
            CHECK(r.theoretical == doctest::Approx(0.9 / 1.4).epsilon(1e-14));
            CHECK(std::abs(r.z) <= 4.0);
        }
    CHECK(saw);

    const std::string csv = verify_csv(rep);
    CHECK(csv.rfind("quantity,context,theoretical,empirical,se,z\n", 0) == 0);

    // determinism: identical runs render to identical bytes
    VerifyOptions opts1 = opts;
    opts1.threads = 1;
    const VerifyReport rep2 = verify(cfg, taus, std::vector<double>{0.95, 0.99}, opts1);
    CHECK(verify_csv(rep2) == csv);
}
