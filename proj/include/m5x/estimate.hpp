#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "m5x/simulate.hpp"
#include "m5x/theory.hpp"

namespace m5x {

struct Estimate {
    double value;
    double se;
};

enum class MaximaKind { dep, iid };

// Proportion of replications with M_{n,j} <= n/tau_j for every j, with its
// binomial standard error. Needs at least 100 replications.
Estimate empirical_limit_prob(std::span<const BlockMaxima> maxima, std::int64_t n,
                              std::span<const double> tau, MaximaKind which);

// theta_hat(tau) = log p_dep / log p_iid from the two limit probabilities,
// standard error by the delta method (the dep and iid draws are independent).
// Throws DegenerateProb when either proportion hits 0 or 1.
Estimate empirical_extremal_index(std::span<const BlockMaxima> maxima, std::int64_t n,
                                  std::span<const double> tau);

struct TailLevelEstimate {
    double u = 0.0;
    double value = 0.0;             // lambda_hat(u) = 2 - log Cemp(u,u) / log u
    double se = 0.0;                // bootstrap standard error
    std::int64_t joint_exceedances = 0;
    bool enough_tail = true;        // false: < 50 joint exceedances, level dropped
};

// Rank-based tail dependence of columns (j, j2) at each level, nonparametric
// bootstrap over whole rows for the standard error. Levels with a thin joint
// tail are flagged rather than estimated.
std::vector<TailLevelEstimate> empirical_tail_dependence(const SampleMatrix& samples, int j,
                                                         int j2,
                                                         std::span<const double> u_levels,
                                                         std::uint64_t seed,
                                                         int bootstrap_reps = 200);

struct VerifyRecord {
    std::string quantity;
    std::string context;
    double theoretical;
    double empirical;
    double se;
    double z;
};

struct VerifyReport {
    std::vector<VerifyRecord> records;

    double max_abs_z() const;
    bool passed(double z_gate = 4.0) const;
};

struct VerifyOptions {
    std::int64_t fy_draws = 100000;  // sample size for the tail-dependence records
    int bootstrap_reps = 200;
    int threads = 1;
    double tiny_tau = 1e-6;          // near-zero coordinate for the marginal-theta records
};

// Runs the simulation once and compares every closed form against its
// empirical counterpart: block-maxima limit probabilities (dependent and
// associated-iid), theta(tau) for each tau, each marginal theta_j, and the
// tail-dependence levels for every component pair. The z gate is applied by
// the caller through VerifyReport::passed.
VerifyReport verify(const SimConfig& cfg, std::span<const std::vector<double>> tau_list,
                    std::span<const double> u_levels, const VerifyOptions& opts = {});

}  // namespace m5x
