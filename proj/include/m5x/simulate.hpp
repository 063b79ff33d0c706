#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "m5x/model.hpp"
#include "m5x/rng.hpp"

namespace m5x {

struct SimConfig {
    std::int64_t n = 1000;    // block length
    std::int64_t reps = 10000;
    std::uint64_t seed = 42;
    M5Model model;
};

// Innovation cells Z_{l,t} for absolute time indices t_min .. t_min+count-1,
// one independent d-vector per (l, t).
struct InnovationArray {
    int patterns = 0;
    int d = 0;
    std::int64_t t_min = 0;
    std::int64_t count = 0;
    std::vector<double> z;

    std::int64_t t_max() const { return t_min + count - 1; }
    double at(int l, std::int64_t t, int j) const { return z[index(l, t, j)]; }
    double& at(int l, std::int64_t t, int j) { return z[index(l, t, j)]; }

private:
    std::size_t index(int l, std::int64_t t, int j) const {
        return (static_cast<std::size_t>(l - 1) * count + static_cast<std::size_t>(t - t_min)) * d +
               static_cast<std::size_t>(j - 1);
    }
};

// One realization Y_1..Y_n, row-major.
struct ProcessPath {
    std::int64_t n = 0;
    int d = 0;
    std::vector<double> y;

    double at(std::int64_t t, int j) const {
        return y[static_cast<std::size_t>(t - 1) * d + static_cast<std::size_t>(j - 1)];
    }
};

struct BlockMaxima {
    std::vector<double> m_dep;  // componentwise maxima of one dependent path
    std::vector<double> m_iid;  // componentwise maxima of n independent F_Y draws
};

// Independent innovations covering times [1 - k_max, n - k_min], so that
// every Y_1..Y_n is computable without burn-in: with finite lag support the
// path is exactly stationary from the first index.
InnovationArray gen_innovations(const M5Model& m, std::int64_t n, RngStream& rng);

// Y_{t,j} = max_{l,k} alpha[l][k][j] * Z_{l,t-k,j}, t = 1..n.
// Throws IndexCoverage if the innovation array does not span the lag window.
ProcessPath build_path(const M5Model& m, const InnovationArray& innov, std::int64_t n);

// One draw from the stationary law F_Y: a single time step of the process
// built from entirely fresh innovations.
void draw_from_fy(const M5Model& m, RngStream& rng, std::span<double> out);

// reps independent replications of (dependent maxima, associated-iid maxima).
// Each replication owns two rng streams keyed by its index, so the output is
// identical for any thread count. threads = 0 picks the hardware count.
std::vector<BlockMaxima> block_maxima(const SimConfig& cfg, int threads = 1);

struct SampleMatrix {
    std::int64_t rows = 0;
    int d = 0;
    std::vector<double> data;

    double at(std::int64_t i, int j) const {
        return data[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j - 1)];
    }
};

// count independent draws from F_Y, one rng stream per draw.
SampleMatrix sample_fy(const M5Model& m, std::int64_t count, std::uint64_t seed, int threads = 1);

int resolve_threads(int threads);

}  // namespace m5x
