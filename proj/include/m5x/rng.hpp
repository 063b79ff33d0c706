#pragma once

#include <cmath>
#include <cstdint>

namespace m5x {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace detail

// xoshiro256++ keyed by (seed, stream). Distinct stream ids give statistically
// independent sequences, so replications can run in parallel and still be
// reproducible: results depend only on (seed, stream), never on scheduling.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t st = seed ^ (0x632BE59BD9B4E019ULL * (stream + 1));
        s_[0] = detail::splitmix64(st);
        s_[1] = detail::splitmix64(st);
        s_[2] = detail::splitmix64(st);
        s_[3] = detail::splitmix64(st);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return result;
    }

    // Uniform on the open interval (0,1); never returns an endpoint, so
    // log(u) and -1/log(u) stay finite.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Unit-rate exponential.
    double exponential() { return -std::log(uniform01()); }

private:
    std::uint64_t s_[4];
};

// Stream-id namespaces; keeps replication, draw and bootstrap streams from
// colliding no matter how many of each a run uses.
namespace stream_id {
inline constexpr std::uint64_t dep_path(std::uint64_t rep) { return (0ULL << 56) | rep; }
inline constexpr std::uint64_t iid_draws(std::uint64_t rep) { return (1ULL << 56) | rep; }
inline constexpr std::uint64_t fy_draw(std::uint64_t i) { return (2ULL << 56) | i; }
inline constexpr std::uint64_t bootstrap(std::uint64_t b) { return (3ULL << 56) | b; }
inline constexpr std::uint64_t test(std::uint64_t i) { return (9ULL << 56) | i; }
}  // namespace stream_id

}  // namespace m5x
