#pragma once

#include <string>
#include <vector>

#include "m5x/model.hpp"

namespace m5x {

// One model plus one experiment. Batch studies are shell loops over configs.
struct ExperimentConfig {
    M5Model model;
    std::int64_t n = 1000;
    std::int64_t reps = 10000;
    std::uint64_t seed = 42;
    std::vector<std::vector<double>> tau_list;  // default: one all-ones vector
    std::vector<double> u_levels;               // default: {0.95, 0.99}
    std::string output_dir = "out";
    std::vector<std::string> commands;          // default: {"theory"}

    explicit ExperimentConfig(M5Model m) : model(std::move(m)) {}
};

// Parses and fully validates a JSON config. Throws ParseError on malformed
// JSON, ValidationError on anything the module validators reject (the
// message names the offending field or (l,k,j) entry).
ExperimentConfig load_config(const std::string& path);

// Same, from an in-memory document.
ExperimentConfig parse_config(const std::string& text);

}  // namespace m5x
