#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lupoly::acceptance {

// Sample counts for the eight acceptance criteria. full() is what the
// acceptance binary runs; reduced() backs `lupoly selftest`.
struct Config {
    int interior_points = 5;      // random interior targets per check
    int boundary_points = 5;      // per boundary type
    int oracle_samples = 5;       // fiber samples per numeric_dim call
    int oracle_max_L = 5;
    int vertex_oracle_max_L = 6;
    int vertex_count_max_L = 12;
    int wall_points = 100;        // per L for wall_state reproduction
    int property_states = 1000;   // per L
    int duality_states = 200;
    std::uint64_t seed = 20240917;
    bool enforce_time_limits = true;

    static Config full();
    static Config reduced();
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    double seconds = 0.0;
    double time_limit = 0.0;
    std::vector<std::string> failures;  // empty when passed
    std::string summary;
};

CriterionResult criterion1(const Config& config);
CriterionResult criterion2(const Config& config);
CriterionResult criterion3(const Config& config);
CriterionResult criterion4(const Config& config);
CriterionResult criterion5(const Config& config);
CriterionResult criterion6(const Config& config);
CriterionResult criterion7(const Config& config);
CriterionResult criterion8(const Config& config);

std::vector<CriterionResult> run_all(const Config& config);

// "[PASS] 3 polytope combinatorics (0.84 s / 30 s) - ..." style line.
std::string format_line(const CriterionResult& result);

} // namespace lupoly::acceptance
