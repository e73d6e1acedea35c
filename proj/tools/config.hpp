#pragma once

#include "gasp/kernel.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gasp::cli {

struct RunConfig {
    double alpha = 0.25;
    double radius = 1.0;
    int n_theta = 32;
    int n_phi = 64;
    int n_r = 0;          // 0: same as n_theta
    double grading = 3.0;
    double tol = 1e-3;
    std::uint64_t seed = 1;
    int threads = 0;      // 0: OpenMP default
    std::string output_path;

    void validate() const;
    [[nodiscard]] Params params() const { return {3, alpha}; }
    [[nodiscard]] int base_nr() const { return n_r > 0 ? n_r : n_theta; }
};

/// Applies "key = value" lines ('#' starts a comment) on top of cfg.
void apply_config(std::istream& in, RunConfig& cfg);
void apply_config_file(const std::string& path, RunConfig& cfg);

/// Numeric rows of a CSV file with a header line; every row must have `columns` cells.
std::vector<std::vector<double>> read_csv(const std::string& path, std::size_t columns);

/// "a,b,c" to numbers.
std::vector<double> parse_point(const std::string& text);

} // namespace gasp::cli
