#pragma once

#include "config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace gasp::cli {

// Each command writes CSV to out and returns the process exit code:
// 0 all checks passed, 1 a tolerance check failed. Invalid input throws.

int kernel_eval(const RunConfig& cfg, const std::vector<double>& x, const std::vector<double>& xi, std::ostream& out);

int gauge(const RunConfig& cfg, std::ostream& out);

int flux(const RunConfig& cfg, std::ostream& out);

struct SolveInputs {
    std::string case_name;    // manufactured solution; replaces the data files
    std::string phi_file;     // theta,phi_angle,value on Γ
    std::string nu_file;      // r,phi_angle,value on Γ₁
    std::string targets_file; // x1,x2,x3
    std::string write_data;   // prefix for dumping the data actually used
};

int solve(const RunConfig& cfg, const SolveInputs& in, std::ostream& out);

int green_check(const RunConfig& cfg, std::ostream& out);

int convergence(const RunConfig& cfg, const std::vector<std::string>& cases, std::ostream& out);

int energy_check(const RunConfig& cfg, const std::vector<std::string>& cases, std::ostream& out);

} // namespace gasp::cli
