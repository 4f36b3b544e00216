#pragma once

// (V, f) grid sweeps of full dynamics runs.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "opnet/dynamics.hpp"
#include "opnet/model.hpp"

namespace opnet {

struct SweepConfig {
    int n = 81;
    int max_steps = 20;
    double f_lo = 0.05, f_hi = 0.95;
    double v_lo = 0.002, v_hi = 0.2;
    int f_points = 25;  // grid rows
    int v_points = 25;  // grid columns
    UpdateRule rule = UpdateRule::hearing;
    int jobs = 1;       // worker threads, 0 = hardware concurrency

    void validate() const;
};

struct SweepCell {
    double f = 0.0;
    double V = 0.0;
    std::optional<int> diameter_t1;               // empty = infinite
    int components_final = 0;
    std::optional<Classification> classification; // empty = unterminated or failed
    std::optional<int> steps_to_steady;           // empty = horizon reached
    std::optional<double> consensus_value;
    std::string error;                            // set when the cell's run threw
};

// Inclusive evenly spaced points; a single point gives lo.
std::vector<double> linspace(double lo, double hi, int count);

// One run per cell from `initial`, cells in f-major order. The output does not
// depend on the worker count.
std::vector<SweepCell> run_sweep(const SweepConfig& config, const OpinionProfile& initial);

// Runs one cell; never throws (errors land in SweepCell::error).
SweepCell run_cell(double f, double V, int max_steps, UpdateRule rule, const OpinionProfile& initial);

inline constexpr const char* kSweepHeader =
    "f,V,diameter_t1,components_final,classification,steps_to_steady,consensus_value";

// Header plus one row per cell; reals with 17 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells);

}  // namespace opnet
