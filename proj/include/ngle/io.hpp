#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ngle/experiment.hpp"
#include "ngle/metrics.hpp"

namespace ngle {

// Fixed 6-decimal formatting keeps CSV output byte-stable across
// invocations and platforms with the same rounding mode. NaN prints as
// "nan" to mark censored cells.
std::string format_fixed(double value, int decimals = 6);

// Header: iteration,total_words,distinct_words,success_rate.
// Word counts print as integers when they are whole (single-run series),
// fixed 6-decimal otherwise (trial-averaged series).
void write_trajectory_csv(const TimeSeries& series, std::ostream& out);

// Header: error_rate,mean_convergence_iterations,relative_increment,
//         mean_max_distinct_words,converged_trials.
void write_sweep_csv(const SweepResult& sweep, std::ostream& out);

// Header: error_rate,relative_increment.
void write_increments_csv(const SweepResult& sweep, std::ostream& out);

// Header: trial,threshold. Censored trials print nan.
void write_threshold_csv(const ThresholdResult& result, std::ostream& out);

void write_file(const std::string& path, const std::string& contents);

} // namespace ngle
