#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ngle/generators.hpp"
#include "ngle/run.hpp"

namespace ngle {

// The 24 studied error rates: 0, 0.001..0.009, 0.01..0.09, 0.1..0.5.
std::vector<double> studied_error_rates();

struct ExperimentPlan {
    NetworkSpec network;
    std::vector<double> error_rates = studied_error_rates();
    int trials = 20;
    ErrorMode error_mode = ErrorMode::Learning;
    std::uint64_t base_seed = 0;
    std::uint64_t max_iterations = 10'000'000;
    std::uint32_t vocab_size = 10'000;
    double threshold_step = 0.0001;
    bool fixed_graph_per_trial = false; // threshold search sensitivity knob
    bool record_series = true;
    int threads = 1;

    GameConfig game_config(double rho) const;
    void validate() const;
};

struct TrialSummary {
    bool converged = false;
    std::uint64_t convergence_iteration = 0;
    std::uint32_t max_distinct_words = 0;
    std::array<std::uint64_t, kOutcomeKinds> outcome_counts{};
};

// Aggregate of `trials` independent runs at one error rate. Fresh graph and
// game seeds per trial, derived from (base_seed, rho_index, trial).
struct RhoAggregate {
    double rho = 0.0;
    int trials = 0;
    int converged_trials = 0;
    double mean_convergence_iterations = 0.0; // over converged trials; NaN if none
    double stddev_convergence_iterations = 0.0;
    double mean_max_distinct_words = 0.0;     // over all trials
    TimeSeries mean_series;                   // pointwise over the shared schedule
    std::vector<TrialSummary> per_trial;
};

RhoAggregate run_trials(const ExperimentPlan& plan, double rho,
                        std::size_t rho_index);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares over (x, y) points; needs at least 3 points and
// non-constant x. A constant y fits slope 0 with r_squared defined as 0.
LinearFit linear_fit(const std::vector<std::pair<double, double>>& points);

struct SweepResult {
    std::vector<RhoAggregate> per_rho;       // plan.error_rates order
    std::vector<double> increments;          // relative to the rho = 0 baseline
    int positive_increments = 0;
    int negative_increments = 0;
    std::array<int, 6> interval_counts{};    // histogram of the increments
    std::optional<LinearFit> max_distinct_fit; // over points with rho >= 0.1
};

// Relative convergence-time increments (T_rho - T_0) / T_0 per error rate,
// aligned with the aggregates; entry 0 is the baseline and equals 0.
// Non-converged rates yield NaN entries. Throws if the baseline never
// converged.
std::vector<double> increment_table(const std::vector<RhoAggregate>& per_rho);

// Counts over {(-inf,-0.2), [-0.2,-0.1), [-0.1,0), [0,0.1), [0.1,0.2),
// [0.2,+inf)}. NaN entries are rejected.
std::array<int, 6> interval_histogram(const std::vector<double>& increments);

// Full sweep: run_trials per error rate (baseline must be included first if
// increments are wanted), then increments, histogram and the linear fit of
// mean max distinct words over rho >= 0.1.
SweepResult run_sweep(const ExperimentPlan& plan);

struct BoxSummary {
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    std::vector<double> outliers; // beyond 1.5 x IQR from the quartiles
};

BoxSummary box_summary(std::vector<double> values);

struct ThresholdResult {
    std::vector<double> thresholds;   // per trial; NaN where censored
    std::vector<int> censored_trials; // scan passed 0.5 without failing
    BoxSummary box;                   // over the uncensored thresholds
};

// Returns whether the run at (rho, trial, attempt) converged; injectable so
// the scan logic can be tested against a stub engine.
using AttemptRunner = std::function<bool(double rho, int trial, int attempt)>;

// Per trial: scan rho = 0, step, 2*step, ... (fresh graph and seed per
// attempt); the first non-converging rho is the trial's threshold. Trials
// still converging at rho > 0.5 are reported censored, not dropped.
ThresholdResult find_threshold(const ExperimentPlan& plan);
ThresholdResult find_threshold(const ExperimentPlan& plan,
                               const AttemptRunner& runner);

// Runs fn(0..count-1) on up to `threads` workers; any exception is
// rethrown on the caller. Results must be written to per-index slots.
void parallel_for_index(std::size_t count, int threads,
                        const std::function<void(std::size_t)>& fn);

} // namespace ngle
