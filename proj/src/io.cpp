#include "ngle/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ngle {

std::string format_fixed(double value, int decimals) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

namespace {

// Counts in a single-run series are integral; averaged ones are not.
std::string format_count(double value) {
    if (std::isnan(value)) return "nan";
    if (value == std::floor(value) && std::abs(value) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", value);
        return buf;
    }
    return format_fixed(value);
}

} // namespace

void write_trajectory_csv(const TimeSeries& series, std::ostream& out) {
    out << "iteration,total_words,distinct_words,success_rate\n";
    for (const auto& row : series)
        out << row.iteration << ',' << format_count(row.total_words) << ','
            << format_count(row.distinct_words) << ','
            << format_fixed(row.success_rate) << '\n';
}

void write_sweep_csv(const SweepResult& sweep, std::ostream& out) {
    out << "error_rate,mean_convergence_iterations,relative_increment,"
           "mean_max_distinct_words,converged_trials\n";
    for (std::size_t i = 0; i < sweep.per_rho.size(); ++i) {
        const RhoAggregate& agg = sweep.per_rho[i];
        out << format_fixed(agg.rho) << ','
            << format_fixed(agg.mean_convergence_iterations) << ','
            << format_fixed(sweep.increments[i]) << ','
            << format_fixed(agg.mean_max_distinct_words) << ','
            << agg.converged_trials << '\n';
    }
}

void write_increments_csv(const SweepResult& sweep, std::ostream& out) {
    out << "error_rate,relative_increment\n";
    for (std::size_t i = 0; i < sweep.per_rho.size(); ++i)
        out << format_fixed(sweep.per_rho[i].rho) << ','
            << format_fixed(sweep.increments[i]) << '\n';
}

void write_threshold_csv(const ThresholdResult& result, std::ostream& out) {
    out << "trial,threshold\n";
    for (std::size_t t = 0; t < result.thresholds.size(); ++t)
        out << t << ',' << format_fixed(result.thresholds[t]) << '\n';
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace ngle
