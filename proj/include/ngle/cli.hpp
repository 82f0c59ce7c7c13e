#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ngle/experiment.hpp"

namespace ngle {

// Reproducible by default: invocations without --seed always use this.
inline constexpr std::uint64_t kDefaultSeed = 0x4e474c45; // "NGLE"

// Everything a subcommand needs, with the studied defaults baked in.
// Values come from (lowest to highest precedence) defaults, a config file
// with dotted keys, then command-line flags.
struct CliConfig {
    // network block
    std::string net_type = "rg";
    std::uint32_t n = 2000;
    double p = 0.05;
    std::uint32_t k = 20;
    double rp = 0.1;
    std::uint32_t m0 = 26;
    std::uint32_t m = 25;

    // game block
    double error_rate = 0.0;
    std::string error_mode = "learning";
    std::uint32_t vocab_size = 10'000;
    std::uint64_t max_iterations = 10'000'000;

    // experiment block
    int trials = 20;
    std::vector<double> error_rates; // empty = the 24 studied rates
    double threshold_step = 0.0001;

    std::uint64_t seed = kDefaultSeed;
    std::string out_dir = ".";
    bool out_dir_set = false;
    std::string graph_in;
    std::string graph_out;
    bool force = false;       // lift the 0.5 error-rate cap
    bool fixed_graph = false; // threshold: one graph per trial
    int threads = 0;          // 0 = hardware concurrency

    NetworkSpec network_spec() const;
    GameConfig game_config() const;
    ExperimentPlan plan() const;
    ErrorMode mode() const;
    void validate() const;
};

// Flat "key = value" file with dotted keys (network.type, game.error_rate,
// experiment.trials, seed, out); '#' starts a comment. Unknown keys are
// rejected.
void apply_config_file(CliConfig& cfg, const std::string& path);
void apply_config_line(CliConfig& cfg, const std::string& key,
                       const std::string& value);

int cmd_net_stats(const CliConfig& cfg);
int cmd_run(const CliConfig& cfg);
int cmd_sweep(const CliConfig& cfg);
int cmd_threshold(const CliConfig& cfg);

// Full argv surface: ngle net-stats|run|sweep|threshold [flags].
int run_cli(int argc, const char* const* argv);

} // namespace ngle
