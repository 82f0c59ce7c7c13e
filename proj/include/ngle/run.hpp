#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "ngle/game.hpp"
#include "ngle/metrics.hpp"

namespace ngle {

struct RunResult {
    bool converged = false;
    std::optional<std::uint64_t> convergence_iteration;
    TimeSeries series;
    std::uint32_t max_distinct_words = 0;
    std::array<std::uint64_t, kOutcomeKinds> outcome_counts{};
    std::uint64_t iterations = 0;
    std::uint64_t final_total_words = 0;
    std::uint32_t final_distinct_words = 0;
};

// Full game: steps until consensus or the iteration cap, feeding the
// census and sampler after every step. Hitting the cap is a normal result.
// Convergence is detected from the census (total == n and distinct == 1 is
// equivalent to every agent holding the same single word).
RunResult run(const Graph& g, const GameConfig& cfg, RandomStream& rng,
              Sampler sampler = Sampler{});

// Convenience wrapper with a schedule spanning the whole run.
RunResult run_recorded(const Graph& g, const GameConfig& cfg,
                       RandomStream& rng);

} // namespace ngle
