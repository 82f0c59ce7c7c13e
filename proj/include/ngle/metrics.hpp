#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ngle/game.hpp"

namespace ngle {

// Word multiplicities across the whole population, maintained step by step.
// total = sum of all memory sizes; distinct = words held by at least one
// agent. Indexed by WordId, so it assumes ids below the vocabulary size.
struct WordCensus {
    std::vector<std::uint32_t> multiplicity;
    std::uint64_t total = 0;
    std::uint32_t distinct = 0;

    explicit WordCensus(std::uint32_t vocab_size)
        : multiplicity(vocab_size, 0) {}
};

// Applies the memory changes of one step. After the call the census equals
// a from-scratch recount of the post-step state.
void census_apply(WordCensus& census, const StepDelta& delta);

// Full recount of a state; the oracle the incremental census is checked
// against.
WordCensus census_recount(const GameState& state, std::uint32_t vocab_size);

// (#Consensus + #PseudoConsensus) / 10 over exactly one block of ten
// outcomes.
double success_rate_block(std::span<const OutcomeKind> outcomes);

// Iterations at which trajectory rows are recorded: every iteration up to
// 1000, then geometric with ratio 1.02 (rounded up, deduplicated), always
// ending at `last`. Dense early sampling resolves the learning phase; the
// geometric tail bounds output size over ten-million-step runs.
class SampleSchedule {
public:
    static SampleSchedule up_to(std::uint64_t last);

    bool contains(std::uint64_t iteration) const;
    const std::vector<std::uint64_t>& points() const { return points_; }

private:
    std::vector<std::uint64_t> points_;
};

struct TimeSeriesRow {
    std::uint64_t iteration;
    double total_words;
    double distinct_words;
    double success_rate;
};

// Rows at strictly increasing iterations; success_rate is the most recently
// completed 10-iteration block's value.
using TimeSeries = std::vector<TimeSeriesRow>;

// Per-run observer: records scheduled rows, tracks the running maximum of
// distinct words every iteration (a true maximum, never sampled), and the
// success counter of the current 10-iteration block.
class Sampler {
public:
    Sampler() = default; // records nothing but still tracks max distinct
    explicit Sampler(const SampleSchedule* schedule) : schedule_(schedule) {}

    void on_step(std::uint64_t iteration, OutcomeKind kind,
                 const WordCensus& census);

    // Appends a final row at `iteration` if it was not already recorded.
    void finish(std::uint64_t iteration, const WordCensus& census);

    std::uint32_t max_distinct() const { return max_distinct_; }
    const TimeSeries& series() const { return series_; }
    TimeSeries take_series() { return std::move(series_); }

private:
    const SampleSchedule* schedule_ = nullptr;
    TimeSeries series_;
    std::size_t next_point_ = 0;
    std::uint32_t max_distinct_ = 0;
    int block_successes_ = 0;
    double last_block_rate_ = 0.0;
};

} // namespace ngle
