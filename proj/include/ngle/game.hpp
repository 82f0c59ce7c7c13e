#pragma once

#include <cstdint>
#include <vector>

#include "ngle/graph.hpp"
#include "ngle/lexicon.hpp"
#include "ngle/random.hpp"

namespace ngle {

// Learning: an agent stops being error-prone once it has spoken.
// Persistent: agents stay error-prone for the whole run.
enum class ErrorMode { Learning, Persistent };

struct GameConfig {
    double error_rate = 0.0;
    Vocabulary vocab{10'000};
    ErrorMode error_mode = ErrorMode::Learning;
    std::uint64_t max_iterations = 10'000'000;

    // The model is studied for error rates up to 0.5; anything above means
    // most transmissions are wrong. `allow_high_rate` lifts the cap to 1
    // for exploration.
    void validate(bool allow_high_rate = false) const;
};

// Per-node memory: distinct words in insertion order, plus the experience
// flag that switches off reception errors in Learning mode.
struct Agent {
    std::vector<WordId> memory;
    bool has_spoken = false;

    bool knows(WordId w) const {
        for (WordId m : memory)
            if (m == w) return true;
        return false;
    }
};

enum class OutcomeKind : std::uint8_t {
    FailureNoError = 0,  // word arrived intact, hearer lacked it
    Consensus = 1,       // word arrived intact, hearer had it
    FailureWithError = 2,// wrong word arrived, hearer lacked it
    PseudoConsensus = 3, // wrong word arrived, hearer happened to hold it
};
inline constexpr int kOutcomeKinds = 4;

inline bool is_success(OutcomeKind k) {
    return k == OutcomeKind::Consensus || k == OutcomeKind::PseudoConsensus;
}

struct Outcome {
    OutcomeKind kind;
    NodeId speaker;
    NodeId hearer;
    WordId spoken;
    WordId received;
};

// Word multiplicity changes caused by one step, in application order.
// Feeds the incremental census.
struct StepDelta {
    std::vector<std::pair<WordId, std::int32_t>> changes;
    void clear() { changes.clear(); }
    void add(WordId w, std::int32_t d) { changes.emplace_back(w, d); }
};

struct GameState {
    std::vector<Agent> agents;
    std::uint64_t iteration = 0;
};

// All memories empty, nobody experienced, iteration 0.
GameState init_state(const Graph& g);

// One pair-wise interaction: speaker uniform over nodes (inventing a word
// if its memory is empty), hearer uniform over the speaker's neighbors,
// reception error with probability rho while the hearer is error-prone,
// then the four-way outcome. The speaker counts as experienced afterwards.
// If `delta` is non-null it receives the step's multiplicity changes.
Outcome step(GameState& state, const Graph& g, const GameConfig& cfg,
             RandomStream& rng, StepDelta* delta = nullptr);

// True iff every memory holds exactly one word and all agents agree.
bool is_converged(const GameState& state);

} // namespace ngle
