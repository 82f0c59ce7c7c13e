#include "ngle/game.hpp"

#include <stdexcept>

namespace ngle {

void GameConfig::validate(bool allow_high_rate) const {
    const double cap = allow_high_rate ? 1.0 : 0.5;
    if (!(error_rate >= 0.0 && error_rate <= cap))
        throw std::invalid_argument("error_rate must be in [0, " +
                                    std::to_string(cap) + "]");
    vocab.require_alternative();
    if (max_iterations == 0)
        throw std::invalid_argument("max_iterations must be positive");
}

GameState init_state(const Graph& g) {
    GameState st;
    st.agents.resize(g.num_nodes());
    return st;
}

namespace {

// Both parties collapse to a single word; report every removed word.
void collapse_to(Agent& agent, WordId keep, StepDelta* delta) {
    if (delta)
        for (WordId w : agent.memory)
            if (w != keep) delta->add(w, -1);
    agent.memory.assign(1, keep);
}

} // namespace

Outcome step(GameState& state, const Graph& g, const GameConfig& cfg,
             RandomStream& rng, StepDelta* delta) {
    if (delta) delta->clear();

    const NodeId n = g.num_nodes();
    const NodeId speaker = static_cast<NodeId>(rng.uniform_index(n));
    Agent& sp = state.agents[speaker];

    WordId spoken;
    if (sp.memory.empty()) {
        // Invention: the new word enters the speaker's memory before it is
        // transmitted, so a later collapse can keep it.
        spoken = draw_uniform(cfg.vocab, rng);
        sp.memory.push_back(spoken);
        if (delta) delta->add(spoken, +1);
    } else if (sp.memory.size() == 1) {
        spoken = sp.memory[0];
    } else {
        spoken = sp.memory[rng.uniform_index(sp.memory.size())];
    }

    // Direct strategy: hearer uniform among the speaker's neighbors.
    const auto nb = g.neighbors(speaker);
    const NodeId hearer = nb[rng.uniform_index(nb.size())];
    Agent& hr = state.agents[hearer];

    // Error-prone hearers draw one uniform per hearing; the replacement
    // word is drawn only when the error fires.
    WordId received = spoken;
    const bool error_prone =
        cfg.error_mode == ErrorMode::Persistent || !hr.has_spoken;
    if (error_prone && rng.uniform_real() < cfg.error_rate)
        received = draw_uniform_excluding(cfg.vocab, spoken, rng);

    OutcomeKind kind;
    if (hr.knows(received)) {
        collapse_to(sp, spoken, delta);
        collapse_to(hr, received, delta);
        kind = received == spoken ? OutcomeKind::Consensus
                                  : OutcomeKind::PseudoConsensus;
    } else {
        hr.memory.push_back(received);
        if (delta) delta->add(received, +1);
        kind = received == spoken ? OutcomeKind::FailureNoError
                                  : OutcomeKind::FailureWithError;
    }

    sp.has_spoken = true;
    ++state.iteration;
    return {kind, speaker, hearer, spoken, received};
}

bool is_converged(const GameState& state) {
    if (state.agents.empty()) return false;
    if (state.agents[0].memory.size() != 1) return false;
    const WordId w = state.agents[0].memory[0];
    for (const Agent& a : state.agents)
        if (a.memory.size() != 1 || a.memory[0] != w) return false;
    return true;
}

} // namespace ngle
