#include "ngle/run.hpp"

namespace ngle {

RunResult run(const Graph& g, const GameConfig& cfg, RandomStream& rng,
              Sampler sampler) {
    if (g.num_nodes() < 2)
        throw std::invalid_argument("run: graph needs at least 2 nodes");
    if (!is_connected(g))
        throw std::invalid_argument("run: graph must be connected");
    GameState state = init_state(g);
    WordCensus census(cfg.vocab.size);
    StepDelta delta;

    RunResult result;
    const std::uint64_t n = g.num_nodes();
    while (state.iteration < cfg.max_iterations) {
        const Outcome o = step(state, g, cfg, rng, &delta);
        census_apply(census, delta);
        sampler.on_step(state.iteration, o.kind, census);
        ++result.outcome_counts[static_cast<int>(o.kind)];
        if (census.total == n && census.distinct == 1) {
            result.converged = true;
            result.convergence_iteration = state.iteration;
            break;
        }
    }

    sampler.finish(state.iteration, census);
    result.iterations = state.iteration;
    result.series = sampler.take_series();
    result.max_distinct_words = sampler.max_distinct();
    result.final_total_words = census.total;
    result.final_distinct_words = census.distinct;
    return result;
}

RunResult run_recorded(const Graph& g, const GameConfig& cfg,
                       RandomStream& rng) {
    const SampleSchedule schedule = SampleSchedule::up_to(cfg.max_iterations);
    return run(g, cfg, rng, Sampler(&schedule));
}

} // namespace ngle
