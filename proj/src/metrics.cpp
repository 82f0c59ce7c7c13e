#include "ngle/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ngle {

void census_apply(WordCensus& census, const StepDelta& delta) {
    for (auto [word, change] : delta.changes) {
        auto& m = census.multiplicity[word];
        if (change > 0) {
            if (m == 0) ++census.distinct;
            m += static_cast<std::uint32_t>(change);
            census.total += static_cast<std::uint64_t>(change);
        } else {
            const auto dec = static_cast<std::uint32_t>(-change);
            if (m < dec)
                throw std::logic_error("census_apply: multiplicity underflow");
            m -= dec;
            if (m == 0) --census.distinct;
            census.total -= dec;
        }
    }
}

WordCensus census_recount(const GameState& state, std::uint32_t vocab_size) {
    WordCensus c(vocab_size);
    for (const Agent& a : state.agents)
        for (WordId w : a.memory) {
            if (c.multiplicity[w]++ == 0) ++c.distinct;
            ++c.total;
        }
    return c;
}

double success_rate_block(std::span<const OutcomeKind> outcomes) {
    if (outcomes.size() != 10)
        throw std::invalid_argument("success_rate_block needs exactly 10 outcomes");
    int successes = 0;
    for (OutcomeKind k : outcomes)
        if (is_success(k)) ++successes;
    return successes / 10.0;
}

SampleSchedule SampleSchedule::up_to(std::uint64_t last) {
    SampleSchedule s;
    if (last == 0) return s;
    const std::uint64_t dense = std::min<std::uint64_t>(last, 1000);
    s.points_.reserve(dense + 64);
    for (std::uint64_t it = 1; it <= dense; ++it) s.points_.push_back(it);
    std::uint64_t p = dense;
    while (p < last) {
        p = std::max(p + 1,
                     static_cast<std::uint64_t>(
                         std::ceil(static_cast<double>(p) * 1.02)));
        s.points_.push_back(std::min(p, last));
    }
    if (s.points_.back() != last) s.points_.push_back(last);
    return s;
}

bool SampleSchedule::contains(std::uint64_t iteration) const {
    return std::binary_search(points_.begin(), points_.end(), iteration);
}

void Sampler::on_step(std::uint64_t iteration, OutcomeKind kind,
                      const WordCensus& census) {
    max_distinct_ = std::max(max_distinct_, census.distinct);
    if (is_success(kind)) ++block_successes_;
    if (iteration % 10 == 0) {
        last_block_rate_ = block_successes_ / 10.0;
        block_successes_ = 0;
    }
    if (schedule_ && next_point_ < schedule_->points().size() &&
        schedule_->points()[next_point_] == iteration) {
        series_.push_back({iteration, static_cast<double>(census.total),
                           static_cast<double>(census.distinct),
                           last_block_rate_});
        ++next_point_;
    }
}

void Sampler::finish(std::uint64_t iteration, const WordCensus& census) {
    if (!schedule_) return;
    if (!series_.empty() && series_.back().iteration >= iteration) return;
    series_.push_back({iteration, static_cast<double>(census.total),
                       static_cast<double>(census.distinct),
                       last_block_rate_});
}

} // namespace ngle
