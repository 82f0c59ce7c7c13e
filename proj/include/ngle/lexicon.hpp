#pragma once

#include <cstdint>
#include <stdexcept>

#include "ngle/random.hpp"

namespace ngle {

// A lexicon entry. Words are opaque ids; the model only ever compares them
// for equality.
using WordId = std::uint32_t;

// Fixed external vocabulary of V distinct words, immutable for the lifetime
// of a run.
struct Vocabulary {
    std::uint32_t size = 0;

    explicit Vocabulary(std::uint32_t v) : size(v) {
        if (v < 1) throw std::invalid_argument("vocabulary must be non-empty");
    }

    void require_alternative() const {
        if (size < 2)
            throw std::invalid_argument(
                "vocabulary needs at least 2 words for exclusion draws");
    }
};

// Word picked uniformly from the whole vocabulary (invention and initial
// utterances). One engine output.
inline WordId draw_uniform(const Vocabulary& vocab, RandomStream& rng) {
    return static_cast<WordId>(rng.uniform_index(vocab.size));
}

// Word picked uniformly from the V-1 words different from `excluded`
// (erroneous reception). Draw on [0, V-1) and shift past the excluded
// index: one engine output, never returns `excluded`.
inline WordId draw_uniform_excluding(const Vocabulary& vocab, WordId excluded,
                                     RandomStream& rng) {
    vocab.require_alternative();
    if (excluded >= vocab.size)
        throw std::invalid_argument("excluded word outside vocabulary");
    const auto raw = static_cast<WordId>(rng.uniform_index(vocab.size - 1));
    return raw >= excluded ? raw + 1 : raw;
}

} // namespace ngle
