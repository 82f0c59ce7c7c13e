#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "ngle/graph.hpp"
#include "ngle/random.hpp"

namespace ngle {

// G(n, p): each unordered pair joined independently with probability p.
struct ErdosRenyi {
    NodeId n = 0;
    double p = 0.0;
};

// Ring of n nodes, k neighbors per side (lattice degree 2k), then each
// original lattice edge rewired with probability rp.
struct WattsStrogatz {
    NodeId n = 0;
    std::uint32_t k = 0;
    double rp = 0.0;
};

// Complete graph on m0 seed nodes, then n-m0 nodes each attaching m edges
// by degree-preferential attachment to distinct targets.
struct BarabasiAlbert {
    NodeId n = 0;
    std::uint32_t m0 = 0;
    std::uint32_t m = 0;
};

struct NetworkSpec {
    std::variant<ErdosRenyi, WattsStrogatz, BarabasiAlbert> variant;

    void validate() const;
    NodeId num_nodes() const;
    std::string label() const;
};

// Builds a connected instance of the requested model. A disconnected draw
// is thrown away and regenerated wholesale; after `max_attempts` failures
// the parameter regime is reported as unconnectable.
Graph generate(const NetworkSpec& spec, RandomStream& rng,
               int max_attempts = 100);

} // namespace ngle
