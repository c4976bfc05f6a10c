#pragma once

#include <cstdint>
#include <string>

namespace molars {

// Deterministic PRNG (splitmix64); identical sequences on every platform.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    int below(int n) { return n <= 0 ? 0 : static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    bool chance(int percent) { return below(100) < percent; }
};

// Random graph1 model document: 2..3 graphs, up to 8 nodes and 14 edges in
// total, with dangling, looping and parallel edges each appearing with
// probability well above 0.3 whenever the model has edges at all. Node names
// are unique across the whole model ("n1", "n2", ...), so only the first
// nonempty graph contains a node named "n1".
std::string random_graph_model(std::uint64_t seed);

// Random result-metamodel model: a few greetings, messages and persons with
// random reference links; exercises the greeting tasks' first-match rules.
std::string random_greeting_model(std::uint64_t seed);

} // namespace molars
