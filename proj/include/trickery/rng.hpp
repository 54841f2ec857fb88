#pragma once

#include <cstdint>
#include <string_view>

namespace trickery {

// Counter-based random stream. Every draw is a pure function of
// (seed, purpose label, counter), so adding or removing a draw for one
// purpose never shifts the values seen by another.
class CounterRng {
public:
    explicit constexpr CounterRng(uint64_t seed) : seed_(seed) {}

    uint64_t seed() const { return seed_; }

    uint64_t draw(std::string_view purpose, uint64_t counter) const;

    // Uniform in [0, bound). bound must be > 0.
    uint64_t uniform(std::string_view purpose, uint64_t counter, uint64_t bound) const;

private:
    uint64_t seed_;
};

uint64_t splitmix64(uint64_t x);
uint64_t fnv1a64(std::string_view bytes);

}  // namespace trickery
