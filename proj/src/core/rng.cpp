#include "trickery/rng.hpp"

#include <cassert>

namespace trickery {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

uint64_t CounterRng::draw(std::string_view purpose, uint64_t counter) const {
    uint64_t x = splitmix64(seed_);
    x = splitmix64(x ^ fnv1a64(purpose));
    return splitmix64(x ^ counter);
}

uint64_t CounterRng::uniform(std::string_view purpose, uint64_t counter, uint64_t bound) const {
    assert(bound > 0);
    // Multiply-shift maps 64 random bits onto [0, bound); bias is below 2^-58
    // for every bound the game uses.
    const unsigned __int128 wide = static_cast<unsigned __int128>(draw(purpose, counter)) * bound;
    return static_cast<uint64_t>(wide >> 64);
}

}  // namespace trickery
