#pragma once

#include <cstdint>
#include <initializer_list>

namespace geocon {

// SplitMix64 finalizer. Used both as the PRNG step and as a stateless hash
// so that derived streams (per scenario, per message slot) never depend on
// call order or platform distribution objects.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_u64(std::initializer_list<std::uint64_t> xs) {
    std::uint64_t h = 0x6a09e667f3bcc909ull;
    for (std::uint64_t x : xs) h = mix64(h ^ mix64(x));
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform in [0, n).
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

    int bit() { return static_cast<int>(next() & 1u); }

private:
    std::uint64_t state_;
};

}  // namespace geocon
