#pragma once

#include <cstdint>

#include "argvar/jet.hpp"

namespace argvar::rng {

// splitmix64 finalizer
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based splittable generator: every draw is a pure function of
/// (seed, scenario index, draw index), so suites are reproducible regardless
/// of evaluation order and across implementations of the documented recipe.
class Counter {
  public:
    Counter(uint64_t seed, uint64_t scenario) : seed_(seed), scenario_(scenario) {}

    uint64_t next_u64() { return mix64(mix64(mix64(seed_) ^ scenario_) ^ draw_++); }

    /// uniform in [0, 1)
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    /// uniform integer in [a, b] inclusive
    int uniform_int(int a, int b) {
        return a + int(next_u64() % uint64_t(b - a + 1));
    }

    /// area-uniform point in the disk |z - c| < r (radius draw first)
    Cx in_disk(Cx c, double r) {
        double u = next_double(), v = next_double();
        return c + std::polar(r * std::sqrt(u), kTwoPi * v);
    }

    uint64_t draws_used() const { return draw_; }

  private:
    uint64_t seed_, scenario_;
    uint64_t draw_ = 0;
};

}  // namespace argvar::rng
