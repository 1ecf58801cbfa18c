#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace kmlab {

// Seeded generator with hand-rolled variate transforms. std::mt19937_64 is
// bit-exact across platforms but the std distributions are not, so uniforms
// and normals are derived here directly; reports stay byte-identical for a
// given seed everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() { return double(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double log_uniform(double lo, double hi) {
        return lo * std::exp(uniform01() * std::log(hi / lo));
    }

    // index in [0, n)
    std::size_t index(std::size_t n) { return std::size_t(uniform01() * double(n)) % n; }

    double normal() {
        // Box-Muller; one value per call keeps the stream simple to reason about
        double u1 = uniform01(), u2 = uniform01();
        while (u1 <= 1e-300) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

} // namespace kmlab
