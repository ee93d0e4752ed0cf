#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "circon/vec.hpp"

namespace circon {

// All randomness flows from one config seed through named streams, one per
// module ("family", "witness", ...). Distributions are hand-rolled from raw
// mt19937_64 output so byte determinism does not depend on the standard
// library's distribution implementations.
class Rng {
public:
  Rng(std::uint64_t seed, std::string_view stream) : engine_(mix(seed, stream)) {}

  explicit Rng(std::uint64_t raw_state) : engine_(raw_state) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  int uniform_int(int lo, int hi_inclusive) {
    auto span = static_cast<std::uint64_t>(hi_inclusive - lo) + 1;
    return lo + static_cast<int>(bits() % span);
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 1e-300) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Vec gaussian_vector(int dim) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }

  Vec unit_vector(int dim) {
    for (;;) {
      Vec v = gaussian_vector(dim);
      double n = norm(v);
      if (n > 1e-12) return v / n;
    }
  }

private:
  static std::uint64_t mix(std::uint64_t seed, std::string_view stream) {
    // FNV-1a over the stream name, then splitmix64 with the seed folded in.
    std::uint64_t h = 14695981039346656037ull;
    for (char c : stream) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull + h;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

} // namespace circon
