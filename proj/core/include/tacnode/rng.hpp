#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace tacnode {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic stream of uniforms/normals. Normal draws use Box-Muller
// with a cached spare so the uniform consumption per call is fixed, which
// keeps runs byte-reproducible regardless of the platform's
// std::normal_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    engine_.seed(splitmix64(s));
  }

  std::uint64_t next_u64() { return engine_(); }

  double uniform() {             // in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  int uniform_int(int n) {  // in [0, n)
    return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Independent substream: mixes the master seed with the stream id.
inline Rng substream(std::uint64_t master_seed, std::uint64_t stream_id) {
  std::uint64_t s = master_seed ^ (0xd1342543de82ef95ULL * (stream_id + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return Rng(a ^ (b << 1));
}

}  // namespace tacnode
