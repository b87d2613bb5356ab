#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

namespace gne {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 core with hand-rolled output mappings. std:: distributions are
// implementation-defined, so rolling our own keeps runs byte-reproducible
// across standard libraries (the determinism contract of every optimizer).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform double in [0, 1), 53-bit resolution
  double unif01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + unif01() * (hi - lo); }

  // standard normal via Box-Muller; the spare value is cached in-stream,
  // which is fine because a run owns exactly one Rng for its whole life
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = unif01();
    while (u1 == 0.0) u1 = unif01();
    double u2 = unif01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // uniform integer in [0, n), exactly uniform via rejection
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t rem =
        (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;  // 2^64 mod n
    std::uint64_t x = eng_();
    while (rem != 0 && x > std::numeric_limits<std::uint64_t>::max() - rem)
      x = eng_();
    return x % n;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace gne
