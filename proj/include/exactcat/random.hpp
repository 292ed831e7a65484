#ifndef EXACTCAT_RANDOM_HPP
#define EXACTCAT_RANDOM_HPP

#include <cstdint>
#include <random>

namespace exactcat {

/// Seeded generator. mt19937_64 is fully specified by the standard; the
/// distributions are not, so draws are derived from the raw output here to
/// keep sampled corpora identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return x % n;
  }

  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  /// Independent child stream, for handing a sub-computation its own seed.
  Rng fork() { return Rng(next()); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace exactcat

#endif  // EXACTCAT_RANDOM_HPP
