#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace altnet {

/// Error raised while reading a textual input (scheme files, topology
/// grids). Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// FNV-1a, used for provenance hashes in reports. Stable across platforms.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Unbiased draw from [0, bound) by rejection sampling on raw 64-bit
/// outputs. Together with mt19937_64 this pins the byte-exact stream of
/// every seeded draw (reported as generator id "mt19937_64-rejection-v1").
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::uint64_t limit =
      UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  std::uint64_t r = rng();
  while (r > limit) r = rng();
  return r % bound;
}

inline constexpr const char* kSeedAlgorithmId = "mt19937_64-rejection-v1";

class Stopwatch {
 public:
  Stopwatch() : start_(clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_;
};

}  // namespace altnet
