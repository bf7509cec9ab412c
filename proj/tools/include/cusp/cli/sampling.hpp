#pragma once

#include <array>
#include <cstdint>

namespace cusp::cli {

/// Van der Corput radical inverse of i in the given base.
double radical_inverse(std::uint64_t i, unsigned base);

/// Halton points in [0, 1)^2 (bases 2 and 3). The seed skips that many
/// leading points, so equal seeds give equal sequences.
class Halton2 {
 public:
  explicit Halton2(std::uint64_t seed = 0) : index_(seed + 1) {}
  std::array<double, 2> next();

 private:
  std::uint64_t index_;
};

}  // namespace cusp::cli
