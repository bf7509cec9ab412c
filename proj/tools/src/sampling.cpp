#include "cusp/cli/sampling.hpp"

namespace cusp::cli {

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double out = 0.0;
  while (i > 0) {
    out += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return out;
}

std::array<double, 2> Halton2::next() {
  const std::uint64_t i = index_++;
  return {radical_inverse(i, 2), radical_inverse(i, 3)};
}

}  // namespace cusp::cli
