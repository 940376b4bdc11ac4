#include "raml/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace raml {

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream)
    : master_seed_(master_seed), stream_(stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int Rng::next_below(int n) {
  if (n <= 0) throw std::invalid_argument("next_below requires n > 0");
  const auto un = static_cast<std::uint64_t>(n);
  const std::uint64_t reject_below = (-un) % un;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= reject_below) return static_cast<int>(r % un);
  }
}

double Rng::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - next_unit();  // (0, 1]
  const double u2 = next_unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * 3.14159265358979323846 * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace raml
