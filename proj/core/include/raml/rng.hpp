#pragma once

#include <cstdint>
#include <random>

namespace raml {

// Deterministic random stream addressed by (master_seed, stream). Independent
// trials derive distinct stream indices, so they reproduce bit-identically
// regardless of scheduling order.
//
// All draws go through the raw engine; std::*_distribution is avoided because
// the standard does not pin down its output.
class Rng {
 public:
  explicit Rng(std::uint64_t master_seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double next_unit();      // uniform in [0, 1), 53 random bits
  int next_below(int n);   // uniform in {0, ..., n-1}, rejection sampled
  double next_gaussian();  // standard normal (Box-Muller)

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t master_seed_ = 0;
  std::uint64_t stream_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace raml
