#pragma once

#include <vector>

#include "raml/rng.hpp"

namespace raml {

// Finite distribution over indices 0..size-1. The support is whatever the
// caller indexes with it: an enumerated sequence space, edit distances, the
// items of a sample batch.
struct Categorical {
  std::vector<double> probs;

  // Normalizes exp(log_weights); throws if every weight is -inf.
  static Categorical from_log_weights(const std::vector<double>& log_weights);

  std::size_t size() const noexcept { return probs.size(); }
  void validate(double tol = 1e-12) const;  // non-negative, sums to 1
  double entropy() const;                   // natural log, 0 log 0 = 0
  int sample(Rng& rng) const;               // inverse CDF on one uniform draw
  int argmax() const;                       // first index on ties
};

double total_variation(const Categorical& a, const Categorical& b);

// KL(a || b) with 0 log 0 = 0; +inf when a puts mass where b has none.
// For the strictly-interior variant see divergence.hpp.
double kl_divergence(const Categorical& a, const Categorical& b);

}  // namespace raml
