#pragma once

#include <span>
#include <vector>

namespace raml {

// Max-shifted log-sum-exp with compensated accumulation. -inf entries vanish;
// an empty or all -inf input yields -inf.
double log_sum_exp(std::span<const double> values);

// Stable logits -> probabilities. The result is renormalized so it sums to 1
// up to one rounding of the final division.
std::vector<double> softmax(std::span<const double> logits);

// logits - logsumexp(logits).
std::vector<double> log_softmax(std::span<const double> logits);

}  // namespace raml
