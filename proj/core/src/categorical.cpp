#include "raml/categorical.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "raml/numeric.hpp"

namespace raml {

Categorical Categorical::from_log_weights(const std::vector<double>& log_weights) {
  if (log_weights.empty())
    throw std::invalid_argument("categorical needs at least one outcome");
  const double lz = log_sum_exp(log_weights);
  if (!std::isfinite(lz))
    throw std::runtime_error("categorical weights have no finite normalizer");
  Categorical c;
  c.probs.resize(log_weights.size());
  long double sum = 0.0L;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    c.probs[i] = std::exp(log_weights[i] - lz);
    sum += c.probs[i];
  }
  const double inv = static_cast<double>(1.0L / sum);
  for (double& p : c.probs) p *= inv;
  return c;
}

void Categorical::validate(double tol) const {
  if (probs.empty()) throw std::invalid_argument("empty categorical");
  long double sum = 0.0L;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p))
      throw std::invalid_argument("categorical probabilities must be finite and non-negative");
    sum += p;
  }
  if (std::abs(static_cast<double>(sum) - 1.0) > tol)
    throw std::invalid_argument("categorical probabilities must sum to 1");
}

double Categorical::entropy() const {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

int Categorical::sample(Rng& rng) const {
  const double u = rng.next_unit();
  double cum = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_positive = static_cast<int>(i);
    cum += probs[i];
    if (u < cum) return static_cast<int>(i);
  }
  // u fell into the rounding slack past the last positive entry
  if (last_positive < 0) throw std::runtime_error("cannot sample from a zero distribution");
  return last_positive;
}

int Categorical::argmax() const {
  int best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i)
    if (probs[i] > probs[best]) best = static_cast<int>(i);
  return best;
}

double total_variation(const Categorical& a, const Categorical& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("total variation requires equal supports");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a.probs[i] - b.probs[i]);
  return 0.5 * s;
}

double kl_divergence(const Categorical& a, const Categorical& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("kl requires equal supports");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.probs[i] == 0.0) continue;
    if (b.probs[i] == 0.0) return std::numeric_limits<double>::infinity();
    s += a.probs[i] * (std::log(a.probs[i]) - std::log(b.probs[i]));
  }
  return s;
}

}  // namespace raml
