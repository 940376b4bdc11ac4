#include "raml/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace raml {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_sum_exp(std::span<const double> values) {
  double m = kNegInf;
  for (double x : values) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  // Kahan-compensated accumulation in extended precision; the acceptance
  // tolerances on the counting identities sit at 1e-12 relative.
  long double sum = 0.0L, comp = 0.0L;
  for (double x : values) {
    if (x == kNegInf) continue;
    const long double term = expl(static_cast<long double>(x) - static_cast<long double>(m));
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(static_cast<long double>(m) + logl(sum));
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  double m = kNegInf;
  for (double x : logits) m = std::max(m, x);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - m);
    sum += out[i];
  }
  const double inv = static_cast<double>(1.0L / sum);
  for (double& p : out) p *= inv;
  return out;
}

std::vector<double> log_softmax(std::span<const double> logits) {
  const double lz = log_sum_exp(logits);
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - lz;
  return out;
}

}  // namespace raml
