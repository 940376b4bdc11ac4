#include "raml/rewards.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace raml {

int hamming_distance(const Sequence& a, const Sequence& b) {
  if (a.length() != b.length())
    throw std::invalid_argument("hamming requires equal lengths");
  int d = 0;
  for (std::size_t i = 0; i < a.items.size(); ++i)
    if (a.items[i] != b.items[i]) ++d;
  return d;
}

int edit_distance(const Sequence& a, const Sequence& b) {
  const auto& x = a.items;
  const auto& y = b.items;
  const std::size_t n = y.size();
  std::vector<int> prev(n + 1), cur(n + 1);
  for (std::size_t j = 0; j <= n; ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= n; ++j) {
      const int subst = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

double RewardFn::operator()(const Sequence& y, const Sequence& ystar) const {
  switch (kind) {
    case RewardKind::kNegHamming:
      return -static_cast<double>(hamming_distance(y, ystar));
    case RewardKind::kNegEdit:
      return -static_cast<double>(edit_distance(y, ystar));
  }
  throw std::logic_error("unknown reward kind");
}

const char* to_string(RewardKind kind) {
  switch (kind) {
    case RewardKind::kNegHamming:
      return "neg_hamming";
    case RewardKind::kNegEdit:
      return "neg_edit";
  }
  return "?";
}

}  // namespace raml
