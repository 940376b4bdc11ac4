#pragma once

#include "raml/sequence.hpp"

namespace raml {

// Number of positions with differing tokens; the sequences must have equal
// length.
int hamming_distance(const Sequence& a, const Sequence& b);

// Levenshtein distance with unit-cost insertions, deletions and
// substitutions.
int edit_distance(const Sequence& a, const Sequence& b);

enum class RewardKind { kNegHamming, kNegEdit };

// r(y, y*) = -distance(y, y*); always <= 0, zero exactly when the sequences
// agree. Symmetric in its arguments.
struct RewardFn {
  RewardKind kind = RewardKind::kNegEdit;

  double operator()(const Sequence& y, const Sequence& ystar) const;
};

const char* to_string(RewardKind kind);

}  // namespace raml
