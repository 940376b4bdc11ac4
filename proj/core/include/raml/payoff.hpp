#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "raml/categorical.hpp"
#include "raml/counting.hpp"
#include "raml/rewards.hpp"
#include "raml/rng.hpp"
#include "raml/sequence.hpp"

namespace raml {

// How distances are penalized when the stratified sampler reweights ball
// counts:
//
//   kAsWritten : weight(e) = exp(-e / tau)
//   kFigure1   : weight(e) = exp(-e * (1 + ln v) / tau)
//
// kFigure1 folds an extra per-edit ln(v) penalty into the exponent; it is
// the weighting that reproduces the published length-20, vocab-61
// edit-fraction table. Both ship because they answer different questions.
enum class EditWeightMode { kAsWritten, kFigure1 };

struct PayoffSpec {
  Sequence target;
  double tau = 1.0;  // >= 0; tau == 0 selects the delta mode
  RewardFn reward;
  Vocab vocab{2};
  EditWeightMode mode = EditWeightMode::kFigure1;

  void validate() const;
};

// All sequences over the vocabulary in dictionary order (prefixes first).
// fixed_length=true yields exactly the length max_len sequences; otherwise
// every length 0..max_len. Refuses to enumerate more than 10^6 outcomes.
std::vector<Sequence> enumerate_sequences(const Vocab& vocab, int max_len,
                                          bool fixed_length);

// log Z = log sum_y exp(r(y, target) / tau) over the given space. Requires
// tau > 0.
double log_partition(const PayoffSpec& spec, const std::vector<Sequence>& space);

// q(y) = exp(r(y, target) / tau - log Z), aligned with `space`. tau == 0
// yields the one-hot distribution at the target.
Categorical enumerate_payoff(const PayoffSpec& spec,
                             const std::vector<Sequence>& space);

// Same computation without the PayoffSpec ceremony; used by the objectives.
Categorical payoff_over_space(const Sequence& target, double tau, RewardFn reward,
                              const std::vector<Sequence>& space);

// P(e) proportional to c(e, m) * weight(e) over e = 0..2m. Requires tau > 0.
Categorical edit_distance_weights(int m, int v, double tau, EditWeightMode mode);

// Hamming analogue over e = 0..m, built from exact ball counts. With
// kAsWritten weights this makes the full stratified draw an exact sampler of
// the negative-Hamming payoff distribution on the fixed-length space.
Categorical hamming_distance_weights(int m, int v, double tau, EditWeightMode mode);

// One inverse-CDF draw of an edit distance from precomputed weights.
int sample_edit_distance(const Categorical& weights, Rng& rng);

// Applies e random unit edits to ystar (length m) and materializes the
// result. The draw follows the ball-count decomposition, uniformly over edit
// scripts:
//
//   1. substitution count s, proportional to C(m,s) * C(m+e-2s, e-s);
//   2. a uniform s-subset of positions to substitute; each substituted
//      position draws uniformly from v options: the v-1 tokens different
//      from the original, plus nil (nil = deletion);
//   3. a uniform arrangement of the e-s insertions over the m-s+1 gaps
//      around the surviving reference positions (stars and bars over
//      C(m+e-2s, e-s) arrangements); every inserted token uniform over v.
//
// Materialization: walking the original positions left to right, the
// insertions of gap i are emitted immediately before the i-th unsubstituted
// reference token, substituted tokens stay at their original place, nil
// substitutions vanish, and final-gap insertions go at the very end. Scripts
// are equiprobable given e; distinct scripts may collide on one output, and
// script-uniformity (not output-uniformity) is the contract. Every output
// satisfies edit_distance(output, ystar) <= e.
Sequence apply_random_edits(const Sequence& ystar, int e, const Vocab& vocab,
                            Rng& rng);

// Stratified draw for the negative-Hamming reward: distance e from the
// reweighted exact ball counts, then e distinct positions substituted with
// uniform draws over the v-1 alternatives. The output always has the length
// of ystar and Hamming distance exactly e from it. tau == 0 returns ystar.
Sequence sample_hamming(const Sequence& ystar, double tau, const Vocab& vocab,
                        EditWeightMode mode, Rng& rng);

struct SampleBatch {
  struct Item {
    Sequence value;
    // Edit batches record the per-script log-probability (script-uniform
    // contract); Hamming batches record the exact per-output log-density.
    double log_proposal_weight = 0.0;
  };
  std::vector<Item> items;
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

// n stratified edit draws around spec.target with provenance. tau == 0
// yields n copies of the target with log weight 0.
SampleBatch draw_edit_batch(const PayoffSpec& spec, int n,
                            std::uint64_t master_seed, std::uint64_t trial_index);

SampleBatch draw_hamming_batch(const PayoffSpec& spec, int n,
                               std::uint64_t master_seed, std::uint64_t trial_index);

// Self-normalized importance weights over the batch items, proportional to
// exp(target_log_weight(y) - log_proposal_weight). Throws when every weight
// vanishes.
Categorical importance_reweight(
    const SampleBatch& batch,
    const std::function<double(const Sequence&)>& target_log_weight);

const char* to_string(EditWeightMode mode);

}  // namespace raml
