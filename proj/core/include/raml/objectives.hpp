#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "raml/categorical.hpp"
#include "raml/payoff.hpp"
#include "raml/rewards.hpp"
#include "raml/rng.hpp"
#include "raml/sequence.hpp"

namespace raml {

struct TrainingPair {
  int context = 0;  // opaque context id, indexes the model's context blocks
  Sequence target;
};

struct TrainingSet {
  std::vector<TrainingPair> pairs;
};

// Enumerated output space with O(1) membership lookup.
class SpaceIndex {
 public:
  explicit SpaceIndex(std::vector<Sequence> sequences);

  int size() const noexcept { return static_cast<int>(sequences_.size()); }
  const std::vector<Sequence>& sequences() const noexcept { return sequences_; }
  const Sequence& at(int i) const { return sequences_.at(static_cast<std::size_t>(i)); }
  int index_of(const Sequence& s) const;  // -1 when absent
  int require(const Sequence& s) const;   // throws when absent

 private:
  std::vector<Sequence> sequences_;
  std::unordered_map<Sequence, int, SequenceHash> index_;
};

enum class ModelKind { kTabular, kPositionFactorized };

// Trainable conditional distribution p(y | x) over an enumerated space.
//
//   kTabular             one logit per (context, outcome)
//   kPositionFactorized  one logit per (context, position, token);
//                        p(y|x) = prod_t softmax(theta[x,t,:])[y_t]
//                        over fixed-length sequences
//
// Parameters are one flat vector, contiguous per context.
class Model {
 public:
  static Model tabular(int n_contexts, int n_outcomes);
  static Model position_factorized(int n_contexts, int seq_len, int vocab_size);

  ModelKind kind() const noexcept { return kind_; }
  int n_contexts() const noexcept { return n_contexts_; }
  std::vector<double>& params() noexcept { return params_; }
  const std::vector<double>& params() const noexcept { return params_; }
  // (offset, length) of the parameter block for one context.
  std::pair<std::size_t, std::size_t> param_block(int context) const;

  // log p(. | context) aligned with the space. For the factorized kind the
  // space must hold sequences of the configured fixed length.
  std::vector<double> log_distribution(int context, const SpaceIndex& space) const;
  Categorical distribution(int context, const SpaceIndex& space) const;
  double log_prob(int context, const Sequence& y, const SpaceIndex& space) const;

  // Exact ancestral draw: inverse CDF over the enumerated distribution for
  // the tabular kind, per-position inverse CDF for the factorized kind.
  Sequence sample(int context, const SpaceIndex& space, Rng& rng) const;

  // out = d log p(y | context) / d theta restricted to the context block
  // (all other coordinates of the full gradient are zero).
  void grad_log_prob_block(int context, const Sequence& y, const SpaceIndex& space,
                           std::span<double> out) const;
  // grad += coef * d log p(y | context) / d theta, full-size gradient vector.
  void add_grad_log_prob(int context, const Sequence& y, const SpaceIndex& space,
                         double coef, std::vector<double>& grad) const;

  void init_gaussian(double stddev, Rng& rng);

 private:
  Model() = default;

  ModelKind kind_ = ModelKind::kTabular;
  int n_contexts_ = 0;
  int n_outcomes_ = 0;  // tabular
  int seq_len_ = 0;     // factorized
  int vocab_size_ = 0;  // factorized
  std::vector<double> params_;
};

// argmax_y p(y | context); ties broken toward the lexicographically smallest
// sequence.
Sequence predict(const Model& model, int context, const SpaceIndex& space);

// Sum over pairs of -log p(y* | x). Throws when a target has no probability
// mass (a -inf logit path).
double loss_ml(const Model& model, const TrainingSet& data, const SpaceIndex& space);

// Sum over pairs of -tau H(p(.|x)) - E_{y~p}[r(y, y*)]: entropy-regularized
// negative expected reward.
double loss_rl(const Model& model, const TrainingSet& data, const SpaceIndex& space,
               RewardFn reward, double tau);

// Sum over pairs of -sum_y q(y | y*; tau) log p(y | x); the payoff-weighted
// cross entropy. tau == 0 reduces exactly to loss_ml.
double loss_raml(const Model& model, const TrainingSet& data, const SpaceIndex& space,
                 RewardFn reward, double tau);

enum class Objective { kMl, kRl, kRaml };

// Full-parameter gradient of the selected loss by summation over the space.
std::vector<double> exact_gradient(Objective objective, const Model& model,
                                   const TrainingSet& data, const SpaceIndex& space,
                                   RewardFn reward, double tau);

struct GradEstimate {
  std::vector<double> vector;              // shaped like the parameters
  std::vector<double> per_coord_variance;  // unbiased, zero off the context block
  int n_samples = 0;
  double empirical_variance = 0.0;  // mean per-coordinate variance
};

// Monte Carlo gradient of the payoff-weighted cross entropy for one pair:
// mean over y ~ sampler of -grad log p(y | x). The sampler must produce
// sequences inside the model's support.
GradEstimate grad_raml_stochastic(const Model& model, const TrainingPair& pair,
                                  const SpaceIndex& space,
                                  const std::function<Sequence(Rng&)>& sampler,
                                  int n_samples, Rng& rng);

// Score-function gradient estimate for the entropy-regularized expected
// reward, sampling y from the model itself:
//
//   mean of -grad log p(y|x) * (r(y, y*) - tau log p(y|x) - b)
//
// kEntropyCorrected keeps the -tau log p term so the estimate is unbiased
// for the full regularized loss; kScoreTimesReward drops it (the plain
// likelihood-ratio form, unbiased only at tau = 0).
enum class RlGradForm { kEntropyCorrected, kScoreTimesReward };
enum class BaselineKind { kNone, kMeanReward };

GradEstimate grad_rl_stochastic(const Model& model, const TrainingPair& pair,
                                const SpaceIndex& space, RewardFn reward, double tau,
                                int n_samples, Rng& rng,
                                RlGradForm form = RlGradForm::kEntropyCorrected,
                                BaselineKind baseline = BaselineKind::kNone);

enum class Method { kMl, kRaml, kRl };

struct TrainOptions {
  Method method = Method::kRaml;
  double tau = 1.0;
  int steps = 100;
  double lr = 0.5;
  int batch = 0;  // pairs per step, round-robin; 0 = full batch
  bool stochastic = false;
  int n_samples = 1;  // per pair per step when stochastic
};

// Telemetry for one training step. kl_q_p / kl_p_q are summed over pairs;
// expected_reward is the mean over pairs of E_{y~p}[r]. kl_p_q is +inf when
// tau = 0 (the delta target has no full support); wall_time_ms is
// informational and deliberately left out of serialized runs.
struct RunRecord {
  int step = 0;
  double loss_ml = 0.0;
  double loss_raml = 0.0;
  double loss_rl = 0.0;
  double expected_reward = 0.0;
  double kl_q_p = 0.0;
  double kl_p_q = 0.0;
  double grad_variance = 0.0;
  double wall_time_ms = 0.0;
  bool diverged = false;
};

// Plain SGD on the mean batch gradient, no momentum. Emits a record at step
// 0 (initialization) and after every update. A non-finite loss aborts the
// run with a diagnostic record. Method kMl trains exactly like kRaml at
// tau = 0 (telemetry still uses the configured tau).
std::vector<RunRecord> train(Model& model, const TrainingSet& data,
                             const SpaceIndex& space, RewardFn reward,
                             const TrainOptions& options, Rng& rng);

// Toy tasks on fully enumerated fixed-length spaces: "copy" (target equals
// the context sequence) and "reverse".
struct ToyTask {
  Vocab vocab{2};
  int seq_len = 1;
  SpaceIndex space;
  TrainingSet data;
};
ToyTask make_toy_task(std::string_view name, int vocab_size, int seq_len);

const char* to_string(Method method);

}  // namespace raml
