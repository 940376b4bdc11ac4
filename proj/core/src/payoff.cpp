#include "raml/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "raml/numeric.hpp"

namespace raml {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kEnumerationGuard = 1'000'000;

// Uniform k-subset of {0..n-1} via Floyd's algorithm, returned ascending.
std::vector<int> sample_subset(int n, int k, Rng& rng) {
  std::vector<char> mark(static_cast<std::size_t>(n), 0);
  for (int j = n - k; j < n; ++j) {
    const int t = rng.next_below(j + 1);
    if (mark[static_cast<std::size_t>(t)])
      mark[static_cast<std::size_t>(j)] = 1;
    else
      mark[static_cast<std::size_t>(t)] = 1;
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i)
    if (mark[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

double per_edit_log_penalty(int v, double tau, EditWeightMode mode) {
  switch (mode) {
    case EditWeightMode::kAsWritten:
      return 1.0 / tau;
    case EditWeightMode::kFigure1:
      return (1.0 + std::log(static_cast<double>(v))) / tau;
  }
  throw std::logic_error("unknown edit weight mode");
}

Categorical reweight_counts(const std::vector<double>& log_counts, int v, double tau,
                            EditWeightMode mode) {
  if (!(tau > 0.0))
    throw std::invalid_argument("distance reweighting requires tau > 0");
  const double penalty = per_edit_log_penalty(v, tau, mode);
  std::vector<double> lw(log_counts.size());
  for (std::size_t e = 0; e < log_counts.size(); ++e)
    lw[e] = log_counts[e] - penalty * static_cast<double>(e);
  return Categorical::from_log_weights(lw);
}

}  // namespace

void PayoffSpec::validate() const {
  if (!(tau >= 0.0))
    throw std::invalid_argument("temperature must be non-negative");
  if (target.empty())
    throw std::invalid_argument("payoff target must be non-empty");
  if (!target.valid_for(vocab))
    throw std::invalid_argument("payoff target uses tokens outside the vocabulary");
}

std::vector<Sequence> enumerate_sequences(const Vocab& vocab, int max_len,
                                          bool fixed_length) {
  if (max_len < 0) throw std::invalid_argument("max_len must be non-negative");
  const int v = vocab.size();
  long double count = fixed_length ? 1.0L : 1.0L;  // the empty prefix
  long double layer = 1.0L;
  for (int l = 1; l <= max_len; ++l) {
    layer *= v;
    if (fixed_length)
      count = layer;
    else
      count += layer;
  }
  if (count > static_cast<long double>(kEnumerationGuard))
    throw std::length_error("space too large to enumerate");

  std::vector<Sequence> out;
  out.reserve(static_cast<std::size_t>(count));
  Sequence cur;
  auto walk = [&](auto&& self, int depth) -> void {
    if (fixed_length ? depth == max_len : true) out.push_back(cur);
    if (depth == max_len) return;
    for (TokenId t = 0; t < v; ++t) {
      cur.items.push_back(t);
      self(self, depth + 1);
      cur.items.pop_back();
    }
  };
  walk(walk, 0);
  return out;
}

double log_partition(const PayoffSpec& spec, const std::vector<Sequence>& space) {
  spec.validate();
  if (spec.tau == 0.0)
    throw std::domain_error("delta mode has no finite partition log");
  if (space.empty()) throw std::invalid_argument("empty output space");
  std::vector<double> lw(space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    lw[i] = spec.reward(space[i], spec.target) / spec.tau;
  return log_sum_exp(lw);
}

Categorical payoff_over_space(const Sequence& target, double tau, RewardFn reward,
                              const std::vector<Sequence>& space) {
  if (space.empty()) throw std::invalid_argument("empty output space");
  if (tau == 0.0) {
    Categorical c;
    c.probs.assign(space.size(), 0.0);
    const auto it = std::find(space.begin(), space.end(), target);
    if (it == space.end())
      throw std::invalid_argument("target sequence not in the enumerated space");
    c.probs[static_cast<std::size_t>(it - space.begin())] = 1.0;
    return c;
  }
  std::vector<double> lw(space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    lw[i] = reward(space[i], target) / tau;
  return Categorical::from_log_weights(lw);
}

Categorical enumerate_payoff(const PayoffSpec& spec, const std::vector<Sequence>& space) {
  spec.validate();
  return payoff_over_space(spec.target, spec.tau, spec.reward, space);
}

Categorical edit_distance_weights(int m, int v, double tau, EditWeightMode mode) {
  const EditCountTable table = EditCountTable::build(m, v);
  return reweight_counts(table.log_counts, v, tau, mode);
}

Categorical hamming_distance_weights(int m, int v, double tau, EditWeightMode mode) {
  std::vector<double> log_counts(static_cast<std::size_t>(m) + 1);
  for (int e = 0; e <= m; ++e)
    log_counts[static_cast<std::size_t>(e)] = log_hamming_ball_count(e, m, v);
  return reweight_counts(log_counts, v, tau, mode);
}

int sample_edit_distance(const Categorical& weights, Rng& rng) {
  weights.validate(1e-9);
  return weights.sample(rng);
}

Sequence apply_random_edits(const Sequence& ystar, int e, const Vocab& vocab, Rng& rng) {
  const int m = static_cast<int>(ystar.length());
  if (m < 1) throw std::invalid_argument("edit sampling requires a non-empty reference");
  if (!ystar.valid_for(vocab))
    throw std::invalid_argument("reference uses tokens outside the vocabulary");
  if (e < 0 || e > 2 * m)
    throw std::out_of_range("edit count e must lie in 0..2m");
  if (e == 0) return ystar;
  const int v = vocab.size();

  // substitution count s, proportional to the s-th ball-count term (the v^e
  // factor is constant in s)
  const int s_max = std::min(m, e);
  std::vector<double> lw(static_cast<std::size_t>(s_max) + 1);
  for (int s = 0; s <= s_max; ++s)
    lw[static_cast<std::size_t>(s)] =
        log_binomial(m, s) + log_binomial(m + e - 2 * s, e - s);
  const int s = Categorical::from_log_weights(lw).sample(rng);

  const std::vector<int> subs = sample_subset(m, s, rng);
  std::vector<char> is_sub(static_cast<std::size_t>(m), 0);
  std::vector<TokenId> sub_token(static_cast<std::size_t>(m), kNilToken);
  for (int pos : subs) {
    is_sub[static_cast<std::size_t>(pos)] = 1;
    const int c = rng.next_below(v);  // v-1 alternatives plus nil
    const TokenId orig = ystar.items[static_cast<std::size_t>(pos)];
    sub_token[static_cast<std::size_t>(pos)] =
        (c == v - 1) ? kNilToken : (c < orig ? c : c + 1);
  }

  // stars-and-bars arrangement of e-s insertions over m-s+1 gaps
  const int n_ins = e - s;
  const int n_refs = m - s;
  const int slots = n_ins + n_refs;
  const std::vector<int> stars = sample_subset(slots, n_ins, rng);
  std::vector<int> gap_count(static_cast<std::size_t>(n_refs) + 1, 0);
  {
    int gap = 0;
    std::size_t si = 0;
    for (int slot = 0; slot < slots; ++slot) {
      if (si < stars.size() && stars[si] == slot) {
        ++gap_count[static_cast<std::size_t>(gap)];
        ++si;
      } else {
        ++gap;
      }
    }
  }
  std::vector<std::vector<TokenId>> gap_tokens(gap_count.size());
  for (std::size_t g = 0; g < gap_count.size(); ++g)
    for (int i = 0; i < gap_count[g]; ++i)
      gap_tokens[g].push_back(static_cast<TokenId>(rng.next_below(v)));

  // materialize: gap i insertions land immediately before the i-th reference
  // token, the final gap at the very end; nil substitutions vanish
  Sequence out;
  out.items.reserve(static_cast<std::size_t>(m + n_ins));
  int gap = 0;
  for (int j = 0; j < m; ++j) {
    if (is_sub[static_cast<std::size_t>(j)]) {
      if (sub_token[static_cast<std::size_t>(j)] != kNilToken)
        out.items.push_back(sub_token[static_cast<std::size_t>(j)]);
    } else {
      for (TokenId t : gap_tokens[static_cast<std::size_t>(gap)]) out.items.push_back(t);
      ++gap;
      out.items.push_back(ystar.items[static_cast<std::size_t>(j)]);
    }
  }
  for (TokenId t : gap_tokens[static_cast<std::size_t>(n_refs)]) out.items.push_back(t);
  return out;
}

Sequence sample_hamming(const Sequence& ystar, double tau, const Vocab& vocab,
                        EditWeightMode mode, Rng& rng) {
  if (ystar.empty())
    throw std::invalid_argument("hamming sampling requires a non-empty reference");
  if (!ystar.valid_for(vocab))
    throw std::invalid_argument("reference uses tokens outside the vocabulary");
  if (!(tau >= 0.0)) throw std::invalid_argument("temperature must be non-negative");
  if (tau == 0.0) return ystar;  // delta mode

  const int m = static_cast<int>(ystar.length());
  const int v = vocab.size();
  const Categorical weights = hamming_distance_weights(m, v, tau, mode);
  const int e = weights.sample(rng);
  Sequence out = ystar;
  for (int pos : sample_subset(m, e, rng)) {
    const TokenId orig = ystar.items[static_cast<std::size_t>(pos)];
    const int c = rng.next_below(v - 1);
    out.items[static_cast<std::size_t>(pos)] = (c < orig) ? c : c + 1;
  }
  return out;
}

SampleBatch draw_edit_batch(const PayoffSpec& spec, int n, std::uint64_t master_seed,
                            std::uint64_t trial_index) {
  spec.validate();
  if (n < 1) throw std::invalid_argument("batch size must be positive");
  SampleBatch batch;
  batch.master_seed = master_seed;
  batch.trial_index = trial_index;
  batch.items.reserve(static_cast<std::size_t>(n));
  Rng rng(master_seed, trial_index);

  if (spec.tau == 0.0) {
    for (int i = 0; i < n; ++i) batch.items.push_back({spec.target, 0.0});
    return batch;
  }
  const int m = static_cast<int>(spec.target.length());
  const int v = spec.vocab.size();
  const EditCountTable table = EditCountTable::build(m, v);
  const Categorical weights = reweight_counts(table.log_counts, v, spec.tau, spec.mode);
  for (int i = 0; i < n; ++i) {
    const int e = weights.sample(rng);
    SampleBatch::Item item;
    item.value = apply_random_edits(spec.target, e, spec.vocab, rng);
    // per-script density: P(e) spread uniformly over the c(e, m) scripts
    item.log_proposal_weight = std::log(weights.probs[static_cast<std::size_t>(e)]) -
                               table.log_counts[static_cast<std::size_t>(e)];
    batch.items.push_back(std::move(item));
  }
  return batch;
}

SampleBatch draw_hamming_batch(const PayoffSpec& spec, int n, std::uint64_t master_seed,
                               std::uint64_t trial_index) {
  spec.validate();
  if (n < 1) throw std::invalid_argument("batch size must be positive");
  SampleBatch batch;
  batch.master_seed = master_seed;
  batch.trial_index = trial_index;
  batch.items.reserve(static_cast<std::size_t>(n));
  Rng rng(master_seed, trial_index);

  if (spec.tau == 0.0) {
    for (int i = 0; i < n; ++i) batch.items.push_back({spec.target, 0.0});
    return batch;
  }
  const int m = static_cast<int>(spec.target.length());
  const int v = spec.vocab.size();
  const Categorical weights = hamming_distance_weights(m, v, spec.tau, spec.mode);
  for (int i = 0; i < n; ++i) {
    const int e = weights.sample(rng);
    Sequence out = spec.target;
    for (int pos : sample_subset(m, e, rng)) {
      const TokenId orig = spec.target.items[static_cast<std::size_t>(pos)];
      const int c = rng.next_below(v - 1);
      out.items[static_cast<std::size_t>(pos)] = (c < orig) ? c : c + 1;
    }
    SampleBatch::Item item;
    item.value = std::move(out);
    // exact per-output density: substitution scripts are in bijection with
    // outputs at a given Hamming distance
    item.log_proposal_weight = std::log(weights.probs[static_cast<std::size_t>(e)]) -
                               log_hamming_ball_count(e, m, v);
    batch.items.push_back(std::move(item));
  }
  return batch;
}

Categorical importance_reweight(
    const SampleBatch& batch,
    const std::function<double(const Sequence&)>& target_log_weight) {
  if (batch.items.empty()) throw std::invalid_argument("empty sample batch");
  std::vector<double> lw(batch.items.size());
  for (std::size_t i = 0; i < batch.items.size(); ++i)
    lw[i] = target_log_weight(batch.items[i].value) - batch.items[i].log_proposal_weight;
  if (!std::isfinite(log_sum_exp(lw)))
    throw std::runtime_error("degenerate importance weights");
  return Categorical::from_log_weights(lw);
}

const char* to_string(EditWeightMode mode) {
  switch (mode) {
    case EditWeightMode::kAsWritten:
      return "as_written";
    case EditWeightMode::kFigure1:
      return "figure1";
  }
  return "?";
}

}  // namespace raml
