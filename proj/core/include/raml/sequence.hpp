#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace raml {

using TokenId = std::int32_t;

// Sentinel the edit sampler uses for "substitute with nothing", i.e. a
// deletion. Never a member of any vocabulary and never present in a
// materialized sequence.
inline constexpr TokenId kNilToken = -1;

// Finite alphabet with dense token ids 0..size-1. Mapping between human
// readable symbols and ids happens at the CLI boundary; the core only sees
// ids.
class Vocab {
 public:
  explicit Vocab(int size);

  int size() const noexcept { return size_; }
  TokenId nil_token() const noexcept { return kNilToken; }
  bool contains(TokenId t) const noexcept { return t >= 0 && t < size_; }

 private:
  int size_;
};

// Token sequence; plain value type, ordered lexicographically.
struct Sequence {
  std::vector<TokenId> items;

  Sequence() = default;
  Sequence(std::initializer_list<TokenId> init) : items(init) {}
  explicit Sequence(std::vector<TokenId> v) : items(std::move(v)) {}

  std::size_t length() const noexcept { return items.size(); }
  bool empty() const noexcept { return items.empty(); }

  bool valid_for(const Vocab& vocab) const noexcept;

  friend auto operator<=>(const Sequence&, const Sequence&) = default;
};

struct SequenceHash {
  std::size_t operator()(const Sequence& s) const noexcept;
};

// Diagnostic rendering, e.g. "[0 2 1]".
std::string to_string(const Sequence& s);

}  // namespace raml
