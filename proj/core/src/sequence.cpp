#include "raml/sequence.hpp"

#include <stdexcept>

namespace raml {

Vocab::Vocab(int size) : size_(size) {
  if (size < 2) throw std::invalid_argument("vocab size must be at least 2");
}

bool Sequence::valid_for(const Vocab& vocab) const noexcept {
  for (TokenId t : items)
    if (!vocab.contains(t)) return false;
  return true;
}

std::size_t SequenceHash::operator()(const Sequence& s) const noexcept {
  // FNV-1a over the token words
  std::size_t h = 1469598103934665603ull;
  for (TokenId t : s.items) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(t));
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_string(const Sequence& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s.items[i]);
  }
  out += ']';
  return out;
}

}  // namespace raml
