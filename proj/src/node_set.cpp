#include "cadjust/node_set.hpp"

#include <bit>
#include <stdexcept>

namespace cadjust {

namespace {
constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t universe) { return (universe + kWordBits - 1) / kWordBits; }

void check_same_universe(const NodeSet& a, const NodeSet& b) {
  if (a.universe() != b.universe()) {
    throw std::invalid_argument("node sets belong to graphs of different size");
  }
}
}  // namespace

NodeSet::NodeSet(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

NodeSet::NodeSet(std::size_t universe, std::initializer_list<NodeIndex> members) : NodeSet(universe) {
  for (NodeIndex v : members) insert(v);
}

NodeSet NodeSet::full(std::size_t universe) {
  NodeSet s(universe);
  for (NodeIndex v = 0; v < universe; ++v) s.insert(v);
  return s;
}

NodeSet NodeSet::from_indices(std::size_t universe, const std::vector<NodeIndex>& members) {
  NodeSet s(universe);
  for (NodeIndex v : members) s.insert(v);
  return s;
}

bool NodeSet::contains(NodeIndex v) const {
  if (v >= universe_) return false;
  return (words_[v / kWordBits] >> (v % kWordBits)) & 1U;
}

bool NodeSet::empty() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t NodeSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

void NodeSet::insert(NodeIndex v) {
  if (v >= universe_) throw std::out_of_range("node index outside node set universe");
  words_[v / kWordBits] |= (std::uint64_t{1} << (v % kWordBits));
}

void NodeSet::erase(NodeIndex v) {
  if (v >= universe_) return;
  words_[v / kWordBits] &= ~(std::uint64_t{1} << (v % kWordBits));
}

NodeSet& NodeSet::operator|=(const NodeSet& other) {
  check_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

NodeSet& NodeSet::operator&=(const NodeSet& other) {
  check_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

NodeSet& NodeSet::operator-=(const NodeSet& other) {
  check_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

bool NodeSet::intersects(const NodeSet& other) const {
  check_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

bool NodeSet::is_subset_of(const NodeSet& other) const {
  check_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

std::optional<NodeIndex> NodeSet::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
  }
  return std::nullopt;
}

std::vector<NodeIndex> NodeSet::to_vector() const {
  std::vector<NodeIndex> out;
  out.reserve(size());
  for (NodeIndex v : *this) out.push_back(v);
  return out;
}

void NodeSet::const_iterator::advance() {
  const std::size_t n = set_->universe_;
  while (pos_ < n) {
    const std::size_t wi = pos_ / kWordBits;
    const std::uint64_t w = set_->words_[wi] >> (pos_ % kWordBits);
    if (w != 0) {
      pos_ += static_cast<std::size_t>(std::countr_zero(w));
      return;
    }
    pos_ = (wi + 1) * kWordBits;
  }
  pos_ = n;
}

}  // namespace cadjust
