#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

namespace cadjust {

using NodeIndex = std::size_t;

/// Set of node indices of one graph, backed by a bitset. Iteration is in
/// ascending index order, which is the canonical (lexicographic) node order.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe);
  NodeSet(std::size_t universe, std::initializer_list<NodeIndex> members);

  static NodeSet full(std::size_t universe);
  static NodeSet from_indices(std::size_t universe, const std::vector<NodeIndex>& members);

  std::size_t universe() const { return universe_; }
  bool contains(NodeIndex v) const;
  bool empty() const;
  std::size_t size() const;

  void insert(NodeIndex v);
  void erase(NodeIndex v);

  NodeSet& operator|=(const NodeSet& other);
  NodeSet& operator&=(const NodeSet& other);
  NodeSet& operator-=(const NodeSet& other);

  friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
  friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }
  friend bool operator==(const NodeSet& a, const NodeSet& b) = default;

  bool intersects(const NodeSet& other) const;
  bool is_subset_of(const NodeSet& other) const;

  /// Smallest member, if any.
  std::optional<NodeIndex> first() const;
  std::vector<NodeIndex> to_vector() const;

  class const_iterator {
   public:
    using value_type = NodeIndex;
    using difference_type = std::ptrdiff_t;

    const_iterator() = default;
    const_iterator(const NodeSet* set, NodeIndex pos) : set_(set), pos_(pos) { advance(); }

    NodeIndex operator*() const { return pos_; }
    const_iterator& operator++() {
      ++pos_;
      advance();
      return *this;
    }
    const_iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const const_iterator& a, const const_iterator& b) {
      return a.pos_ == b.pos_;
    }

   private:
    void advance();
    const NodeSet* set_ = nullptr;
    NodeIndex pos_ = 0;
  };

  const_iterator begin() const { return {this, 0}; }
  const_iterator end() const { return {this, universe_}; }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace cadjust
