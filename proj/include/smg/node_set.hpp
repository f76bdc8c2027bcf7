#pragma once

#include <bitset>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace smg {

using NodeIndex = std::size_t;

// Graphs are capped at this many nodes so that node sets stay fixed-size values.
inline constexpr std::size_t kMaxNodes = 256;

// A set of node indices of one graph. Iteration is in increasing index order, which
// is also the lexicographic label order of the owning graph.
class NodeSet {
 public:
  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = NodeIndex;
    using difference_type = std::ptrdiff_t;
    using pointer = const NodeIndex*;
    using reference = NodeIndex;

    const_iterator() = default;
    const_iterator(const std::bitset<kMaxNodes>* bits, NodeIndex pos) : bits_(bits), pos_(pos) {}

    NodeIndex operator*() const { return pos_; }
    const_iterator& operator++() {
      pos_ = bits_->_Find_next(pos_);
      return *this;
    }
    const_iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const const_iterator& other) const { return pos_ == other.pos_; }

   private:
    const std::bitset<kMaxNodes>* bits_ = nullptr;
    NodeIndex pos_ = kMaxNodes;
  };

  NodeSet() = default;
  NodeSet(std::initializer_list<NodeIndex> nodes) {
    for (NodeIndex v : nodes) insert(v);
  }

  // {0, 1, ..., n-1}
  static NodeSet first_n(std::size_t n) {
    NodeSet s;
    for (NodeIndex v = 0; v < n; ++v) s.insert(v);
    return s;
  }

  bool contains(NodeIndex v) const { return v < kMaxNodes && bits_.test(v); }
  void insert(NodeIndex v) { bits_.set(v); }
  void erase(NodeIndex v) { bits_.reset(v); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }

  bool intersects(const NodeSet& other) const { return (bits_ & other.bits_).any(); }
  bool is_subset_of(const NodeSet& other) const { return (bits_ & ~other.bits_).none(); }

  NodeSet& operator|=(const NodeSet& other) {
    bits_ |= other.bits_;
    return *this;
  }
  NodeSet& operator&=(const NodeSet& other) {
    bits_ &= other.bits_;
    return *this;
  }
  NodeSet& operator-=(const NodeSet& other) {
    bits_ &= ~other.bits_;
    return *this;
  }
  friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
  friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }
  friend bool operator==(const NodeSet& a, const NodeSet& b) { return a.bits_ == b.bits_; }

  const_iterator begin() const { return {&bits_, bits_._Find_first()}; }
  const_iterator end() const { return {&bits_, kMaxNodes}; }

  std::vector<NodeIndex> to_vector() const { return {begin(), end()}; }

 private:
  std::bitset<kMaxNodes> bits_;
};

}  // namespace smg
