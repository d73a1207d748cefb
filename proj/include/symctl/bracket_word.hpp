#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symctl/matrix.hpp"

namespace symctl {

/// A formal nested double bracket over generator indices.
///
/// A leaf names a generator by its 1-based index. A node (left, mid, right)
/// stands for [[left, mid], right]. Words are immutable and share subtrees,
/// so copying is cheap.
class BracketWord {
 public:
  static BracketWord leaf(int index);
  static BracketWord node(BracketWord left, BracketWord mid, BracketWord right);

  bool is_leaf() const { return node_ == nullptr; }
  /// Generator index of a leaf; throws std::logic_error on a node.
  int index() const;
  const BracketWord& left() const;
  const BracketWord& mid() const;
  const BracketWord& right() const;

  /// Number of leaves. Always odd.
  int length() const { return length_; }
  /// Nesting depth: 0 for a leaf.
  int depth() const { return depth_; }
  int max_index() const { return max_index_; }

  /// X_I: substitutes generators[i-1] for leaf i and evaluates the brackets.
  /// Throws std::out_of_range if a leaf index exceeds generators.size().
  Matrix evaluate(std::span<const Matrix> generators) const;

  /// Bracket notation, e.g. "[[2,4],5]". With labels, leaf i prints
  /// labels[i-1] instead of i.
  std::string to_string() const;
  std::string to_string(std::span<const int> labels) const;

  /// Parses the notation produced by to_string(). Whitespace is ignored.
  /// Throws std::invalid_argument on malformed input.
  static BracketWord parse(std::string_view text);

  /// Re-indexes leaves: leaf i becomes leaf mapping[i-1].
  BracketWord relabel(std::span<const int> mapping) const;

  friend bool operator==(const BracketWord& a, const BracketWord& b);

 private:
  struct Node;
  BracketWord() = default;

  int index_ = 0;
  int length_ = 1;
  int depth_ = 0;
  int max_index_ = 0;
  std::shared_ptr<const Node> node_;
};

struct BracketWord::Node {
  BracketWord left;
  BracketWord mid;
  BracketWord right;
};

}  // namespace symctl
