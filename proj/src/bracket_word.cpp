#include "symctl/bracket_word.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace symctl {

BracketWord BracketWord::leaf(int index) {
  if (index < 1) throw std::invalid_argument("bracket word leaf index must be >= 1");
  BracketWord w;
  w.index_ = index;
  w.max_index_ = index;
  return w;
}

BracketWord BracketWord::node(BracketWord left, BracketWord mid, BracketWord right) {
  BracketWord w;
  w.length_ = left.length_ + mid.length_ + right.length_;
  w.depth_ = 1 + std::max({left.depth_, mid.depth_, right.depth_});
  w.max_index_ = std::max({left.max_index_, mid.max_index_, right.max_index_});
  w.node_ = std::make_shared<const Node>(Node{std::move(left), std::move(mid), std::move(right)});
  return w;
}

int BracketWord::index() const {
  if (!is_leaf()) throw std::logic_error("BracketWord::index on a node");
  return index_;
}

const BracketWord& BracketWord::left() const {
  if (is_leaf()) throw std::logic_error("BracketWord::left on a leaf");
  return node_->left;
}

const BracketWord& BracketWord::mid() const {
  if (is_leaf()) throw std::logic_error("BracketWord::mid on a leaf");
  return node_->mid;
}

const BracketWord& BracketWord::right() const {
  if (is_leaf()) throw std::logic_error("BracketWord::right on a leaf");
  return node_->right;
}

Matrix BracketWord::evaluate(std::span<const Matrix> generators) const {
  if (static_cast<std::size_t>(max_index_) > generators.size()) {
    throw std::out_of_range("bracket word references generator " + std::to_string(max_index_) +
                            " but only " + std::to_string(generators.size()) + " given");
  }
  if (is_leaf()) return generators[static_cast<std::size_t>(index_ - 1)];
  return double_bracket(node_->left.evaluate(generators), node_->mid.evaluate(generators),
                        node_->right.evaluate(generators));
}

std::string BracketWord::to_string() const {
  if (is_leaf()) return std::to_string(index_);
  return "[[" + node_->left.to_string() + "," + node_->mid.to_string() + "]," +
         node_->right.to_string() + "]";
}

std::string BracketWord::to_string(std::span<const int> labels) const {
  if (is_leaf()) {
    if (static_cast<std::size_t>(index_) > labels.size()) {
      throw std::out_of_range("bracket word label missing for index " + std::to_string(index_));
    }
    return std::to_string(labels[static_cast<std::size_t>(index_ - 1)]);
  }
  return "[[" + node_->left.to_string(labels) + "," + node_->mid.to_string(labels) + "]," +
         node_->right.to_string(labels) + "]";
}

BracketWord BracketWord::relabel(std::span<const int> mapping) const {
  if (is_leaf()) {
    if (static_cast<std::size_t>(index_) > mapping.size()) {
      throw std::out_of_range("relabel: mapping missing index " + std::to_string(index_));
    }
    return leaf(mapping[static_cast<std::size_t>(index_ - 1)]);
  }
  return node(node_->left.relabel(mapping), node_->mid.relabel(mapping),
              node_->right.relabel(mapping));
}

bool operator==(const BracketWord& a, const BracketWord& b) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.index_ == b.index_;
  if (a.node_ == b.node_) return true;
  return a.node_->left == b.node_->left && a.node_->mid == b.node_->mid &&
         a.node_->right == b.node_->right;
}

namespace {

// Grammar:  word := INT | "[[" word "," word "]," word "]"
class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
    }
  }

  BracketWord parse() {
    BracketWord w = word();
    if (pos_ != text_.size()) fail("trailing characters");
    return w;
  }

 private:
  BracketWord word() {
    if (peek() == '[') {
      expect('[');
      expect('[');
      BracketWord left = word();
      expect(',');
      BracketWord mid = word();
      expect(']');
      expect(',');
      BracketWord right = word();
      expect(']');
      return BracketWord::node(std::move(left), std::move(mid), std::move(right));
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected generator index");
    if (pos_ - start > 6) fail("generator index too large");
    return BracketWord::leaf(std::stoi(text_.substr(start, pos_ - start)));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("malformed bracket word '" + text_ + "' at offset " +
                                std::to_string(pos_) + ": " + what);
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

BracketWord BracketWord::parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace symctl
