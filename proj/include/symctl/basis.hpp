#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "symctl/matrix.hpp"

namespace symctl {

inline constexpr double kDefaultTol = 1e-9;

struct Membership {
  bool member = false;
  double residual = 0.0;
};

namespace detail {

/// Integer image of m's real vectorization, scaled by a common power of two
/// and divided by the gcd of its entries. Returns nullopt when some entry is
/// not a dyadic rational k/2^j with j <= 40 or the scaled entries do not fit
/// in 62 bits.
std::optional<std::vector<std::int64_t>> integer_image(const Matrix& m);

/// Fraction-free row echelon form over the integers. Each stored row has a
/// positive pivot, and every later row is zero in that pivot column.
class ExactEchelon {
 public:
  /// Reduces v against the stored rows. Returns nullopt on int64 overflow.
  std::optional<std::vector<std::int64_t>> reduce(std::vector<std::int64_t> v) const;

  /// Appends an already reduced, nonzero row.
  void push(std::vector<std::int64_t> row);

  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    std::size_t pivot;
    std::vector<std::int64_t> values;
  };
  std::vector<Row> rows_;
};

}  // namespace detail

/// An ordered list of same-dimension matrices together with an orthonormal
/// basis (in the real 2n^2 embedding) of their real-linear span.
///
/// Members are processed in insertion order. A member raises the rank when
/// its component orthogonal to the current span exceeds tol times the
/// largest member norm seen so far. While every member is an integer (or
/// dyadic) matrix the rank decision is made by exact fraction-free
/// elimination instead, and the orthonormal vectors are still built by
/// modified Gram-Schmidt with one re-orthogonalization pass.
class BasisSet {
 public:
  explicit BasisSet(int dim, double tol = kDefaultTol, double initial_scale = 0.0);

  /// Appends m. Returns true iff the rank grew.
  bool add(const Matrix& m);

  /// Appends m only if it raises the rank; returns whether it did.
  bool add_if_independent(const Matrix& m);

  /// Residual of m against the span; member iff residual <= tol *
  /// max(||m||, scale). On the exact path membership is decided exactly and
  /// a member's residual is reported as 0.
  Membership contains(const Matrix& m) const;

  int dim() const { return dim_; }
  std::size_t rank() const { return ortho_.size(); }
  double tol() const { return tol_; }
  /// Largest member Frobenius norm.
  double scale() const { return scale_; }
  /// True while every rank decision so far was made exactly.
  bool exact() const { return exact_; }

  const std::vector<Matrix>& members() const { return members_; }
  const std::vector<std::vector<double>>& ortho() const { return ortho_; }
  /// Indices into members() of the elements that raised the rank.
  const std::vector<std::size_t>& independent() const { return independent_; }

  /// The independent members, in order.
  std::vector<Matrix> independent_members() const;

 private:
  std::vector<double> project_out(std::vector<double> v) const;
  bool absorb(const Matrix& m, bool keep_dependent);

  int dim_;
  double tol_;
  double scale_;
  bool exact_ = true;
  std::vector<Matrix> members_;
  std::vector<std::vector<double>> ortho_;
  std::vector<std::size_t> independent_;
  detail::ExactEchelon echelon_;
};

/// Real-linear rank of mats. The discard threshold is tol times the largest
/// input norm. Throws std::invalid_argument for empty input, mixed
/// dimensions or tol <= 0.
BasisSet span_rank(std::span<const Matrix> mats, double tol = kDefaultTol);

inline Membership in_span(const Matrix& m, const BasisSet& basis) { return basis.contains(m); }

}  // namespace symctl
