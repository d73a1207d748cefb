#pragma once

#include <span>
#include <string>
#include <vector>

#include "symctl/basis.hpp"
#include "symctl/bracket_word.hpp"
#include "symctl/matrix.hpp"

namespace symctl {

/// One primitive flow: right multiplication by e^{duration * generator}.
struct FlowStep {
  Matrix generator;
  double duration = 0.0;
  int generator_index = 0;  ///< 1-based index into the generator list; 0 if ad hoc
};

/// A start point X and an ordered list of primitive left-invariant flows.
/// Evaluates to X * e^{t_1 A_1} * ... * e^{t_k A_k}.
class FlowProgram {
 public:
  explicit FlowProgram(Matrix base) : base_(std::move(base)) {}

  void append(FlowStep step);
  void append(const FlowProgram& tail);

  const Matrix& base() const { return base_; }
  const std::vector<FlowStep>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }

  /// The program run backwards: reversed order, negated durations.
  FlowProgram reversed() const;

  Matrix evaluate() const;

 private:
  Matrix base_;
  std::vector<FlowStep> steps_;
};

/// Flow of the left-invariant field X -> XA: X * e^{tA}.
Matrix flow(const Matrix& a, double t, const Matrix& x);

/// X e^{tA} e^{tB} e^{-tA} e^{-tB} e^{tC} e^{tB} e^{tA} e^{-tB} e^{-tA} e^{-tC}.
/// This is (P, e^{tC}) group commutator with P = (e^{tA}, e^{tB}), so
/// gamma(t) = X (I + t^3 [[A,B],C] + O(t^4)).
Matrix gamma_curve(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& x, double t);

/// (gamma(t) - X) / t^3, which tends to X [[A,B],C] with O(t) error.
/// Throws std::invalid_argument for t = 0.
Matrix double_bracket_estimate(const Matrix& a, const Matrix& b, const Matrix& c,
                               const Matrix& x, double t);

/// How the backward factors Psi^{I_k}_{-t} of a node are realized.
enum class WordFlowConvention {
  /// Exact inverse of Psi^{I_k}_t (the sub-program reversed). Keeps
  /// Psi^I_t = id + t^{|I|} X_I + o(t^{|I|}) at every nesting depth.
  kInverse,
  /// Psi^{I_k} evaluated at time -t. Agrees with kInverse for leaves and
  /// for words of depth 1, but for deeper words leaves a t^{|I_k|+1} term
  /// that dominates t^{|I|}.
  kLiteral,
};

/// Flattened Psi^I_t: only primitive generator flows, 10^depth(I) steps.
/// Leaves index generators (1-based); throws std::out_of_range otherwise.
FlowProgram word_flow_program(const BracketWord& word, double t, const Matrix& x,
                              std::span<const Matrix> generators,
                              WordFlowConvention convention = WordFlowConvention::kInverse);

/// Psi^I_t(X), evaluated by recursion over the word. Bit-identical to
/// word_flow_program(...).evaluate().
Matrix word_flow(const BracketWord& word, double t, const Matrix& x,
                 std::span<const Matrix> generators,
                 WordFlowConvention convention = WordFlowConvention::kInverse);

/// sign(t) |t|^{1/len}, the real odd root (len is odd).
double normalized_time(double t, int length);

/// psi^I_t = Psi^I at time sign(t)|t|^{1/|I|}; tangent X X_I at t = 0.
Matrix normalized_word_flow(const BracketWord& word, double t, const Matrix& x,
                            std::span<const Matrix> generators,
                            WordFlowConvention convention = WordFlowConvention::kInverse);

/// phi(t_1..t_k) = psi^{I_k}_{t_k} o ... o psi^{I_1}_{t_1}(X).
Matrix phi_map(std::span<const BracketWord> words, std::span<const double> times,
               const Matrix& x, std::span<const Matrix> generators,
               WordFlowConvention convention = WordFlowConvention::kInverse);

struct JacobianRank {
  int rank = 0;
  /// jacobian[k] is column k: the central difference of phi along t_k, left
  /// translated to the base point and real-vectorized.
  std::vector<std::vector<double>> jacobian;
  std::vector<double> singular_values;  ///< descending
  /// sigma_min / sigma_max over the retained singular values.
  double smallest_retained_ratio = 0.0;
};

/// Numerical rank of the derivative at 0 of
/// phi(t_1..t_k) = psi^{I_k}_{t_k} o ... o psi^{I_1}_{t_1}(X),
/// by central differences with step h. A singular value counts when it
/// exceeds tol * sigma_max. Throws std::invalid_argument for h <= 0.
JacobianRank phi_jacobian_rank(std::span<const BracketWord> words, const Matrix& x,
                               std::span<const Matrix> generators, double h = 1e-5,
                               double tol = kDefaultTol,
                               WordFlowConvention convention = WordFlowConvention::kInverse);

/// Residuals of a first-order estimate over a grid of times.
struct ConvergenceReport {
  std::string word;
  std::vector<double> t_grid;
  std::vector<double> residuals;
  /// 0 when the residuals are at rounding level (see exact).
  double fitted_order = 0.0;
  /// Every residual is below 1e-12 * max(1, ||oracle||): the estimate is
  /// exact for this word (e.g. a nilpotent leaf) and no order is fitted.
  bool exact = false;
};

/// Least-squares slope of log(residual) against log(t). Throws
/// std::invalid_argument unless both have the same length >= 2 and every
/// value is positive.
double fitted_order(std::span<const double> t_grid, std::span<const double> residuals);

/// ||(gamma(t) - X)/t^3 - X [[A,B],C]|| over t_grid. With richardson set, the
/// estimate is 2 E(t/2) - E(t).
ConvergenceReport gamma_convergence(const Matrix& a, const Matrix& b, const Matrix& c,
                                    const Matrix& x, std::span<const double> t_grid,
                                    bool richardson = false);

/// ||(Psi^I_t(X) - X)/t^{|I|} - X X_I|| over t_grid.
ConvergenceReport word_tangency(const BracketWord& word, const Matrix& x,
                                std::span<const Matrix> generators,
                                std::span<const double> t_grid, bool richardson = false,
                                WordFlowConvention convention = WordFlowConvention::kInverse);

}  // namespace symctl
