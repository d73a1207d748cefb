#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "symctl/basis.hpp"
#include "symctl/bracket_word.hpp"
#include "symctl/matrix.hpp"

namespace symctl {

/// 2n^2: the real dimension of the ambient matrix space bounds the number of
/// strict increases of the filtration.
int default_max_depth(int n);

/// Result of iterating Theta^{p+1} = Theta^p + [[Theta^1, Theta^p], Theta^1].
struct ClosureReport {
  BasisSet basis;                  ///< independent closure elements, in discovery order
  std::vector<BracketWord> words;  ///< words[k] produced basis.members()[k]
  std::size_t dim = 0;
  int depth = 0;  ///< smallest p with Theta^p equal to the reported span
  int target_dim = 0;
  bool controllable = false;
  /// False when max_depth was reached while the span was still growing.
  bool stabilized = false;
};

/// Lie-triple-system closure of the generators.
///
/// Each sweep forms [[A,B],C] for A, C over the generators and B over the
/// elements added by the previous sweep, in lexicographic (A, B, C) order,
/// and keeps those that raise the real rank. Stops once a sweep adds nothing,
/// once the rank reaches target_dim, or when a sweep at depth max_depth would
/// still add something (stabilized = false). max_depth <= 0 selects
/// default_max_depth.
ClosureReport lts_closure(std::span<const Matrix> generators, int target_dim,
                          double tol = kDefaultTol, int max_depth = 0);

struct ChowResult {
  bool controllable = false;
  /// Closure words spanning the tangent space; empty unless controllable.
  std::vector<BracketWord> certificate;
  ClosureReport closure;
};

/// Chow's condition: the generated LTS has dimension target_dim.
ChowResult chow_check(std::span<const Matrix> generators, int target_dim,
                      double tol = kDefaultTol, int max_depth = 0);

struct TripleWitness {
  std::size_t a = 0, b = 0, c = 0;  ///< zero-based indices into the basis
  double residual = 0.0;
};

struct SubspaceCheck {
  bool closed = false;
  std::optional<TripleWitness> witness;  ///< first violating triple
};

/// True iff [[A,B],C] lies in span(basis) for every ordered basis triple.
SubspaceCheck is_lts_subspace(std::span<const Matrix> basis, double tol = kDefaultTol);

using TernaryProduct = std::function<Matrix(const Matrix&, const Matrix&, const Matrix&)>;

struct AxiomOptions {
  double tol = kDefaultTol;
  /// Largest basis for which the O(m^5) derivation identity is checked.
  std::size_t quintuple_cap = 8;
  bool lift_cap = false;
  /// Ternary operation under test; empty means double_bracket.
  TernaryProduct product;
};

struct AxiomReport {
  bool alternating = false;  ///< [A,A,B] = 0 and [A,B,C] = -[B,A,C]
  bool cyclic = false;       ///< [A,B,C] + [B,C,A] + [C,A,B] = 0
  bool derivation = false;   ///< [A,B,[D,E,F]] = [[A,B,D],E,F] + [D,[A,B,E],F] + [D,E,[A,B,F]]
  bool derivation_checked = false;
  double alternating_residual = 0.0;
  double cyclic_residual = 0.0;
  double derivation_residual = 0.0;

  bool all_passed() const { return alternating && cyclic && derivation && derivation_checked; }
};

/// Checks the three Lie-triple-system axioms on all pairs, triples and
/// quintuples of basis elements. A residual passes when it is at most
/// tol * max(1, s^k), where s is the largest basis norm and k the degree of
/// the identity (3 or 5).
AxiomReport verify_lts_axioms(std::span<const Matrix> basis, const AxiomOptions& options = {});

enum class SearchMode { kExhaustive, kGreedy };

inline constexpr std::size_t kExhaustiveLimit = 12;

/// Generating subsets of the ambient basis whose closure reaches target_dim.
///
/// Exhaustive mode returns every subset of the minimum cardinality, each as
/// sorted zero-based indices, in lexicographic order. Greedy mode returns a
/// single subset grown by largest closure gain (lowest index on ties). An
/// empty result means no subset works. Throws std::invalid_argument if the
/// ambient basis is not an LTS or exhaustive mode is asked for more than
/// kExhaustiveLimit elements.
std::vector<std::vector<std::size_t>> minimal_generators(std::span<const Matrix> ambient,
                                                         int target_dim, SearchMode mode,
                                                         double tol = kDefaultTol);

/// Connected components of the row/column index graph in which i ~ j when
/// some matrix has a nonzero (i, j) entry. Indices are 1-based. A closure
/// with more than one block is confined to a block-diagonal subspace.
std::vector<std::vector<int>> invariant_blocks(std::span<const Matrix> mats);

}  // namespace symctl
