#include "symctl/lts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace symctl {

namespace {

int check_generators(std::span<const Matrix> generators) {
  if (generators.empty()) throw std::invalid_argument("generator list is empty");
  const int n = generators.front().dim();
  for (const Matrix& g : generators) {
    if (g.dim() != n) throw std::invalid_argument("generators have mixed dimensions");
  }
  return n;
}

double largest_norm(std::span<const Matrix> mats) {
  double s = 0.0;
  for (const Matrix& m : mats) s = std::max(s, m.frobenius_norm());
  return s;
}

double threshold(double tol, double scale, int degree) {
  return tol * std::max(1.0, std::pow(scale, degree));
}

}  // namespace

int default_max_depth(int n) { return 2 * n * n; }

ClosureReport lts_closure(std::span<const Matrix> generators, int target_dim, double tol,
                          int max_depth) {
  const int n = check_generators(generators);
  if (max_depth <= 0) max_depth = default_max_depth(n);

  ClosureReport report{.basis = BasisSet(n, tol), .words = {}, .target_dim = target_dim};
  const auto reached_target = [&] {
    return target_dim > 0 && report.basis.rank() == static_cast<std::size_t>(target_dim);
  };
  const auto finish = [&](int depth, bool stabilized) {
    report.depth = depth;
    report.stabilized = stabilized;
    report.dim = report.basis.rank();
    report.controllable = report.dim == static_cast<std::size_t>(target_dim);
    return report;
  };

  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (report.basis.add_if_independent(generators[i])) {
      report.words.push_back(BracketWord::leaf(static_cast<int>(i + 1)));
      frontier.push_back(report.words.size() - 1);
      if (reached_target()) return finish(1, true);
    }
  }

  const std::size_t m = generators.size();
  for (int depth = 1;; ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b : frontier) {
        const Matrix ab = commutator(generators[a], report.basis.members()[b]);
        if (ab.is_zero()) continue;
        for (std::size_t c = 0; c < m; ++c) {
          Matrix candidate = commutator(ab, generators[c]);
          if (candidate.is_zero()) continue;
          if (report.basis.contains(candidate).member) continue;
          if (depth >= max_depth) return finish(depth, false);
          if (!report.basis.add_if_independent(candidate)) continue;
          report.words.push_back(BracketWord::node(BracketWord::leaf(static_cast<int>(a + 1)),
                                                   report.words[b],
                                                   BracketWord::leaf(static_cast<int>(c + 1))));
          next.push_back(report.words.size() - 1);
          if (reached_target()) return finish(depth + 1, true);
        }
      }
    }
    if (next.empty()) return finish(depth, true);
    frontier = std::move(next);
  }
}

ChowResult chow_check(std::span<const Matrix> generators, int target_dim, double tol,
                      int max_depth) {
  ChowResult result{.certificate = {}, .closure = lts_closure(generators, target_dim, tol, max_depth)};
  result.controllable = result.closure.controllable;
  if (result.controllable) result.certificate = result.closure.words;
  return result;
}

SubspaceCheck is_lts_subspace(std::span<const Matrix> basis, double tol) {
  check_generators(basis);
  const BasisSet span = span_rank(basis, tol);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Matrix ab = commutator(basis[a], basis[b]);
      for (std::size_t c = 0; c < basis.size(); ++c) {
        const Membership hit = span.contains(commutator(ab, basis[c]));
        if (!hit.member) return {false, TripleWitness{a, b, c, hit.residual}};
      }
    }
  }
  return {true, std::nullopt};
}

AxiomReport verify_lts_axioms(std::span<const Matrix> basis, const AxiomOptions& options) {
  check_generators(basis);
  const TernaryProduct product = options.product ? options.product : TernaryProduct(double_bracket);
  const std::size_t m = basis.size();
  const double scale = largest_norm(basis);

  std::vector<Matrix> triple;
  triple.reserve(m * m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t c = 0; c < m; ++c) triple.push_back(product(basis[a], basis[b], basis[c]));
    }
  }
  const auto t = [&](std::size_t a, std::size_t b, std::size_t c) -> const Matrix& {
    return triple[(a * m + b) * m + c];
  };

  AxiomReport report;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      report.alternating_residual =
          std::max(report.alternating_residual, t(a, a, b).frobenius_norm());
      for (std::size_t c = 0; c < m; ++c) {
        report.alternating_residual =
            std::max(report.alternating_residual, (t(a, b, c) + t(b, a, c)).frobenius_norm());
        report.cyclic_residual = std::max(
            report.cyclic_residual, (t(a, b, c) + t(b, c, a) + t(c, a, b)).frobenius_norm());
      }
    }
  }
  report.alternating = report.alternating_residual <= threshold(options.tol, scale, 3);
  report.cyclic = report.cyclic_residual <= threshold(options.tol, scale, 3);

  if (m > options.quintuple_cap && !options.lift_cap) return report;
  report.derivation_checked = true;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t d = 0; d < m; ++d) {
        for (std::size_t e = 0; e < m; ++e) {
          for (std::size_t f = 0; f < m; ++f) {
            const Matrix lhs = product(basis[a], basis[b], t(d, e, f));
            const Matrix rhs = product(t(a, b, d), basis[e], basis[f]) +
                               product(basis[d], t(a, b, e), basis[f]) +
                               product(basis[d], basis[e], t(a, b, f));
            report.derivation_residual =
                std::max(report.derivation_residual, distance(lhs, rhs));
          }
        }
      }
    }
  }
  report.derivation = report.derivation_residual <= threshold(options.tol, scale, 5);
  return report;
}

namespace {

std::vector<Matrix> pick(std::span<const Matrix> ambient, const std::vector<std::size_t>& idx) {
  std::vector<Matrix> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(ambient[i]);
  return out;
}

std::size_t closure_dim(std::span<const Matrix> ambient, const std::vector<std::size_t>& idx,
                        int target_dim, double tol) {
  const std::vector<Matrix> gens = pick(ambient, idx);
  return lts_closure(gens, target_dim, tol).dim;
}

// Advances idx to the next k-combination of {0..m-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < m - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::vector<std::size_t>> minimal_generators(std::span<const Matrix> ambient,
                                                         int target_dim, SearchMode mode,
                                                         double tol) {
  check_generators(ambient);
  if (mode == SearchMode::kExhaustive && ambient.size() > kExhaustiveLimit) {
    throw std::invalid_argument("exhaustive search is limited to " +
                                std::to_string(kExhaustiveLimit) + " ambient elements");
  }
  if (!is_lts_subspace(ambient, tol).closed) {
    throw std::invalid_argument("ambient basis is not a Lie triple system");
  }
  const std::size_t m = ambient.size();
  const auto target = static_cast<std::size_t>(std::max(target_dim, 0));

  if (mode == SearchMode::kExhaustive) {
    for (std::size_t k = 1; k <= m; ++k) {
      std::vector<std::vector<std::size_t>> found;
      std::vector<std::size_t> idx(k);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      do {
        if (closure_dim(ambient, idx, target_dim, tol) == target) found.push_back(idx);
      } while (next_combination(idx, m));
      if (!found.empty()) return found;
    }
    return {};
  }

  std::vector<std::size_t> chosen;
  std::size_t current = 0;
  while (current != target && chosen.size() < m) {
    std::size_t best = m;
    std::size_t best_dim = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      std::vector<std::size_t> trial = chosen;
      trial.push_back(i);
      const std::size_t d = closure_dim(ambient, trial, target_dim, tol);
      if (best == m || d > best_dim) {
        best = i;
        best_dim = d;
      }
    }
    chosen.push_back(best);
    current = best_dim;
  }
  if (current != target) return {};
  std::sort(chosen.begin(), chosen.end());
  return {chosen};
}

std::vector<std::vector<int>> invariant_blocks(std::span<const Matrix> mats) {
  check_generators(mats);
  const int n = mats.front().dim();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  };
  for (const Matrix& mat : mats) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (mat(i, j) != Complex{}) {
          const int ri = find(i);
          const int rj = find(j);
          if (ri != rj) parent[static_cast<std::size_t>(std::max(ri, rj))] = std::min(ri, rj);
        }
      }
    }
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    if (block_of[static_cast<std::size_t>(root)] < 0) {
      block_of[static_cast<std::size_t>(root)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(root)])].push_back(i + 1);
  }
  return blocks;
}

}  // namespace symctl
