// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all
// pass.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "property_suite.hpp"
#include "symctl/catalog.hpp"
#include "symctl/cli.hpp"
#include "symctl/flow.hpp"
#include "symctl/lts.hpp"

using namespace symctl;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int g_failures = 0;

void report(int number, const std::string& title, Verdict& v) {
  if (!v.pass) ++g_failures;
  std::printf("%s criterion %d (%s):%s\n", v.pass ? "PASS" : "FAIL", number, title.c_str(),
              v.detail.str().c_str());
}

bool has_word(const std::vector<BracketWord>& words, std::span<const int> labels, const std::string& text) {
  return std::any_of(words.begin(), words.end(),
                     [&](const BracketWord& w) { return w.to_string(labels) == text; });
}

const std::vector<int> kSphereLabels{1, 2};
const std::vector<int> kM1Labels{2, 4, 5};
const std::vector<int> kM2Labels{1, 3, 4, 5};

std::vector<Matrix> sphere_gens() { return {fx::X1(), fx::X2()}; }
std::vector<Matrix> m1_gens() { return {fx::e2(), fx::e4(), fx::e5()}; }
std::vector<Matrix> m2_gens() { return {fx::e1(), fx::e3(), fx::e4(), fx::e5()}; }

void criterion1() {
  Verdict v;
  const std::vector<Matrix> gens = sphere_gens();
  const ChowResult c = chow_check(gens, 2);
  v.require(c.controllable, "controllable");
  v.require(c.closure.dim == 2, "dim 2");
  v.require(c.closure.depth <= 2, "depth <= 2");
  v.require(c.closure.basis.exact(), "exact path");
  for (const Matrix& g : gens) v.require(c.closure.basis.contains(g).residual == 0.0, "zero residual");
  v.detail << " dim " << c.closure.dim << ", depth " << c.closure.depth
           << (c.closure.basis.exact() ? ", exact" : ", floating");
  report(1, "sphere controllable at depth <= 2", v);
}

void criterion2() {
  Verdict v;
  v.require(double_bracket(fx::e2(), fx::e4(), fx::e5()) == fx::e1(), "[[e2,e4],e5] = e1");
  const ChowResult c = chow_check(m1_gens(), 4);
  v.require(c.controllable, "controllable at 4");
  v.require(has_word(c.certificate, kM1Labels, "[[2,4],5]"), "certificate has [[2,4],5]");
  const std::vector<Matrix> ambient{fx::e1(), fx::e2(), fx::e4(), fx::e5()};
  const auto subsets = minimal_generators(ambient, 4, SearchMode::kExhaustive);
  const std::vector<std::size_t> wanted{1, 2, 3};
  v.require(!subsets.empty() && subsets.front().size() == 3, "minimum cardinality 3");
  v.require(std::find(subsets.begin(), subsets.end(), wanted) != subsets.end(), "{e2,e4,e5} among minima");
  v.detail << " dim " << c.closure.dim << ", " << subsets.size() << " minimal subsets of size "
           << (subsets.empty() ? 0 : subsets.front().size());
  report(2, "four-dimensional screw submanifold", v);
}

void criterion3() {
  Verdict v;
  v.require(double_bracket(fx::e1(), fx::e5(), fx::e4()) == fx::e2(), "[[e1,e5],e4] = e2");
  const ChowResult c = chow_check(m2_gens(), 5);
  v.require(c.controllable, "controllable at 5");
  v.detail << " dim " << c.closure.dim;
  report(3, "five-dimensional submanifold", v);
}

void criterion4() {
  Verdict v;
  int checked = 0;
  for (int k = 1; k <= 7; ++k) {
    const std::string id = "se3_lts_" + std::to_string(k);
    const std::vector<double> pitches =
        k == 2 ? std::vector<double>{-1.0, 0.0, 0.5, 1.0, 10.0} : std::vector<double>{0.0};
    for (double p : pitches) {
      const std::vector<Matrix> basis = catalog_get(id, {{"pitch", p}}).ambient_matrices();
      const std::string tag = id + (k == 2 ? " p=" + std::to_string(p) : "");
      v.require(is_lts_subspace(basis).closed, tag + " closed");
      const BasisSet span = span_rank(basis);
      v.require(span.exact(), tag + " exact");
      for (const Matrix& a : basis) {
        for (const Matrix& b : basis) {
          for (const Matrix& c : basis) {
            v.require(span.contains(double_bracket(a, b, c)).residual == 0.0, tag + " zero residual");
          }
        }
      }
      ++checked;
    }
  }
  v.detail << " " << checked << " bases closed with zero residual";
  report(4, "seven screw-motion LTS classes", v);
}

void criterion5() {
  Verdict v;
  const std::vector<Matrix> suggested{fx::a1(), fx::a3(), fx::a4()};
  const std::vector<Matrix> alternative{fx::a1(), fx::a4(), fx::a6()};
  const std::size_t oracle_suggested = oracle::closure(suggested).size();
  const std::size_t oracle_alternative = oracle::closure(alternative).size();
  v.require(oracle_suggested == 4 && oracle_alternative == 6, "oracle dims 4 and 6");
  const ChowResult a = chow_check(suggested, 6);
  const ChowResult b = chow_check(alternative, 6);
  v.require(a.closure.dim == 4 && !a.controllable, "{a1,a3,a4}: dim 4, not controllable");
  v.require(b.closure.dim == 6 && b.controllable, "{a1,a4,a6}: dim 6, controllable");

  cli::RunConfig config;
  config.catalog_id = "goe_sym3";
  config.generators = {"a1", "a3", "a4"};
  config.paper_mode = true;
  const cli::RunResult run = cli::run(config);
  v.require(run.exit_code == cli::kExitFailed, "CLI exit 1");
  const nlohmann::json r = nlohmann::json::parse(run.report);
  bool cited = false;
  for (const auto& claim : r["published_claims"]["brackets"]) {
    if (claim["expression"] == "[[a1,a4],a4]" && claim["published"] == "-2a2" &&
        claim["computed"] == "2a1 - 2a2") {
      cited = true;
    }
  }
  v.require(cited, "report cites -2a2 against 2a1 - 2a2");
  v.detail << " dims " << a.closure.dim << " and " << b.closure.dim << " (oracle " << oracle_suggested
           << ", " << oracle_alternative << ")";
  report(5, "symmetric-matrix divergence detection", v);
}

void criterion6() {
  Verdict v;
  v.require(double_bracket(fx::Z1(), fx::Z3(), fx::Z4()) == 2.0 * fx::Z6(), "[[Z1,Z3],Z4] = 2 Z6");
  const std::vector<Matrix> gens{fx::Z1(), fx::Z3(), fx::Z4(), fx::Z8()};
  const ChowResult c = chow_check(gens, 5);
  v.require(c.controllable && c.closure.dim == 5, "dim 5");
  v.require(oracle::closure(gens).size() == 5, "oracle dim 5");
  v.detail << " dim " << c.closure.dim;
  report(6, "SU(3)/SO(3) with four controls", v);
}

void criterion7() {
  Verdict v;
  std::mt19937_64 rng(7007);
  const std::vector<double> grid{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  const std::vector<CatalogListing> list = catalog_list();
  std::uniform_int_distribution<std::size_t> pick(0, list.size() - 1);
  int triples = 0, resampled = 0;
  double worst_order = INFINITY, worst_rel = 0.0;
  while (triples < 20) {
    const CatalogEntry e = catalog_get(list[pick(rng)].id, {{"pitch", 1.0}});
    const std::vector<Matrix> basis = e.ambient_matrices();
    const auto unit = [&] {
      const Matrix m = oracle::random_combination(rng, basis);
      return (1.0 / m.frobenius_norm()) * m;
    };
    const Matrix a = unit(), b = unit(), c = unit();
    const Matrix bracket = double_bracket(a, b, c);
    // A relative error needs a bracket bounded away from zero.
    if (bracket.frobenius_norm() < 0.1) {
      ++resampled;
      continue;
    }
    const Matrix x = expm(unit(), 0.5);
    const ConvergenceReport r = gamma_convergence(a, b, c, x, grid);
    const Matrix oracle_value = x * bracket;
    const double rel = r.residuals.back() / oracle_value.frobenius_norm();
    worst_order = std::min(worst_order, r.fitted_order);
    worst_rel = std::max(worst_rel, rel);
    v.require(r.fitted_order >= 0.9, e.id + " order");
    v.require(rel <= 1e-2, e.id + " relative error");
    ++triples;
  }
  v.detail << " " << triples << " triples (" << resampled << " resampled), min order " << worst_order
           << ", max rel error at 1e-3 " << worst_rel;
  report(7, "gamma-curve double-bracket limit", v);
}

void criterion8() {
  Verdict v;
  const std::vector<double> grid{1e-2, 1e-3};
  struct Case {
    std::vector<Matrix> gens;
    int target;
    std::span<const int> labels;
  };
  const std::vector<Case> cases{{sphere_gens(), 2, kSphereLabels},
                                {m1_gens(), 4, kM1Labels},
                                {m2_gens(), 5, kM2Labels}};
  int words = 0, exact = 0;
  double worst_factor = INFINITY;
  for (const Case& c : cases) {
    const ChowResult chow = chow_check(c.gens, c.target);
    v.require(chow.controllable, "certificate available");
    for (const BracketWord& w : chow.certificate) {
      const ConvergenceReport r = word_tangency(w, Matrix::identity(c.gens.front().dim()), c.gens, grid);
      ++words;
      if (r.exact) {
        ++exact;
        continue;
      }
      const double factor = r.residuals[0] / r.residuals[1];
      worst_factor = std::min(worst_factor, factor);
      v.require(factor >= 5.0, w.to_string(c.labels) + " factor");
    }
  }
  v.detail << " " << words << " words, " << exact << " exact, min decrease per decade " << worst_factor;
  report(8, "word-flow tangency", v);
}

void criterion9() {
  Verdict v;
  const double h = 1e-4;
  const ChowResult sphere = chow_check(sphere_gens(), 2);
  const ChowResult m1 = chow_check(m1_gens(), 4);
  const JacobianRank a = phi_jacobian_rank(sphere.certificate, Matrix::identity(3), sphere_gens(), h);
  const JacobianRank b = phi_jacobian_rank(m1.certificate, Matrix::identity(4), m1_gens(), h);
  v.require(a.rank == 2, "sphere rank 2");
  v.require(b.rank == 4, "screw rank 4");
  v.require(a.smallest_retained_ratio >= 1e3 * kDefaultTol, "sphere conditioning");
  v.require(b.smallest_retained_ratio >= 1e3 * kDefaultTol, "screw conditioning");
  v.detail << " ranks " << a.rank << " and " << b.rank << ", smallest ratios "
           << a.smallest_retained_ratio << " and " << b.smallest_retained_ratio;
  report(9, "phi-map Jacobian rank", v);
}

void criterion10() {
  Verdict v;
  const auto results = props::run_all(20240611, 60);
  int total = 0;
  for (const props::PropertyResult& r : results) {
    total += r.cases;
    v.require(r.failures == 0, r.name + ": " + r.first_failure);
  }
  v.require(total >= 200, "at least 200 cases");
  v.detail << " " << results.size() << " properties, " << total << " cases";
  report(10, "randomized property suites", v);
}

}  // namespace

int main() {
  const auto guarded = [](int number, void (*fn)()) {
    try {
      fn();
    } catch (const std::exception& e) {
      ++g_failures;
      std::printf("FAIL criterion %d: exception: %s\n", number, e.what());
    }
  };
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  guarded(9, criterion9);
  guarded(10, criterion10);
  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
