#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "symctl/catalog.hpp"
#include "symctl/lts.hpp"

using namespace symctl;

namespace {

std::vector<Matrix> goe() { return {fx::a1(), fx::a2(), fx::a3(), fx::a4(), fx::a5(), fx::a6()}; }
std::vector<Matrix> se3() { return {fx::e1(), fx::e2(), fx::e3(), fx::e4(), fx::e5(), fx::e6()}; }

bool contains_subset(const std::vector<std::vector<std::size_t>>& subsets,
                     const std::vector<std::size_t>& wanted) {
  return std::find(subsets.begin(), subsets.end(), wanted) != subsets.end();
}

}  // namespace

TEST(Closure, SphereGenerators) {
  const std::vector<Matrix> gens{fx::X1(), fx::X2()};
  const ClosureReport r = lts_closure(gens, 2);
  EXPECT_EQ(r.dim, 2u);
  EXPECT_LE(r.depth, 2);
  EXPECT_TRUE(r.controllable);
  EXPECT_TRUE(r.stabilized);
  EXPECT_TRUE(r.basis.exact());
}

TEST(Closure, SingleGenerator) {
  const std::vector<Matrix> gens{fx::Z8()};
  const ClosureReport r = lts_closure(gens, 0);
  EXPECT_EQ(r.dim, 1u);
  EXPECT_EQ(r.depth, 1);
  EXPECT_TRUE(r.stabilized);
}

TEST(Closure, GoeSuggestedControlsStayBlockDiagonal) {
  const std::vector<Matrix> gens{fx::a1(), fx::a3(), fx::a4()};
  const ClosureReport r = lts_closure(gens, 6);
  EXPECT_EQ(oracle::closure(gens).size(), 4u);
  EXPECT_EQ(r.dim, 4u);
  EXPECT_FALSE(r.controllable);
  EXPECT_TRUE(r.stabilized);
  for (const Matrix& m : r.basis.members()) {
    EXPECT_EQ(m(0, 2), Complex(0.0));
    EXPECT_EQ(m(1, 2), Complex(0.0));
  }
  const std::vector<std::vector<int>> blocks{{1, 2}, {3}};
  EXPECT_EQ(invariant_blocks(r.basis.members()), blocks);
}

TEST(Closure, GoeAlternativeControlsReachEverything) {
  const std::vector<Matrix> gens{fx::a1(), fx::a4(), fx::a6()};
  EXPECT_EQ(oracle::closure(gens).size(), 6u);
  const ClosureReport r = lts_closure(gens, 6);
  EXPECT_EQ(r.dim, 6u);
  EXPECT_TRUE(r.controllable);
}

TEST(Closure, WordsReproduceBasisMembers) {
  const std::vector<Matrix> gens{fx::a1(), fx::a4(), fx::a6()};
  const ClosureReport r = lts_closure(gens, 0);
  ASSERT_EQ(r.words.size(), r.basis.members().size());
  for (std::size_t k = 0; k < r.words.size(); ++k) {
    EXPECT_EQ(r.words[k].evaluate(gens), r.basis.members()[k]);
    EXPECT_EQ(r.words[k].length() % 2, 1);
  }
}

TEST(Closure, DepthLimitIsReported) {
  const std::vector<Matrix> gens{fx::a1(), fx::a4(), fx::a6()};
  const ClosureReport r = lts_closure(gens, 0, kDefaultTol, 1);
  EXPECT_FALSE(r.stabilized);
  EXPECT_EQ(r.dim, 3u);
}

TEST(Closure, RejectsBadInput) {
  EXPECT_THROW(lts_closure(std::vector<Matrix>{}, 1), std::invalid_argument);
  const std::vector<Matrix> mixed{fx::X1(), fx::e1()};
  EXPECT_THROW(lts_closure(mixed, 1), std::invalid_argument);
}

TEST(Closure, MatchesUnrestrictedOracleOnCatalogSubsets) {
  for (const CatalogListing& l : catalog_list()) {
    const CatalogEntry e = catalog_get(l.id, {{"pitch", 1.0}});
    const std::vector<Matrix> gens = e.generators();
    EXPECT_EQ(lts_closure(gens, 0).dim, oracle::closure(gens).size()) << l.id;
  }
}

TEST(Chow, SeThreeFourDimensional) {
  const std::vector<Matrix> gens{fx::e2(), fx::e4(), fx::e5()};
  const ChowResult c = chow_check(gens, 4);
  EXPECT_TRUE(c.controllable);
  ASSERT_EQ(c.certificate.size(), 4u);
  const std::vector<int> labels{2, 4, 5};
  bool found = false;
  for (const BracketWord& w : c.certificate) {
    if (w.to_string(labels) == "[[2,4],5]") {
      found = true;
      EXPECT_EQ(w.evaluate(gens), fx::e1());
    }
  }
  EXPECT_TRUE(found);
}

TEST(Chow, SingleTranslationIsNotEnough) {
  const std::vector<Matrix> gens{fx::e1()};
  const ChowResult c = chow_check(gens, 4);
  EXPECT_FALSE(c.controllable);
  EXPECT_TRUE(c.certificate.empty());
}

TEST(Chow, SuThreeModSoThree) {
  const std::vector<Matrix> gens{fx::Z1(), fx::Z3(), fx::Z4(), fx::Z8()};
  EXPECT_EQ(oracle::closure(gens).size(), 5u);
  const ChowResult c = chow_check(gens, 5);
  EXPECT_TRUE(c.controllable);
  const std::vector<int> labels{1, 3, 4, 8};
  bool found = false;
  for (const BracketWord& w : c.certificate) {
    if (w.to_string(labels) == "[[1,3],4]") {
      found = true;
      EXPECT_EQ(w.evaluate(gens), 2.0 * fx::Z6());
    }
  }
  EXPECT_TRUE(found);
}

TEST(Subspace, TranslationRotationPair) {
  const std::vector<Matrix> basis{fx::e3(), fx::e4()};
  EXPECT_TRUE(is_lts_subspace(basis).closed);
}

TEST(Subspace, SingleTranslation) {
  const std::vector<Matrix> basis{fx::e1()};
  EXPECT_TRUE(is_lts_subspace(basis).closed);
}

TEST(Subspace, SphereTangent) {
  const std::vector<Matrix> basis{fx::X1(), fx::X2()};
  EXPECT_TRUE(is_lts_subspace(basis).closed);
  EXPECT_EQ(double_bracket(fx::X1(), fx::X2(), fx::X1()), fx::X2());
  EXPECT_EQ(double_bracket(fx::X1(), fx::X2(), fx::X2()), -fx::X1());
}

TEST(Subspace, WitnessForOpenSet) {
  const std::vector<Matrix> basis{fx::a1(), fx::a4()};
  const SubspaceCheck s = is_lts_subspace(basis);
  EXPECT_FALSE(s.closed);
  ASSERT_TRUE(s.witness.has_value());
  const Matrix v = double_bracket(basis[s.witness->a], basis[s.witness->b], basis[s.witness->c]);
  EXPECT_NEAR(s.witness->residual, oracle::residual(v, basis), 1e-12);
  EXPECT_GT(s.witness->residual, 0.1);
}

TEST(Axioms, LieAlgebraPassesExactly) {
  const std::vector<Matrix> basis{fx::X1(), fx::X2(), fx::X3()};
  const AxiomReport r = verify_lts_axioms(basis);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.alternating_residual, 0.0);
  EXPECT_EQ(r.cyclic_residual, 0.0);
  EXPECT_EQ(r.derivation_residual, 0.0);
}

TEST(Axioms, SymmetricMatricesPassExactly) {
  const AxiomReport r = verify_lts_axioms(goe());
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.derivation_residual, 0.0);
}

TEST(Axioms, PerturbedProductIsDetected) {
  const std::vector<Matrix> basis{fx::a1(), fx::a4()};
  const double eps = 1e-3;
  AxiomOptions options;
  options.product = [eps](const Matrix& a, const Matrix& b, const Matrix& c) {
    return double_bracket(a, b, c) + eps * (a * b * c);
  };
  const AxiomReport r = verify_lts_axioms(basis, options);
  EXPECT_FALSE(r.cyclic);
  EXPECT_GT(r.cyclic_residual, 0.3 * eps);
  EXPECT_LT(r.cyclic_residual, 30.0 * eps);
}

TEST(Axioms, QuintupleCap) {
  std::vector<Matrix> basis;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) basis.push_back(Matrix::unit(3, r, c));
  }
  AxiomOptions options;
  EXPECT_FALSE(verify_lts_axioms(basis, options).derivation_checked);
  EXPECT_FALSE(verify_lts_axioms(basis, options).all_passed());
  options.lift_cap = true;
  const AxiomReport lifted = verify_lts_axioms(basis, options);
  EXPECT_TRUE(lifted.derivation_checked);
  EXPECT_TRUE(lifted.all_passed());
}

TEST(MinimalGenerators, FourDimensionalScrewSpace) {
  const std::vector<Matrix> ambient{fx::e1(), fx::e2(), fx::e4(), fx::e5()};
  const auto subsets = minimal_generators(ambient, 4, SearchMode::kExhaustive);
  ASSERT_FALSE(subsets.empty());
  EXPECT_EQ(subsets.front().size(), 3u);
  EXPECT_TRUE(contains_subset(subsets, {1, 2, 3}));
  for (const auto& s : subsets) {
    std::vector<Matrix> gens;
    for (std::size_t i : s) gens.push_back(ambient[i]);
    EXPECT_EQ(oracle::closure(gens).size(), 4u);
  }
}

TEST(MinimalGenerators, FiveDimensionalSpace) {
  const std::vector<Matrix> ambient{fx::e1(), fx::e2(), fx::e3(), fx::e4(), fx::e5()};
  const auto subsets = minimal_generators(ambient, 5, SearchMode::kExhaustive);
  ASSERT_FALSE(subsets.empty());
  EXPECT_EQ(subsets.front().size(), 4u);
  EXPECT_TRUE(contains_subset(subsets, {0, 2, 3, 4}));
}

TEST(MinimalGenerators, SymmetricMatrices) {
  const auto subsets = minimal_generators(goe(), 6, SearchMode::kExhaustive);
  ASSERT_FALSE(subsets.empty());
  EXPECT_EQ(subsets.front().size(), 3u);
  EXPECT_TRUE(contains_subset(subsets, {0, 3, 5}));
  EXPECT_FALSE(contains_subset(subsets, {0, 2, 3}));
}

TEST(MinimalGenerators, GreedyReachesTarget) {
  const auto subsets = minimal_generators(goe(), 6, SearchMode::kGreedy);
  ASSERT_EQ(subsets.size(), 1u);
  std::vector<Matrix> gens;
  for (std::size_t i : subsets.front()) gens.push_back(goe()[i]);
  EXPECT_EQ(lts_closure(gens, 6).dim, 6u);
}

TEST(MinimalGenerators, RejectsNonLtsAmbient) {
  const std::vector<Matrix> ambient{fx::a1(), fx::a4()};
  EXPECT_THROW(minimal_generators(ambient, 2, SearchMode::kExhaustive), std::invalid_argument);
}

TEST(MinimalGenerators, UnreachableTargetGivesEmpty) {
  EXPECT_TRUE(minimal_generators(se3(), 7, SearchMode::kExhaustive).empty());
}

TEST(InvariantBlocks, FullCoupling) {
  const std::vector<Matrix> mats{fx::a4(), fx::a6()};
  const std::vector<std::vector<int>> one{{1, 2, 3}};
  EXPECT_EQ(invariant_blocks(mats), one);
}
