#include <gtest/gtest.h>

#include <random>

#include "c4hz/mackey.hpp"

using namespace c4hz;

namespace {

// Z/2 at the top with zero mid and bottom: the smallest functor with a nontrivial top only.
MackeyC4 top_z2() {
  MackeyC4 m = MackeyC4::zero();
  m.top = FinAbGroup::from_orders({2});
  m.res42 = IntMatrix(0, 1);
  m.tr42 = IntMatrix(1, 0);
  return m;
}

}  // namespace

TEST(Mackey, ConstantFunctorSatisfiesAxioms) {
  auto m = MackeyC4::constant_z();
  EXPECT_TRUE(check_axioms(m).passed()) << check_axioms(m).failures();
  EXPECT_EQ(m.res42(0, 0), 1);
  EXPECT_EQ(m.tr42(0, 0), 2);
}

TEST(Mackey, PermutationFunctorsSatisfyAxioms) {
  for (auto h : kSubgroups) {
    auto m = permutation_mackey(h);
    EXPECT_TRUE(check_axioms(m).passed()) << name(h) << ": " << check_axioms(m).failures();
  }
  // Z[C4/e]: ranks 1, 2, 4 at levels C4, C2, e.
  auto free = permutation_mackey(Subgroup::e);
  EXPECT_EQ(free.top.free_rank, 1);
  EXPECT_EQ(free.mid.free_rank, 2);
  EXPECT_EQ(free.bot.free_rank, 4);
}

TEST(Mackey, AxiomCheckRejectsBrokenTransfer) {
  auto m = MackeyC4::constant_z();
  m.tr42(0, 0) = 3;
  EXPECT_FALSE(check_axioms(m).passed());
  auto n = MackeyC4::constant_z();
  n.weyl_bot(0, 0) = -1;  // res21 image no longer Weyl-fixed
  EXPECT_FALSE(check_axioms(n).passed());
}

TEST(Mackey, DirectSumIsCanonicallyOrdered) {
  auto s = direct_sum(MackeyC4::constant_z(), top_z2());
  ASSERT_EQ(s.top.num_generators(), 2u);
  EXPECT_EQ(s.top.orders()[0], 2);
  EXPECT_EQ(s.top.orders()[1], 0);
  EXPECT_TRUE(check_axioms(s).passed()) << check_axioms(s).failures();
  EXPECT_TRUE(compare(s, direct_sum(top_z2(), MackeyC4::constant_z())));
}

TEST(Mackey, CompareDetectsStructureMapDifferences) {
  auto a = MackeyC4::constant_z();
  auto b = MackeyC4::constant_z();
  b.res42(0, 0) = 2;
  b.tr42(0, 0) = 1;
  EXPECT_FALSE(compare(a, b));
  EXPECT_FALSE(compare_detail(a, b).empty());
  EXPECT_TRUE(compare_detail(a, a).empty());
}

TEST(Mackey, CompareIsInvariantUnderBasisChange) {
  // Z + Z/2 at the top, rewritten by the automorphism (z, t) -> (z, t + z mod 2).
  auto m = direct_sum(MackeyC4::constant_z(), top_z2());
  auto n = m;
  IntMatrix g{{1, 1}, {0, 1}};  // torsion coordinate first
  n.tr42 = reduce_rows(g * m.tr42, m.orders(Subgroup::C4));
  IntMatrix ginv{{1, -1}, {0, 1}};
  n.res42 = m.res42 * ginv;
  EXPECT_TRUE(check_axioms(n).passed()) << check_axioms(n).failures();
  EXPECT_TRUE(compare(m, n));
}

TEST(Mackey, JsonRoundTrip) {
  std::vector<MackeyC4> samples = {MackeyC4::zero(), MackeyC4::constant_z(), top_z2(),
                                   permutation_mackey(Subgroup::e), permutation_mackey(Subgroup::C2)};
  for (const auto& m : samples) {
    auto j = to_json(m);
    auto back = mackey_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(to_json(back), j);
  }
}

TEST(Mackey, JsonKeepsLargeIntegersExact) {
  IntMatrix m(1, 1);
  m(0, 0) = Integer("123456789012345678901234567890");
  auto back = matrix_from_json(nlohmann::json::parse(matrix_to_json(m).dump()), 1, 1);
  EXPECT_EQ(back, m);
}

TEST(Mackey, JsonRejectsWrongShape) {
  auto j = to_json(MackeyC4::constant_z());
  j["res42"] = nlohmann::json::array();
  EXPECT_THROW(mackey_from_json(j), std::invalid_argument);
}

TEST(Mackey, OrbitsOfCyclicPermutation) {
  std::vector<std::size_t> cyc{1, 2, 3, 0};
  EXPECT_EQ(orbits(cyc, Subgroup::C4).size(), 1u);
  EXPECT_EQ(orbits(cyc, Subgroup::C2).size(), 2u);
  EXPECT_EQ(orbits(cyc, Subgroup::e).size(), 4u);
  EXPECT_EQ(act(cyc, 0, 3), 3u);
  EXPECT_EQ(permutation_matrix(cyc, 4), IntMatrix::identity(4));
}

TEST(Mackey, RestrictionThenTransferIsIndexOnLattices) {
  // Property: for every permutation module built from orbits, tr o res = [H:K] on the fixed lattice.
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::size_t> perm;
    const int cells = 1 + static_cast<int>(rng() % 4);
    for (int c = 0; c < cells; ++c) {
      const std::size_t base = perm.size();
      const int size = std::array<int, 3>{1, 2, 4}[rng() % 3];
      for (int i = 0; i < size; ++i) perm.push_back(base + static_cast<std::size_t>((i + 1) % size));
    }
    for (auto [from, to] : {std::pair{Subgroup::C4, Subgroup::C2}, std::pair{Subgroup::C2, Subgroup::e},
                            std::pair{Subgroup::C4, Subgroup::e}}) {
      IntMatrix r = res_lattice(perm, from, to);
      IntMatrix t = tr_lattice(perm, to, from);
      const long index = order(from) / order(to);
      EXPECT_EQ(t * r, IntMatrix::identity(r.cols()).scaled(index));
    }
  }
}

TEST(Mackey, ChainComplexValidationRejectsNonComplex) {
  MackeyChainComplex c;
  c.set_term(0, {0});
  c.set_term(1, {0});
  c.set_term(2, {0});
  c.set_diff(1, IntMatrix{{1}});
  c.set_diff(2, IntMatrix{{1}});
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Mackey, ChainComplexValidationRejectsNonEquivariantDifferential) {
  MackeyChainComplex c;
  c.set_term(0, {1, 0});
  c.set_term(1, {1, 0});
  c.set_diff(1, IntMatrix{{1, 0}, {0, 0}});
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Mackey, HomologyOfOrbitIsPermutationFunctor) {
  MackeyChainComplex c;
  c.set_term(0, {1, 2, 3, 0});
  auto h = homology_of_complex(c, 0);
  EXPECT_TRUE(compare(h, permutation_mackey(Subgroup::e)));
}
