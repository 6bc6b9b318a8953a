#include <gtest/gtest.h>

#include <random>

#include "c4hz/closedform.hpp"
#include "c4hz/engine.hpp"

using namespace c4hz;

namespace {

const Engine& engine() {
  static Engine e;
  return e;
}

FinAbGroup grp(std::vector<Integer> orders) { return FinAbGroup::from_orders(orders); }

NamedClass cls(long ea, long el, long eu, long ev, bool desusp = false) {
  auto c = classify(desusp, ea, el, eu, ev);
  if (!c) throw std::logic_error("not a basis class");
  return *c;
}

Element mul(const Element& x, const Element& y) { return multiply(x, y); }

// Top-level basis elements of every degree in a box, for sampling.
std::vector<NamedClass> top_classes(long r) {
  std::vector<NamedClass> out;
  for (long a = -2 * r; a <= 2 * r; ++a)
    for (long b = -r; b <= r; ++b)
      for (long c = -r; c <= r; ++c) {
        auto bs = basis_at({a, b, c}, Subgroup::C4);
        out.insert(out.end(), bs.top.begin(), bs.top.end());
      }
  return out;
}

}  // namespace

TEST(ClosedForm, NamedBases) {
  EXPECT_EQ(basis_at({0, -2, 0}, Subgroup::C4).names(), std::vector<std::string>{"a_a^2"});
  auto ul = basis_at({2, 0, -1}, Subgroup::C4);
  EXPECT_EQ(ul.group, grp({0}));
  EXPECT_EQ(ul.names(), std::vector<std::string>{"u_l"});
  EXPECT_EQ(basis_at({2, 0, -1}, Subgroup::C2).names(), std::vector<std::string>{"u_2s"});
  EXPECT_EQ(basis_at({-3, 3, 0}, Subgroup::C4).names(), std::vector<std::string>{"tr(e_3a)"});
}

TEST(ClosedForm, GeneratorDegrees) {
  EXPECT_EQ(a_alpha().degree(), (Degree{0, -1, 0}));
  EXPECT_EQ(a_lambda().degree(), (Degree{0, 0, -1}));
  EXPECT_EQ(u_2alpha().degree(), (Degree{2, -2, 0}));
  EXPECT_EQ(u_lambda().degree(), (Degree{2, 0, -1}));
  EXPECT_EQ(tr_e3alpha().degree(), (Degree{-3, 3, 0}));
}

TEST(ClosedForm, FunctorNumbers) {
  EXPECT_EQ(functor_numbers({-3, 3, 0}), std::vector<int>{24});
  EXPECT_EQ(functor_numbers({1, -1, 0}), std::vector<int>{33});
  EXPECT_EQ(trivial_top_number(*mid_class({1, -1, 0})), 33);
  EXPECT_EQ(functor_numbers({0, 0, 0}), std::vector<int>{1});
}

TEST(ClosedForm, AtMostOneGeneratorOutsideTheExoticFamily) {
  for (long a = -10; a <= 10; ++a)
    for (long b = -6; b <= 6; ++b)
      for (long c = -5; c <= 5; ++c) {
        const auto n = basis_at({a, b, c}, Subgroup::C4).top.size();
        const bool exotic = c >= 2 && a >= 0 && a % 2 == 0 && b == -2 * c - a;
        EXPECT_EQ(n, exotic ? 2u : std::min<std::size_t>(n, 1u)) << Degree{a, b, c}.str();
      }
}

TEST(ClosedForm, AgreesWithEngine) {
  for (long a = -6; a <= 6; ++a)
    for (long b = -4; b <= 4; ++b)
      for (long c = -3; c <= 3; ++c) {
        const Degree d{a, b, c};
        auto x = mackey_at(d);
        auto y = engine().homotopy(d)->mackey;
        EXPECT_TRUE(compare(x, y)) << d.str() << ": " << compare_detail(x, y);
      }
}

TEST(ClosedForm, SatisfiesMackeyAxioms) {
  for (long a = -12; a <= 12; ++a)
    for (long b = -8; b <= 8; ++b)
      for (long c = -6; c <= 6; ++c) {
        auto r = check_axioms(mackey_at({a, b, c}));
        EXPECT_TRUE(r.passed()) << Degree{a, b, c}.str() << ": " << r.failures();
      }
}

TEST(ClosedForm, GoldRelation) {
  auto lhs = multiply(cls(1, 0, 0, 1), a_alpha());
  EXPECT_EQ(lhs, element(cls(0, 1, 1, 0)).scaled(2));
  EXPECT_FALSE(lhs.is_zero());
}

TEST(ClosedForm, ExoticSquareAndCube) {
  const auto x = element(cls(0, 0, 1, -1));  // 2 u_2alpha / u_lambda
  const auto sq = mul(x, x);
  EXPECT_EQ(sq, element(cls(4, -2, 0, 0)) + element(cls(0, 0, 2, -2)));
  // At k = 3 the exotic summand carries a factor 2.
  const auto cube = mul(sq, x);
  EXPECT_EQ(cube, element(cls(6, -3, 0, 0)) + element(cls(0, 0, 3, -3)).scaled(2));
  EXPECT_FALSE(cube.unspecified);
}

TEST(ClosedForm, HalfOrientationTimesEulerClass) {
  EXPECT_EQ(multiply(cls(0, 0, 1, -1), a_alpha()), element(cls(3, -1, 0, 0)));
}

TEST(ClosedForm, TransferClassProducts) {
  const auto t = tr_e3alpha();
  EXPECT_TRUE(multiply(t, a_alpha()).is_zero());
  EXPECT_TRUE(multiply(t, u_2alpha()).is_zero());
  EXPECT_TRUE(multiply(t, u_lambda()).is_zero());
  EXPECT_EQ(multiply(t, a_lambda()), element(tr_e3alpha(0, 0, 1)));
  EXPECT_TRUE(multiply(t, cls(0, 0, 2, -2)).is_zero());
}

TEST(ClosedForm, StructureMaps) {
  auto r = structure_map(element(u_lambda()), StructureMap::res42);
  EXPECT_EQ(r.str(), "u_2s");
  EXPECT_EQ(structure_map(r, StructureMap::tr42), element(u_lambda()).scaled(2));
  auto e2 = Element::basis({-2, 2, 0}, Subgroup::C2, 0);
  EXPECT_EQ(structure_map(e2, StructureMap::tr42).str(), "2 u_2a^-1");
  auto e1 = Element::basis({-1, 1, 0}, Subgroup::C2, 0);
  EXPECT_EQ(structure_map(e1, StructureMap::weyl), e1.scaled(-1));
  EXPECT_THROW(structure_map(element(u_lambda()), StructureMap::tr42), std::invalid_argument);
}

TEST(ClosedForm, CommutativitySigns) {
  EXPECT_EQ(sign({1, 0, 0}, {1, 0, 0}), -1);
  EXPECT_EQ(sign({0, 1, 0}, {0, 1, 0}), -1);
  EXPECT_EQ(sign({0, 0, 1}, {1, 0, 0}), 1);
  EXPECT_EQ(sign({2, -2, 0}, {0, -1, 0}), 1);
  EXPECT_TRUE(commutes_on_the_nose(a_alpha(), a_alpha()));
}

TEST(ClosedForm, ProductIsGradedCommutative) {
  // Property: x y = sign(|x|,|y|) y x whenever both sides are determined.
  auto cs = top_classes(2);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto& x = cs[rng() % cs.size()];
    const auto& y = cs[rng() % cs.size()];
    auto xy = multiply(x, y), yx = multiply(y, x);
    if (xy.unspecified || yx.unspecified) continue;
    EXPECT_EQ(xy, yx.scaled(sign(x.degree(), y.degree()))) << x.str() << " * " << y.str();
  }
}

TEST(ClosedForm, ProductIsAssociative) {
  auto cs = top_classes(1);
  std::mt19937 rng(9);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto x = element(cs[rng() % cs.size()]), y = element(cs[rng() % cs.size()]),
               z = element(cs[rng() % cs.size()]);
    auto l = mul(mul(x, y), z), r = mul(x, mul(y, z));
    if (l.unspecified || r.unspecified) continue;
    EXPECT_EQ(l, r) << x.str() << " " << y.str() << " " << z.str();
  }
}

TEST(ClosedForm, FrobeniusReciprocity) {
  // Property: tr(res(x) y) = x tr(y) for a top class x and a middle class y.
  auto cs = top_classes(2);
  std::mt19937 rng(13);
  int checked = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const auto& x = cs[rng() % cs.size()];
    const Degree d{static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 7) - 3,
                   static_cast<long>(rng() % 5) - 2};
    auto mid = basis_at(d, Subgroup::C2);
    if (mid.lower.empty()) continue;
    const auto y = Element::basis(d, Subgroup::C2, 0);
    auto lhs = structure_map(mul(structure_map(element(x), StructureMap::res42), y), StructureMap::tr42);
    auto rhs = mul(element(x), structure_map(y, StructureMap::tr42));
    if (lhs.unspecified || rhs.unspecified) continue;
    EXPECT_EQ(lhs, rhs) << x.str() << " / " << y.str();
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(ClosedForm, AnswerTableMatchesTopLevel) {
  const auto t = table_answer();
  for (long a = -8; a <= 8; ++a)
    for (long b = -5; b <= 5; ++b)
      for (long c = -4; c <= 4; ++c) {
        const Degree d{a, b, c};
        EXPECT_EQ(t.group_at(d), mackey_at(d).top) << d.str();
      }
}

TEST(ClosedForm, LocalizationsMatchFixtures) {
  for (auto g : {LocGen::a_alpha, LocGen::a_lambda, LocGen::u_2alpha}) {
    const auto table = fixture_for(g);
    for (long a = -4; a <= 4; ++a)
      for (long b = -3; b <= 3; ++b)
        for (long c = -2; c <= 2; ++c) {
          const Degree d{a, b, c};
          auto l = localize(g, d);
          EXPECT_TRUE(l.stable) << name(g) << " " << d.str();
          EXPECT_EQ(l.group, table.group_at(d)) << name(g) << " " << d.str();
        }
  }
}

TEST(ClosedForm, LocGenParsing) {
  EXPECT_EQ(parse_locgen("aa"), LocGen::a_alpha);
  EXPECT_EQ(parse_locgen("al"), LocGen::a_lambda);
  EXPECT_EQ(parse_locgen("u2a"), LocGen::u_2alpha);
  EXPECT_THROW(parse_locgen("ub"), std::invalid_argument);
}

TEST(ClosedForm, FaultHookPerturbsOneDegree) {
  const Degree d{1, 1, 1};
  inject_fault(d);
  EXPECT_FALSE(compare(mackey_at(d), engine().homotopy(d)->mackey));
  EXPECT_TRUE(compare(mackey_at({0, 0, 0}), engine().homotopy({0, 0, 0})->mackey));
  inject_fault(std::nullopt);
  EXPECT_TRUE(compare(mackey_at(d), engine().homotopy(d)->mackey));
}

TEST(ClosedForm, JsonBasisListsLevels) {
  auto j = basis_json({0, -4, 2});
  EXPECT_EQ(j["C4"].size(), 2u);
  EXPECT_EQ(j["C2"].size(), 1u);
  EXPECT_TRUE(j.contains("functors"));
}
