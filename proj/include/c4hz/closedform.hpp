#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "c4hz/chains.hpp"

namespace c4hz {

/// A monomial theta * Sigma^{-desusp} * a_alpha^ea a_lambda^el u_2alpha^eu u_lambda^ev of the top level,
/// tagged with the summand (1 = positive cone, 2..17 = the remaining lines of the answer) it belongs to.
struct NamedClass {
  int theta = 1;
  bool desusp = false;
  long ea = 0, el = 0, eu = 0, ev = 0;
  int summand = 0;

  Degree degree() const;
  /// 0 for a free generator.
  Integer order() const;
  bool is_free() const { return order() == 0; }
  std::string str() const;
  std::string latex() const;
  bool same_monomial(const NamedClass& o) const {
    return theta == o.theta && desusp == o.desusp && ea == o.ea && el == o.el && eu == o.eu && ev == o.ev;
  }
};

/// The basis element with these exponents, if any; theta and summand are filled in.
std::optional<NamedClass> classify(bool desusp, long ea, long el, long eu, long ev);
/// Shorthand constructors for the positive-cone generators.
NamedClass a_alpha();
NamedClass a_lambda();
NamedClass u_2alpha();
NamedClass u_lambda();
/// tr^4_2(e_{3 alpha}) a_alpha^{-q} u_2alpha^{-p} a_lambda^r.
NamedClass tr_e3alpha(long q = 0, long p = 0, long r = 0);

/// Generator of the C4/C2 or C4/e level, named over the C2 alphabet (u_2sigma, a_2sigma, e_alpha)
/// or the underlying alphabet (e_alpha bar, u_lambda bar).
struct LevelClass {
  Subgroup level = Subgroup::C2;
  int theta = 1;
  bool desusp = false;
  long u = 0, a = 0, e = 0;  // u_2sigma, a_2sigma, e_alpha exponents; at e: u_lambda bar and e_alpha bar
  Integer order() const;
  std::string str() const;
};

std::optional<LevelClass> mid_class(const Degree& d);
std::optional<LevelClass> bot_class(const Degree& d);

/// Named generators of one level, in canonical order (torsion ascending, then free).
struct LevelBasis {
  FinAbGroup group;
  std::vector<NamedClass> top;  // filled for Subgroup::C4
  std::vector<LevelClass> lower;
  std::vector<std::string> names() const;
};

LevelBasis basis_at(const Degree& d, Subgroup level);

/// Which functor of the list (1)-(38) a top generator spans, and its restriction and transfer.
struct FunctorInfo {
  int number = 0;
  bool has_mid = false;
  long r42 = 0, t42 = 0;
};

FunctorInfo functor_of(const NamedClass& x);
/// Number of the trivial-top functor (33)-(38) carrying a mid class nobody at the top restricts to.
int trivial_top_number(const LevelClass& mid);
/// The functors occupying a degree, by number.
std::vector<int> functor_numbers(const Degree& d);

MackeyC4 mackey_at(const Degree& d);
/// Test hook: perturb mackey_at at one degree (std::nullopt clears it).
void inject_fault(const std::optional<Degree>& d);

/// An element of one level of pi_d, as coefficients on basis_at(d, level).
struct Element {
  Degree degree;
  Subgroup level = Subgroup::C4;
  std::vector<Integer> coeffs;
  bool unspecified = false;

  static Element zero(const Degree& d, Subgroup level = Subgroup::C4);
  static Element basis(const Degree& d, Subgroup level, std::size_t i);
  bool is_zero() const;
  Element operator+(const Element& o) const;
  Element scaled(const Integer& s) const;
  bool operator==(const Element& o) const;
  std::string str() const;
};

Element element(const NamedClass& x);
Element element(const LevelClass& x, const Degree& d);

/// Products by the rewrite rules; `unspecified` is set where the rules do not determine the answer.
Element multiply(const NamedClass& x, const NamedClass& y);
Element multiply(const Element& x, const Element& y);

enum class StructureMap { res42, tr42, res21, tr21, weyl };
const char* name(StructureMap m);
Element structure_map(const Element& x, StructureMap which);

/// Sign (-1)^{im}(-1)^{jn} of graded commutativity for degrees i+j alpha+k lambda and m+n alpha+o lambda.
int sign(const Degree& x, const Degree& y);
/// Whether x*y = y*x holds strictly: either the sign is +1 or the product is 2-torsion.
bool commutes_on_the_nose(const NamedClass& x, const NamedClass& y);

// Fixture tables. Each line is a family of monomials cut out by a predicate on the exponents, which
// returns the order of the class (0 = Z) when the monomial belongs to the line.

struct FixtureLine {
  std::string latex;
  int theta = 1;
  bool desusp = false;
  std::function<std::optional<Integer>(long ea, long el, long eu, long ev)> order;
};

struct FixtureTable {
  std::string title;
  std::vector<FixtureLine> lines;
  /// Classes present at d; NamedClass::summand holds the line index.
  std::vector<NamedClass> classes_at(const Degree& d) const;
  FinAbGroup group_at(const Degree& d) const;
  std::string latex() const;
};

FixtureTable table_hh();
FixtureTable table_hphi2();
FixtureTable table_hphi4();
FixtureTable table_u2alpha_local();
/// The answer itself, one line per summand.
FixtureTable table_answer();

enum class LocGen { a_alpha, a_lambda, u_2alpha };
LocGen parse_locgen(const std::string& s);
const char* name(LocGen g);
NamedClass class_of(LocGen g);
FixtureTable fixture_for(LocGen g);

/// Colimit of multiplication by g along the ray through d: pi_{d + k deg(g)}, k -> infinity.
struct Localized {
  Degree degree;
  FinAbGroup group;
  std::vector<std::string> representatives;  // names of classes x/g^k generating the colimit
  bool stable = true;
};

Localized localize(LocGen g, const Degree& d, int depth = 16);

std::string latex_line(const Degree& d);
nlohmann::json basis_json(const Degree& d);

}  // namespace c4hz
