#include "c4hz/closedform.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace c4hz {

namespace {

bool is_even(long x) { return x % 2 == 0; }

// Canonical generator order: torsion ascending, then free; ties broken by summand and exponents.
bool canonical_less(const NamedClass& x, const NamedClass& y) {
  const Integer ox = x.order(), oy = y.order();
  if ((ox == 0) != (oy == 0)) return oy == 0;
  if (ox != oy) return ox < oy;
  if (x.summand != y.summand) return x.summand < y.summand;
  return x.eu < y.eu;
}

std::string power(const std::string& sym, long e) {
  if (e == 0) return "";
  if (e == 1) return sym;
  return sym + "^" + std::to_string(e);
}

std::string latex_power(const std::string& sym, long e) {
  if (e == 0) return "";
  if (e == 1) return sym;
  return sym + "^{" + std::to_string(e) + "}";
}

std::string join_words(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

// Solves deg(monomial) = d for a one-parameter family in u_2alpha exponent.
template <class F>
void for_each_monomial(const Degree& d, bool desusp, F&& f) {
  const long s = desusp ? 1 : 0;
  if (!is_even(d.a + s)) return;
  const long total = (d.a + s) / 2;  // eu + ev
  const long span = std::abs(d.a) + std::abs(d.b) + std::abs(d.c) + 8;
  for (long eu = -span; eu <= span; ++eu) {
    const long ev = total - eu;
    const long ea = -d.b - 2 * eu;
    const long el = -d.c - ev;
    f(ea, el, eu, ev);
  }
}

std::optional<Degree> g_fault;
std::mutex g_fault_mu;

}  // namespace

// ---------------------------------------------------------------- named classes

Degree NamedClass::degree() const {
  return {2 * eu + 2 * ev - (desusp ? 1 : 0), -ea - 2 * eu, -el - ev};
}

Integer NamedClass::order() const {
  switch (summand) {
    case 1:
      if (ea == 0) return el == 0 ? 0 : 4;
      return 2;
    case 2:
    case 3:
    case 4:
    case 5:
    case 6:
      return 0;
    case 8:
    case 9:
    case 17:
      return 4;
    default:
      return 2;
  }
}

std::string NamedClass::str() const {
  std::vector<std::string> w;
  if (theta != 1) w.push_back(std::to_string(theta));
  if (summand == 14) {
    w.push_back("tr(e_3a)");
    w.push_back(power("a_a", ea + 1));
    w.push_back(power("u_2a", eu + 1));
    w.push_back(power("a_l", el));
    return join_words(w);
  }
  if (desusp) w.push_back("Sigma^-1");
  w.push_back(power("a_a", ea));
  w.push_back(power("a_l", el));
  w.push_back(power("u_2a", eu));
  w.push_back(power("u_l", ev));
  std::string s = join_words(w);
  return s.empty() ? "1" : s;
}

std::string NamedClass::latex() const {
  std::vector<std::pair<std::string, long>> f;
  std::string lead = theta != 1 ? std::to_string(theta) : "";
  if (summand == 14) {
    lead += "tr^4_2(e_{3\\alpha})";
    f = {{"a_{\\alpha}", ea + 1}, {"u_{2\\alpha}", eu + 1}, {"a_{\\lambda}", el}};
  } else {
    if (desusp) lead += "\\Sigma^{-1}";
    f = {{"a_{\\alpha}", ea}, {"a_{\\lambda}", el}, {"u_{2\\alpha}", eu}, {"u_{\\lambda}", ev}};
  }
  std::string num, den;
  for (const auto& [sym, e] : f) {
    if (e > 0) num += latex_power(sym, e);
    if (e < 0) den += latex_power(sym, -e);
  }
  if (!den.empty()) return lead + "\\frac{" + (num.empty() ? "1" : num) + "}{" + den + "}";
  if (num.empty() && lead.empty()) return "1";
  return lead + num;
}

std::optional<NamedClass> classify(bool desusp, long ea, long el, long eu, long ev) {
  auto make = [&](int summand, int theta) {
    NamedClass c;
    c.theta = theta;
    c.desusp = desusp;
    c.ea = ea;
    c.el = el;
    c.eu = eu;
    c.ev = ev;
    c.summand = summand;
    return std::optional<NamedClass>(c);
  };
  if (!desusp) {
    if (ea >= 0 && el >= 0 && eu >= 0 && ev >= 0 && (ea <= 1 || ev == 0)) return make(1, 1);
    if (ea == 0 && el == 0) {
      if (eu <= -1 && ev == 0) return make(2, 2);
      if (eu <= -1 && ev >= 1) return make(3, 1);
      if (eu >= 1 && ev == -1) return make(4, 2);
      if (eu <= 0 && ev <= -1) return make(5, 4);
      if (eu >= 1 && ev <= -2) return make(6, 4);
    }
    if (ea >= 3 && el <= -1 && eu >= 0 && ev == 0) return make(13, 1);
    if (ea == 1 && ev >= 1 && eu <= -1 && el >= 0) return make(15, 1);
    if (ea == 0 && ev == 0 && eu <= -1 && el >= 1) return make(16, 2);
    if (ea == 0 && ev >= 1 && eu <= -1 && el >= 1) return make(17, 1);
    return std::nullopt;
  }
  if (ea == 1 && el <= -1 && ev <= -1) return make(7, 1);
  if (ea == 0 && el <= -1 && ev <= -2) return make(8, 1);
  if (ea == 0 && el <= -1 && ev == -1) return make(eu <= 0 ? 9 : 10, 1);
  if (ea == 1 && el <= -1 && eu <= -1 && ev == 0) return make(11, 1);
  if (ea == 0 && el <= -1 && eu <= -1 && ev == 0) return make(12, 1);
  if (ea <= -1 && eu <= -1 && ev == 0) return make(14, 1);
  return std::nullopt;
}

NamedClass a_alpha() { return *classify(false, 1, 0, 0, 0); }
NamedClass a_lambda() { return *classify(false, 0, 1, 0, 0); }
NamedClass u_2alpha() { return *classify(false, 0, 0, 1, 0); }
NamedClass u_lambda() { return *classify(false, 0, 0, 0, 1); }
NamedClass tr_e3alpha(long q, long p, long r) { return *classify(true, -1 - q, r, -1 - p, 0); }

// ---------------------------------------------------------------- lower levels

Integer LevelClass::order() const {
  if (level == Subgroup::e) return 0;
  if (desusp) return 2;
  if (a > 0) return 2;
  return 0;
}

std::string LevelClass::str() const {
  std::vector<std::string> w;
  if (level == Subgroup::e) {
    w.push_back(power("eb_a", e));
    w.push_back(power("ub_l", u));
  } else {
    if (theta != 1) w.push_back(std::to_string(theta));
    if (desusp) w.push_back("Sigma^-1");
    w.push_back(power("u_2s", u));
    w.push_back(power("a_2s", a));
    w.push_back(power("e_a", e));
  }
  std::string s = join_words(w);
  return s.empty() ? "1" : s;
}

std::optional<LevelClass> mid_class(const Degree& d) {
  const long m = d.a + d.b, n = d.c;
  LevelClass c;
  c.level = Subgroup::C2;
  c.e = d.b;
  if (n <= 0 && m == -2 * n) {
    c.u = -n;
    return c;
  }
  if (m >= 0 && is_even(m) && n < -m / 2) {
    c.u = m / 2;
    c.a = -n - m / 2;
    return c;
  }
  if (m <= -2 && is_even(m) && n == -m / 2) {
    c.theta = 2;
    c.u = m / 2;
    return c;
  }
  if (m <= -3 && !is_even(m)) {
    const long i = (-1 - m) / 2, j = n - i;
    if (j >= 1) {
      c.desusp = true;
      c.u = -i;
      c.a = -j;
      return c;
    }
  }
  return std::nullopt;
}

std::optional<LevelClass> bot_class(const Degree& d) {
  if (d.dim() != 0) return std::nullopt;
  LevelClass c;
  c.level = Subgroup::e;
  c.e = d.b;
  c.u = -d.c;
  return c;
}

std::vector<std::string> LevelBasis::names() const {
  std::vector<std::string> out;
  for (const auto& t : top) out.push_back(t.str());
  for (const auto& l : lower) out.push_back(l.str());
  return out;
}

LevelBasis basis_at(const Degree& d, Subgroup level) {
  LevelBasis b;
  if (level == Subgroup::C4) {
    for (bool s : {false, true})
      for_each_monomial(d, s, [&](long ea, long el, long eu, long ev) {
        if (auto c = classify(s, ea, el, eu, ev)) b.top.push_back(*c);
      });
    std::sort(b.top.begin(), b.top.end(), canonical_less);
    std::vector<Integer> orders;
    for (const auto& c : b.top) orders.push_back(c.order());
    b.group = FinAbGroup::from_orders(orders);
    return b;
  }
  auto c = level == Subgroup::C2 ? mid_class(d) : bot_class(d);
  if (c) {
    b.lower.push_back(*c);
    b.group = FinAbGroup::from_orders({c->order()});
  }
  return b;
}

// ---------------------------------------------------------------- Mackey structure

FunctorInfo functor_of(const NamedClass& x) {
  auto covering = [](int n, long r, long t) { return FunctorInfo{n, true, r, t}; };
  auto top_only = [](int n) { return FunctorInfo{n, false, 0, 0}; };
  switch (x.summand) {
    case 1:
      if (x.ea == 0) return x.el == 0 ? covering(1, 1, 2) : covering(2, 1, 2);
      return top_only(x.el == 0 ? 3 : 4);
    case 2:
      return covering(5, 2, 1);
    case 3:
      return covering(6, 1, 2);
    case 4:
      return covering(7, 1, 2);
    case 5:
      return covering(8, 2, 1);
    case 6:
      return covering(9, 2, 1);
    case 7:
      return x.el == -1 ? covering(11, 0, 1) : top_only(10);
    case 8:
      return covering(12, 1, 2);
    case 9:
      return covering(13, 1, 2);
    case 10:
      return covering(14, 1, 0);
    case 11:
      return x.el == -1 ? covering(15, 0, 1) : top_only(16);
    case 12:
      return top_only(17);
    case 13: {
      const long i = x.ea, j = -x.el;
      if (j == 1) return top_only(18);
      if (i == 3) return covering(19, 1, 0);
      if (is_even(i)) {
        if (j == i / 2) return top_only(22);
        return top_only(j > i / 2 ? 20 : 23);
      }
      return j >= (i + 1) / 2 ? covering(21, 0, 0) : top_only(23);
    }
    case 14: {
      const long q = -x.ea - 1, r = x.el;
      if (!is_even(q)) return top_only(29);
      const long i = q / 2;
      if (q == 0) {
        if (r == 0) return covering(24, 0, 1);
        return r > 0 ? covering(25, 0, 1) : top_only(26);
      }
      if (r == i) return covering(27, 0, 0);
      return r > i ? covering(28, 0, 0) : top_only(29);
    }
    case 15:
      return top_only(30);
    case 16:
      return covering(31, 0, 1);
    case 17:
      return covering(32, 1, 2);
  }
  return {};
}

int trivial_top_number(const LevelClass& mid) {
  if (mid.desusp) return mid.u == -1 ? 37 : 38;
  if (mid.theta == 2) return 36;
  if (mid.a > 0) return mid.u >= 1 ? 34 : 35;
  return 33;
}

std::vector<int> functor_numbers(const Degree& d) {
  std::vector<int> out;
  bool covered = false;
  for (const auto& c : basis_at(d, Subgroup::C4).top) {
    auto f = functor_of(c);
    out.push_back(f.number);
    covered = covered || f.has_mid;
  }
  if (auto m = mid_class(d); m && !covered) out.push_back(trivial_top_number(*m));
  std::sort(out.begin(), out.end());
  return out;
}

void inject_fault(const std::optional<Degree>& d) {
  std::lock_guard lock(g_fault_mu);
  g_fault = d;
}

MackeyC4 mackey_at(const Degree& d) {
  const auto top = basis_at(d, Subgroup::C4);
  const auto mid = mid_class(d);
  const auto bot = bot_class(d);
  MackeyC4 m;
  m.top = top.group;
  m.mid = mid ? FinAbGroup::from_orders({mid->order()}) : FinAbGroup{};
  m.bot = bot ? FinAbGroup::from_orders({Integer(0)}) : FinAbGroup{};
  const std::size_t nt = top.top.size(), nm = mid ? 1 : 0, nb = bot ? 1 : 0;
  m.res42 = IntMatrix(nm, nt);
  m.tr42 = IntMatrix(nt, nm);
  m.res21 = IntMatrix(nb, nm);
  m.tr21 = IntMatrix(nm, nb);
  m.weyl_mid = IntMatrix::identity(nm);
  m.weyl_bot = IntMatrix::identity(nb);
  const long sgn = is_even(d.b) ? 1 : -1;
  if (mid) {
    int covers = 0;
    for (std::size_t i = 0; i < nt; ++i) {
      auto f = functor_of(top.top[i]);
      if (!f.has_mid) continue;
      ++covers;
      m.res42(0, i) = f.r42;
      m.tr42(i, 0) = f.t42;
    }
    if (covers > 1) throw std::logic_error("two top classes restrict onto the mid generator at " + d.str());
    if (mid->order() == 0) m.weyl_mid(0, 0) = sgn;
    m.res42 = reduce_rows(m.res42, m.orders(Subgroup::C2));
    m.tr42 = reduce_rows(m.tr42, m.orders(Subgroup::C4));
  }
  if (bot) {
    m.weyl_bot(0, 0) = sgn;
    if (!mid || mid->order() != 0) throw std::logic_error("free bottom level without a free mid level at " + d.str());
    const bool divided = mid->theta == 2;
    m.res21(0, 0) = divided ? 2 : 1;
    m.tr21(0, 0) = divided ? 1 : 2;
  }
  {
    std::lock_guard lock(g_fault_mu);
    if (g_fault && *g_fault == d) {
      if (m.top.is_zero()) m.top = FinAbGroup::from_orders({Integer(2)});
      else m.top.torsion.push_back(2);
      const std::size_t n = m.top.num_generators();
      m.res42 = IntMatrix(m.mid.num_generators(), n);
      m.tr42 = IntMatrix(n, m.mid.num_generators());
    }
  }
  return m;
}

// ---------------------------------------------------------------- elements

Element Element::zero(const Degree& d, Subgroup level) {
  Element e;
  e.degree = d;
  e.level = level;
  e.coeffs.assign(basis_at(d, level).group.num_generators(), 0);
  return e;
}

Element Element::basis(const Degree& d, Subgroup level, std::size_t i) {
  Element e = zero(d, level);
  if (i >= e.coeffs.size()) throw std::out_of_range("no generator " + std::to_string(i) + " at " + d.str());
  e.coeffs[i] = 1;
  return e;
}

bool Element::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& c) { return c == 0; });
}

namespace {
void reduce(Element& e) {
  const auto orders = basis_at(e.degree, e.level).group.orders();
  for (std::size_t i = 0; i < e.coeffs.size(); ++i)
    if (orders[i] != 0) {
      e.coeffs[i] %= orders[i];
      if (e.coeffs[i] < 0) e.coeffs[i] += orders[i];
    }
}
}  // namespace

Element Element::operator+(const Element& o) const {
  if (degree != o.degree || level != o.level) throw std::invalid_argument("adding elements of different degrees");
  Element r = *this;
  for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
  r.unspecified = unspecified || o.unspecified;
  reduce(r);
  return r;
}

Element Element::scaled(const Integer& s) const {
  Element r = *this;
  for (auto& c : r.coeffs) c *= s;
  reduce(r);
  return r;
}

bool Element::operator==(const Element& o) const {
  return degree == o.degree && level == o.level && coeffs == o.coeffs && unspecified == o.unspecified;
}

std::string Element::str() const {
  if (unspecified) return "unspecified";
  const auto names = basis_at(degree, level).names();
  std::string s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (coeffs[i] != 1) s += coeffs[i].get_str() + "*";
    s += names[i];
  }
  return s.empty() ? "0" : s;
}

Element element(const NamedClass& x) {
  const Degree d = x.degree();
  const auto b = basis_at(d, Subgroup::C4);
  for (std::size_t i = 0; i < b.top.size(); ++i)
    if (b.top[i].same_monomial(x)) return Element::basis(d, Subgroup::C4, i);
  throw std::invalid_argument("not a basis class: " + x.str());
}

Element element(const LevelClass& x, const Degree& d) {
  const auto b = basis_at(d, x.level);
  if (b.lower.empty()) throw std::invalid_argument("no generator at " + d.str());
  return Element::basis(d, x.level, 0);
}

// ---------------------------------------------------------------- products

Element multiply(const NamedClass& x, const NamedClass& y) {
  if (!classify(x.desusp, x.ea, x.el, x.eu, x.ev) || !classify(y.desusp, y.ea, y.el, y.eu, y.ev))
    throw std::invalid_argument("multiply: factor is not a basis class");
  const Degree d = x.degree() + y.degree();
  Element out = Element::zero(d);
  if (x.desusp && y.desusp) return out;
  if ((x.summand == 14 && y.theta == 4) || (y.summand == 14 && x.theta == 4)) return out;
  const auto basis = basis_at(d, Subgroup::C4).top;
  const bool desusp = x.desusp || y.desusp;
  const long ea = x.ea + y.ea, el = x.el + y.el, eu = x.eu + y.eu, ev = x.ev + y.ev;
  const Integer theta = x.theta * y.theta;
  const bool both_free = x.is_free() && y.is_free();
  const bool has4 = x.theta == 4 || y.theta == 4;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& g = basis[i];
    if (g.desusp != desusp || !is_even(ea - g.ea)) continue;
    const long t = (ea - g.ea) / 2;
    if (g.el != el + t || g.eu != eu + t || g.ev != ev - t) continue;
    // each step along the gold direction trades a_alpha^2 u_lambda for 2 a_lambda u_2alpha
    Integer num = theta, den = g.theta;
    if (t > 0) num <<= static_cast<unsigned long>(t);
    if (t < 0) den <<= static_cast<unsigned long>(-t);
    if (g.is_free()) {
      if (!both_free) continue;
    } else if (both_free ? has4 : (has4 && !g.desusp)) {
      continue;
    }
    if (num % den != 0) {
      out.unspecified = true;
      continue;
    }
    out.coeffs[i] = num / den;
  }
  reduce(out);
  return out;
}

namespace {

Element multiply_mid(const Element& x, const Element& y) {
  const Degree d = x.degree + y.degree;
  Element out = Element::zero(d, Subgroup::C2);
  if (x.is_zero() || y.is_zero()) return out;
  const auto cx = *mid_class(x.degree), cy = *mid_class(y.degree);
  const auto g = mid_class(d);
  if (!g || (cx.desusp && cy.desusp)) return out;
  const bool desusp = cx.desusp || cy.desusp;
  if (g->desusp != desusp || g->u != cx.u + cy.u || g->a != cx.a + cy.a) return out;
  const Integer num = cx.theta * cy.theta;
  if (num % g->theta != 0) {
    out.unspecified = true;
    return out;
  }
  out.coeffs[0] = num / g->theta * x.coeffs[0] * y.coeffs[0];
  reduce(out);
  return out;
}

}  // namespace

Element multiply(const Element& x, const Element& y) {
  if (x.level != y.level) throw std::invalid_argument("multiply: elements at different levels");
  const Degree d = x.degree + y.degree;
  if (x.level == Subgroup::C2) {
    Element r = multiply_mid(x, y);
    r.unspecified = r.unspecified || x.unspecified || y.unspecified;
    return r;
  }
  if (x.level == Subgroup::e) {
    Element r = Element::zero(d, Subgroup::e);
    if (!r.coeffs.empty() && !x.coeffs.empty() && !y.coeffs.empty()) r.coeffs[0] = x.coeffs[0] * y.coeffs[0];
    r.unspecified = x.unspecified || y.unspecified;
    return r;
  }
  const auto bx = basis_at(x.degree, Subgroup::C4).top;
  const auto by = basis_at(y.degree, Subgroup::C4).top;
  Element r = Element::zero(d);
  r.unspecified = x.unspecified || y.unspecified;
  for (std::size_t i = 0; i < bx.size(); ++i) {
    if (x.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < by.size(); ++j) {
      if (y.coeffs[j] == 0) continue;
      r = r + multiply(bx[i], by[j]).scaled(x.coeffs[i] * y.coeffs[j]);
    }
  }
  return r;
}

const char* name(StructureMap m) {
  switch (m) {
    case StructureMap::res42: return "res42";
    case StructureMap::tr42: return "tr42";
    case StructureMap::res21: return "res21";
    case StructureMap::tr21: return "tr21";
    case StructureMap::weyl: return "weyl";
  }
  return "?";
}

Element structure_map(const Element& x, StructureMap which) {
  const MackeyC4 m = mackey_at(x.degree);
  const IntMatrix* f = nullptr;
  Subgroup from = Subgroup::C4, to = Subgroup::C4;
  switch (which) {
    case StructureMap::res42: f = &m.res42; from = Subgroup::C4; to = Subgroup::C2; break;
    case StructureMap::tr42: f = &m.tr42; from = Subgroup::C2; to = Subgroup::C4; break;
    case StructureMap::res21: f = &m.res21; from = Subgroup::C2; to = Subgroup::e; break;
    case StructureMap::tr21: f = &m.tr21; from = Subgroup::e; to = Subgroup::C2; break;
    case StructureMap::weyl:
      if (x.level == Subgroup::C4) return x;
      f = x.level == Subgroup::C2 ? &m.weyl_mid : &m.weyl_bot;
      from = to = x.level;
      break;
  }
  if (x.level != from) throw std::invalid_argument(std::string(name(which)) + " applied at the wrong level");
  Element r = Element::zero(x.degree, to);
  for (std::size_t i = 0; i < f->rows(); ++i)
    for (std::size_t j = 0; j < f->cols(); ++j) r.coeffs[i] += (*f)(i, j) * x.coeffs[j];
  r.unspecified = x.unspecified;
  reduce(r);
  return r;
}

int sign(const Degree& x, const Degree& y) {
  const long e = x.a * y.a + x.b * y.b;
  return is_even(e) ? 1 : -1;
}

bool commutes_on_the_nose(const NamedClass& x, const NamedClass& y) {
  if (sign(x.degree(), y.degree()) == 1) return true;
  const Element p = multiply(x, y);
  return p.is_zero() || p.scaled(2).is_zero();
}

// ---------------------------------------------------------------- fixture tables

std::vector<NamedClass> FixtureTable::classes_at(const Degree& d) const {
  std::vector<NamedClass> out;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto& line = lines[k];
    for_each_monomial(d, line.desusp, [&](long ea, long el, long eu, long ev) {
      if (!line.order(ea, el, eu, ev)) return;
      NamedClass c;
      c.theta = line.theta;
      c.desusp = line.desusp;
      c.ea = ea;
      c.el = el;
      c.eu = eu;
      c.ev = ev;
      c.summand = static_cast<int>(k);
      out.push_back(c);
    });
  }
  return out;
}

FinAbGroup FixtureTable::group_at(const Degree& d) const {
  std::vector<Integer> orders;
  for (const auto& c : classes_at(d))
    orders.push_back(*lines[static_cast<std::size_t>(c.summand)].order(c.ea, c.el, c.eu, c.ev));
  return FinAbGroup::from_orders(orders);
}

std::string FixtureTable::latex() const {
  std::string s = "\\begin{aligned}\n";
  for (std::size_t k = 0; k < lines.size(); ++k)
    s += std::string(k == 0 ? "  " + title + " &= " : "  &\\oplus ") + lines[k].latex + "\\\\\n";
  return s + "\\end{aligned}\n";
}

namespace {

using Order = std::optional<Integer>;

// Positive cone normal form: monomials with a_alpha^2 u_lambda rewritten by the gold relation.
Order cone_order(long ea, long el, long ev) {
  if (ea < 0 || el < 0 || ev < 0 || (ea >= 2 && ev >= 1)) return std::nullopt;
  if (ea == 0) return Integer(el == 0 ? 0 : 4);
  return Integer(2);
}

}  // namespace

FixtureTable table_hh() {
  FixtureTable t{"H^h_{\\bigstar}", {}};
  t.lines.push_back({"\\mathbb{Z}[a_{\\lambda},u_{2\\alpha}^{\\pm},u_{\\lambda}^{\\pm}]/4a_{\\lambda}", 1, false,
                     [](long ea, long el, long, long) -> Order {
                       if (ea != 0 || el < 0) return std::nullopt;
                       return Integer(el == 0 ? 0 : 4);
                     }});
  t.lines.push_back({"\\mathbb{Z}/2\\langle a_{\\alpha}\\rangle[a_{\\lambda},u_{2\\alpha}^{\\pm},u_{\\lambda}^{\\pm}]", 1,
                     false, [](long ea, long el, long, long) -> Order {
                       if (ea != 1 || el < 0) return std::nullopt;
                       return Integer(2);
                     }});
  return t;
}

FixtureTable table_hphi2() {
  FixtureTable t{"H^{\\Phi_2}_{\\bigstar}", {}};
  t.lines.push_back({"\\mathbb{Z}/4[a_{\\lambda}^{\\pm},u_{2\\alpha},u_{\\lambda},a_{\\alpha}]/(2a_{\\lambda}u_{2\\alpha}="
                     "a_{2\\alpha}u_{\\lambda},2a_{\\alpha})",
                     1, false, [](long ea, long, long eu, long ev) -> Order {
                       if (eu < 0 || ea < 0 || ev < 0 || (ea >= 2 && ev >= 1)) return std::nullopt;
                       return Integer(ea == 0 ? 4 : 2);
                     }});
  t.lines.push_back({"\\mathbb{Z}/4[a_{\\lambda}^{\\pm}]\\langle u_{2\\alpha}^{-i}u_{\\lambda}^j\\rangle_{i,j\\geq 1}"
                     "\\langle 1,a_{\\alpha}\\rangle/2a_{\\alpha}",
                     1, false, [](long ea, long, long eu, long ev) -> Order {
                       if (eu > -1 || ev < 1 || (ea != 0 && ea != 1)) return std::nullopt;
                       return Integer(ea == 0 ? 4 : 2);
                     }});
  t.lines.push_back({"\\mathbb{Z}/2\\langle tr^4_2(e_{3\\alpha})\\rangle[u_{2\\alpha}^{-1},a_{\\alpha}^{-1}]"
                     "[a_{\\lambda}^{\\pm}]",
                     1, true, [](long ea, long, long eu, long ev) -> Order {
                       if (ea > -1 || eu > -1 || ev != 0) return std::nullopt;
                       return Integer(2);
                     }});
  t.lines.push_back({"\\mathbb{Z}/2[a_{\\lambda}^{\\pm}]\\langle 2u_{2\\alpha}^{-i}\\rangle_{i\\geq 1}", 2, false,
                     [](long ea, long, long eu, long ev) -> Order {
                       if (ea != 0 || eu > -1 || ev != 0) return std::nullopt;
                       return Integer(2);
                     }});
  return t;
}

FixtureTable table_hphi4() {
  FixtureTable t{"\\pi_{\\bigstar}H^{\\Phi_4}", {}};
  t.lines.push_back({"\\mathbb{Z}/2[u_{2\\alpha},a_{\\alpha}^{\\pm},a_{\\lambda}^{\\pm}]", 1, false,
                     [](long, long, long eu, long ev) -> Order {
                       if (eu < 0 || ev != 0) return std::nullopt;
                       return Integer(2);
                     }});
  return t;
}

FixtureTable table_u2alpha_local() {
  FixtureTable t{"\\pi_{\\bigstar}^{G/G}H[u_{2\\alpha}^{-1}]", {}};
  t.lines.push_back({"\\mathbb{Z}[u_{2\\alpha}^{\\pm},u_{\\lambda},a_{\\alpha},a_{\\lambda}]/(2a_{\\alpha},4a_{\\lambda},"
                     "a_{2\\alpha}u_{\\lambda}-2a_{\\lambda}u_{2\\alpha})",
                     1, false, [](long ea, long el, long, long ev) { return cone_order(ea, el, ev); }});
  t.lines.push_back({"\\mathbb{Z}\\langle 2u_{\\lambda}^{-1}\\rangle[u_{2\\alpha}^{\\pm}]", 2, false,
                     [](long ea, long el, long, long ev) -> Order {
                       if (ea != 0 || el != 0 || ev != -1) return std::nullopt;
                       return Integer(0);
                     }});
  t.lines.push_back({"\\mathbb{Z}\\langle 4u_{\\lambda}^{-j}\\rangle_{j\\geq 2}[u_{2\\alpha}^{\\pm}]", 4, false,
                     [](long ea, long el, long, long ev) -> Order {
                       if (ea != 0 || el != 0 || ev > -2) return std::nullopt;
                       return Integer(0);
                     }});
  t.lines.push_back({"\\mathbb{Z}/2\\langle\\Sigma^{-1}\\frac{1}{a_{\\lambda}^iu_{\\lambda}}\\rangle_{i\\geq 1}"
                     "[u_{2\\alpha}^{\\pm}]",
                     1, true, [](long ea, long el, long, long ev) -> Order {
                       if (ea != 0 || el > -1 || ev != -1) return std::nullopt;
                       return Integer(2);
                     }});
  t.lines.push_back({"\\mathbb{Z}/2\\langle\\Sigma^{-1}\\frac{a_{\\alpha}}{a_{\\lambda}^iu_{\\lambda}^j}\\rangle_{i,j\\geq 1}"
                     "[u_{2\\alpha}^{\\pm}]",
                     1, true, [](long ea, long el, long, long ev) -> Order {
                       if (ea != 1 || el > -1 || ev > -1) return std::nullopt;
                       return Integer(2);
                     }});
  t.lines.push_back({"\\mathbb{Z}/4\\langle\\Sigma^{-1}\\frac{1}{a_{\\lambda}^iu_{\\lambda}^j}\\rangle_{i\\geq 1,j\\geq 2}"
                     "[u_{2\\alpha}^{\\pm}]",
                     1, true, [](long ea, long el, long, long ev) -> Order {
                       if (ea != 0 || el > -1 || ev > -2) return std::nullopt;
                       return Integer(4);
                     }});
  t.lines.push_back({"\\mathbb{Z}/2\\langle\\frac{a_{\\alpha}^i}{a_{\\lambda}^j}\\rangle_{i\\geq 3,j\\geq 1}"
                     "[u_{2\\alpha}^{\\pm}]",
                     1, false, [](long ea, long el, long, long ev) -> Order {
                       if (ea < 3 || el > -1 || ev != 0) return std::nullopt;
                       return Integer(2);
                     }});
  return t;
}

FixtureTable table_answer() {
  static const char* const kLines[17] = {
      "\\mathbb{Z}[a_{\\alpha},a_{\\lambda},u_{2\\alpha},u_{\\lambda}]/(2a_{\\alpha},4a_{\\lambda},"
      "a_{2\\alpha}u_{\\lambda}-2a_{\\lambda}u_{2\\alpha})",
      "\\mathbb{Z}\\langle 2u_{2\\alpha}^{-i}\\rangle_{i\\geq 1}",
      "\\mathbb{Z}\\langle u_{2\\alpha}^{-i}u_{\\lambda}^j\\rangle_{i,j\\geq 1}",
      "\\mathbb{Z}\\langle 2\\frac{u_{2\\alpha}^i}{u_{\\lambda}}\\rangle_{i\\geq 1}",
      "\\mathbb{Z}\\langle 4\\frac{1}{u_{2\\alpha}^iu_{\\lambda}^j}\\rangle_{i\\geq 0,j\\geq 1}",
      "\\mathbb{Z}\\langle 4\\frac{u_{2\\alpha}^i}{u_{\\lambda}^j}\\rangle_{i\\geq 1,j\\geq 2}",
      "\\mathbb{Z}/2\\langle\\Sigma^{-1}\\frac{a_{\\alpha}}{a_{\\lambda}^iu_{\\lambda}^j}\\rangle_{i,j\\geq 1}"
      "[u_{2\\alpha}^{\\pm}]",
      "\\mathbb{Z}/4\\langle\\Sigma^{-1}\\frac{1}{a_{\\lambda}^iu_{\\lambda}^j}\\rangle_{i\\geq 1,j\\geq 2}"
      "[u_{2\\alpha}^{\\pm}]",
      "\\mathbb{Z}/4\\langle\\Sigma^{-1}\\frac{1}{a_{\\lambda}^iu_{\\lambda}u_{2\\alpha}^k}\\rangle_{i\\geq 1,k\\geq 0}",
      "\\mathbb{Z}/2\\langle\\Sigma^{-1}\\frac{u_{2\\alpha}^k}{a_{\\lambda}^iu_{\\lambda}}\\rangle_{i,k\\geq 1}",
      "\\mathbb{Z}/2\\langle\\Sigma^{-1}\\frac{a_{\\alpha}}{a_{\\lambda}^iu_{2\\alpha}^k}\\rangle_{i,k\\geq 1}",
      "\\mathbb{Z}/2\\langle\\Sigma^{-1}\\frac{1}{a_{\\lambda}^iu_{2\\alpha}^k}\\rangle_{i,k\\geq 1}",
      "\\mathbb{Z}/2\\langle\\frac{a_{\\alpha}^i}{a_{\\lambda}^j}\\rangle_{i\\geq 3,j\\geq 1}[u_{2\\alpha}]",
      "\\mathbb{Z}/2\\langle tr^4_2(e_{3\\alpha})\\rangle[u_{2\\alpha}^{-1},a_{\\alpha}^{-1},a_{\\lambda}^{\\pm}]",
      "\\mathbb{Z}/2\\langle\\frac{a_{\\alpha}u_{\\lambda}^j}{u_{2\\alpha}^k}\\rangle_{j,k\\geq 1}[a_{\\lambda}]",
      "\\mathbb{Z}/2\\langle 2\\frac{a_{\\lambda}^i}{u_{2\\alpha}^k}\\rangle_{i,k\\geq 1}",
      "\\mathbb{Z}/4\\langle\\frac{a_{\\lambda}^iu_{\\lambda}^j}{u_{2\\alpha}^k}\\rangle_{i,j,k\\geq 1}",
  };
  static const int kTheta[17] = {1, 2, 1, 2, 4, 4, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 1};
  FixtureTable t{"\\pi^{C_4}_{\\bigstar}H\\underline{\\mathbb{Z}}", {}};
  for (int k = 0; k < 17; ++k) {
    const bool desusp = (k + 1 >= 7 && k + 1 <= 12) || k + 1 == 14;
    t.lines.push_back({kLines[k], kTheta[k], desusp, [k, desusp](long ea, long el, long eu, long ev) -> Order {
                         auto c = classify(desusp, ea, el, eu, ev);
                         if (!c || c->summand != k + 1) return std::nullopt;
                         return c->order();
                       }});
  }
  return t;
}

// ---------------------------------------------------------------- localization

LocGen parse_locgen(const std::string& s) {
  if (s == "aa" || s == "a_alpha" || s == "a_a") return LocGen::a_alpha;
  if (s == "al" || s == "a_lambda" || s == "a_l") return LocGen::a_lambda;
  if (s == "u2a" || s == "u_2alpha" || s == "u_2a") return LocGen::u_2alpha;
  throw std::invalid_argument("unknown localization generator '" + s + "' (expected aa, al or u2a)");
}

const char* name(LocGen g) {
  switch (g) {
    case LocGen::a_alpha: return "aa";
    case LocGen::a_lambda: return "al";
    case LocGen::u_2alpha: return "u2a";
  }
  return "?";
}

NamedClass class_of(LocGen g) {
  switch (g) {
    case LocGen::a_alpha: return a_alpha();
    case LocGen::a_lambda: return a_lambda();
    case LocGen::u_2alpha: return u_2alpha();
  }
  return {};
}

FixtureTable fixture_for(LocGen g) {
  switch (g) {
    case LocGen::a_alpha: return table_hphi4();
    case LocGen::a_lambda: return table_hphi2();
    case LocGen::u_2alpha: return table_u2alpha_local();
  }
  return {};
}

namespace {

// Matrix of multiplication by g from pi_d to pi_{d + deg g}, in the canonical bases.
IntMatrix multiplication_matrix(const NamedClass& g, const Degree& d) {
  const auto src = basis_at(d, Subgroup::C4).top;
  const Degree t = d + g.degree();
  IntMatrix m(basis_at(t, Subgroup::C4).top.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    const Element p = multiply(src[j], g);
    if (p.unspecified) throw std::logic_error("unspecified product " + src[j].str() + " * " + g.str());
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) m(i, j) = p.coeffs[i];
  }
  return m;
}

// Image of pi_{d + K g} in pi_{d + (K + M) g}.
FinAbGroup eventual_image(const NamedClass& g, const Degree& d, int K, int M, std::vector<std::string>* reps) {
  const Degree step = g.degree();
  const Degree start = d + step * K;
  const auto src = basis_at(start, Subgroup::C4);
  IntMatrix comp = IntMatrix::identity(src.top.size());
  for (int k = 0; k < M; ++k) comp = multiplication_matrix(g, start + step * k) * comp;
  const auto tgt_orders = basis_at(start + step * M, Subgroup::C4).group.orders();
  comp = reduce_rows(comp, tgt_orders);
  if (reps) {
    for (std::size_t j = 0; j < src.top.size(); ++j)
      if (!comp.col(j).is_zero()) reps->push_back(src.top[j].str() + " / " + power(g.str(), K));
  }
  return hom_invariants(comp, src.group.orders(), tgt_orders).image;
}

}  // namespace

Localized localize(LocGen gen, const Degree& d, int depth) {
  const NamedClass g = class_of(gen);
  Localized out;
  out.degree = d;
  out.group = eventual_image(g, d, depth, depth, &out.representatives);
  out.stable = eventual_image(g, d, depth + 2, depth + 2, nullptr) == out.group &&
               eventual_image(g, d, depth, depth + 4, nullptr) == out.group;
  return out;
}

// ---------------------------------------------------------------- emitters

std::string latex_line(const Degree& d) {
  std::ostringstream o;
  o << "\\pi_{" << d.a;
  if (d.b) o << (d.b > 0 ? "+" : "") << d.b << "\\alpha";
  if (d.c) o << (d.c > 0 ? "+" : "") << d.c << "\\lambda";
  o << "}^{C_4}H\\underline{\\mathbb{Z}} = ";
  const auto b = basis_at(d, Subgroup::C4);
  if (b.top.empty()) return o.str() + "0";
  for (std::size_t i = 0; i < b.top.size(); ++i) {
    if (i) o << " \\oplus ";
    const Integer ord = b.top[i].order();
    o << (ord == 0 ? std::string("\\mathbb{Z}") : "\\mathbb{Z}/" + ord.get_str()) << "\\langle " << b.top[i].latex()
      << "\\rangle";
  }
  return o.str();
}

nlohmann::json basis_json(const Degree& d) {
  nlohmann::json j;
  for (auto k : kSubgroups) {
    const auto b = basis_at(d, k);
    nlohmann::json level = nlohmann::json::array();
    const auto names = b.names();
    const auto orders = b.group.orders();
    for (std::size_t i = 0; i < names.size(); ++i)
      level.push_back({{"name", names[i]}, {"order", orders[i] == 0 ? "Z" : "Z/" + orders[i].get_str()}});
    j[name(k)] = level;
  }
  nlohmann::json f = nlohmann::json::array();
  for (int n : functor_numbers(d)) f.push_back(n);
  j["functors"] = f;
  return j;
}

}  // namespace c4hz
