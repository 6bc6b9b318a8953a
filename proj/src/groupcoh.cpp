#include "c4hz/groupcoh.hpp"

#include <stdexcept>

namespace c4hz {

const char* name(CoeffModule m) {
  switch (m) {
    case CoeffModule::Z: return "Z";
    case CoeffModule::Ztilde: return "Zt";
    case CoeffModule::Z2: return "Z2";
  }
  return "?";
}

CoeffModule parse_coeff(const std::string& s) {
  if (s == "Z" || s == "z") return CoeffModule::Z;
  if (s == "Zt" || s == "zt" || s == "Ztilde") return CoeffModule::Ztilde;
  if (s == "Z2" || s == "z2") return CoeffModule::Z2;
  throw std::invalid_argument("unknown coefficient module '" + s + "' (expected Z, Zt or Z2)");
}

int action(CoeffModule m) { return m == CoeffModule::Ztilde ? -1 : 1; }
int torsion(CoeffModule m) { return m == CoeffModule::Z2 ? 2 : 0; }

CoeffModule tensor(CoeffModule a, CoeffModule b) {
  if (a == CoeffModule::Z2 || b == CoeffModule::Z2) return CoeffModule::Z2;
  return action(a) * action(b) == 1 ? CoeffModule::Z : CoeffModule::Ztilde;
}

PeriodicResolution::PeriodicResolution(int n) : order(n) {
  if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("group order must be a power of two");
}

IntMatrix PeriodicResolution::generator() const {
  const auto n = static_cast<std::size_t>(order);
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) g((i + 1) % n, i) = 1;
  return g;
}

IntMatrix PeriodicResolution::norm() const {
  const auto n = static_cast<std::size_t>(order);
  IntMatrix N(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) N(i, j) = 1;
  return N;
}

IntMatrix PeriodicResolution::differential(int k) const {
  if (k < 1) throw std::invalid_argument("resolution differentials start in degree 1");
  if (k % 2 == 1) return IntMatrix::identity(static_cast<std::size_t>(order)) - generator();
  return norm();
}

Integer PeriodicResolution::acting_scalar(int k, CoeffModule m) const {
  const int g = action(m);
  if (k % 2 == 1) return 1 - g;
  Integer s = 0, p = 1;
  for (int i = 0; i < order; ++i, p *= g) s += p;
  return s;
}

Integer PeriodicResolution::diagonal_scalar(int p, int q, CoeffModule m1, CoeffModule m2) const {
  const int g1 = action(m1), g2 = action(m2);
  if (p % 2 == 0) return 1;
  if (q % 2 == 0) return g2;
  Integer s = 0;
  for (int i = 0; i < order; ++i)
    for (int j = i + 1; j < order; ++j) s += ((i % 2 == 1 && g1 == -1) ? -1 : 1) * ((j % 2 == 1 && g2 == -1) ? -1 : 1);
  return s;
}

namespace {

Integer reduce(const Integer& x, const Integer& t) {
  if (t == 0) return x;
  Integer r = x % t;
  if (r < 0) r += t;
  return r;
}

}  // namespace

Integer CyclicCohomology::coordinate(const Integer& cocycle) const {
  if (group.is_zero()) return 0;
  return reduce(cocycle, order);
}

CyclicCohomology cohomology_class(int order, CoeffModule m, int q) {
  if (q < 0) throw std::invalid_argument("cohomological degree must be nonnegative");
  const PeriodicResolution F(order);
  // Hom(F_q, M) = M and the coboundary out of degree q is d_{q+1}(1) acting on M.
  const Integer t = torsion(m);
  const Integer out = reduce(F.acting_scalar(q + 1, m), t);
  const Integer in = q == 0 ? Integer(0) : reduce(F.acting_scalar(q, m), t);
  CyclicCohomology c;
  const bool cocycle = t == 0 ? out == 0 : out % t == 0;
  if (!cocycle) return c;
  Integer ord = t == 0 ? Integer(abs(in)) : Integer(gcd(in, t));
  if (ord == 1) return c;
  c.order = ord;
  c.group = FinAbGroup::from_orders({ord});
  return c;
}

FinAbGroup cohomology(int order, CoeffModule m, int q) { return cohomology_class(order, m, q).group; }

IntMatrix cup(int order, int p, int q, CoeffModule m1, CoeffModule m2) {
  const auto a = cohomology_class(order, m1, p);
  const auto b = cohomology_class(order, m2, q);
  if (a.group.is_zero() || b.group.is_zero()) return {};
  const CoeffModule m = tensor(m1, m2);
  const auto c = cohomology_class(order, m, p + q);
  IntMatrix out(c.group.is_zero() ? 0 : 1, 1);
  if (c.group.is_zero()) return out;
  const PeriodicResolution F(order);
  out(0, 0) = c.coordinate(F.diagonal_scalar(p, q, m1, m2));
  return out;
}

E2Column hfpss_e2(const Degree& d, int smax) {
  E2Column col;
  col.degree = d;
  const CoeffModule m = d.b % 2 == 0 ? CoeffModule::Z : CoeffModule::Ztilde;
  for (int s = 0; s <= smax; ++s)
    col.groups.push_back(d.dim() == 0 ? cohomology(4, m, s) : FinAbGroup{});
  return col;
}

FinAbGroup homotopy_fixed_points(const Degree& d) {
  // E_2^{V,s} contributes to pi_{V-s}; only V of underlying dimension zero is nonzero.
  const long s = -d.dim();
  if (s < 0) return {};
  const Degree v{d.a + s, d.b, d.c};
  return hfpss_e2(v, static_cast<int>(s)).groups.back();
}

}  // namespace c4hz
