#include "c4hz/mackey.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace c4hz {

int order(Subgroup k) { return 1 << static_cast<int>(k); }

const char* name(Subgroup k) {
  switch (k) {
    case Subgroup::e: return "e";
    case Subgroup::C2: return "C2";
    case Subgroup::C4: return "C4";
  }
  return "?";
}

MackeyC4 MackeyC4::zero() {
  MackeyC4 m;
  m.res42 = IntMatrix(0, 0);
  m.tr42 = IntMatrix(0, 0);
  m.res21 = IntMatrix(0, 0);
  m.tr21 = IntMatrix(0, 0);
  m.weyl_mid = IntMatrix(0, 0);
  m.weyl_bot = IntMatrix(0, 0);
  return m;
}

MackeyC4 MackeyC4::constant_z() {
  MackeyC4 m;
  m.top.free_rank = m.mid.free_rank = m.bot.free_rank = 1;
  m.res42 = IntMatrix{{1}};
  m.tr42 = IntMatrix{{2}};
  m.res21 = IntMatrix{{1}};
  m.tr21 = IntMatrix{{2}};
  m.weyl_mid = IntMatrix{{1}};
  m.weyl_bot = IntMatrix{{1}};
  return m;
}

const FinAbGroup& MackeyC4::level(Subgroup k) const {
  switch (k) {
    case Subgroup::e: return bot;
    case Subgroup::C2: return mid;
    case Subgroup::C4: return top;
  }
  return top;
}

std::string MackeyC4::str() const {
  std::ostringstream os;
  os << "top " << top.str() << " | mid " << mid.str() << " | bot " << bot.str() << " | res42 " << res42.str()
     << " tr42 " << tr42.str() << " res21 " << res21.str() << " tr21 " << tr21.str() << " weyl_mid "
     << weyl_mid.str() << " weyl_bot " << weyl_bot.str();
  return os.str();
}

namespace {

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

// Permutation putting generators in canonical order: torsion ascending, then free.
std::vector<std::size_t> canonical_order(const std::vector<Integer>& orders) {
  std::vector<std::size_t> idx(orders.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    const Integer& a = orders[x];
    const Integer& b = orders[y];
    if ((a == 0) != (b == 0)) return b == 0;
    return a < b;
  });
  return idx;
}

FinAbGroup group_of(const std::vector<Integer>& sorted_orders) {
  FinAbGroup g;
  for (const auto& o : sorted_orders) {
    if (o == 0)
      ++g.free_rank;
    else
      g.torsion.push_back(o);
  }
  return g;
}

std::vector<Integer> permuted(const std::vector<Integer>& v, const std::vector<std::size_t>& idx) {
  std::vector<Integer> out;
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

void shape_check(std::vector<AxiomCheck>& out, const std::string& what, const IntMatrix& m, std::size_t r,
                 std::size_t c) {
  if (m.rows() != r || m.cols() != c)
    out.push_back({"shape " + what, false,
                   std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " expected " + std::to_string(r) +
                       "x" + std::to_string(c)});
}

bool well_defined(const IntMatrix& f, const std::vector<Integer>& src, const std::vector<Integer>& tgt) {
  for (std::size_t j = 0; j < src.size(); ++j) {
    if (src[j] == 0) continue;
    if (!reduce_rows(f.col(j).scaled(src[j]), tgt).is_zero()) return false;
  }
  return true;
}

}  // namespace

MackeyC4 direct_sum(const MackeyC4& a, const MackeyC4& b) {
  std::array<std::vector<Integer>, 3> ord;
  std::array<std::vector<std::size_t>, 3> perm;
  for (auto k : kSubgroups) {
    auto i = static_cast<int>(k);
    ord[i] = a.orders(k);
    auto ob = b.orders(k);
    ord[i].insert(ord[i].end(), ob.begin(), ob.end());
    perm[i] = canonical_order(ord[i]);
  }
  auto conj = [&](const IntMatrix& x, const IntMatrix& y, Subgroup to, Subgroup from) {
    IntMatrix m = block_diag(x, y);
    return m.select_rows(perm[static_cast<int>(to)]).select_cols(perm[static_cast<int>(from)]);
  };
  MackeyC4 s;
  s.top = group_of(permuted(ord[2], perm[2]));
  s.mid = group_of(permuted(ord[1], perm[1]));
  s.bot = group_of(permuted(ord[0], perm[0]));
  s.res42 = conj(a.res42, b.res42, Subgroup::C2, Subgroup::C4);
  s.tr42 = conj(a.tr42, b.tr42, Subgroup::C4, Subgroup::C2);
  s.res21 = conj(a.res21, b.res21, Subgroup::e, Subgroup::C2);
  s.tr21 = conj(a.tr21, b.tr21, Subgroup::C2, Subgroup::e);
  s.weyl_mid = conj(a.weyl_mid, b.weyl_mid, Subgroup::C2, Subgroup::C2);
  s.weyl_bot = conj(a.weyl_bot, b.weyl_bot, Subgroup::e, Subgroup::e);
  return s;
}

MackeyC4 permutation_mackey(Subgroup h) {
  std::vector<std::size_t> perm(4 / order(h));
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = (i + 1) % perm.size();
  MackeyChainComplex c;
  c.set_term(0, perm);
  return homology_of_complex(c, 0);
}

bool equal_mod(const IntMatrix& a, const IntMatrix& b, const std::vector<Integer>& target_orders) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return reduce_rows(a - b, target_orders).is_zero();
}

bool AxiomReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

std::string AxiomReport::failures() const {
  std::string s;
  for (const auto& c : checks)
    if (!c.passed) s += (s.empty() ? "" : "; ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
  return s;
}

AxiomReport check_axioms(const MackeyC4& m) {
  AxiomReport rep;
  const auto T = m.orders(Subgroup::C4), M = m.orders(Subgroup::C2), B = m.orders(Subgroup::e);
  const std::size_t t = T.size(), md = M.size(), b = B.size();
  shape_check(rep.checks, "res42", m.res42, md, t);
  shape_check(rep.checks, "tr42", m.tr42, t, md);
  shape_check(rep.checks, "res21", m.res21, b, md);
  shape_check(rep.checks, "tr21", m.tr21, md, b);
  shape_check(rep.checks, "weyl_mid", m.weyl_mid, md, md);
  shape_check(rep.checks, "weyl_bot", m.weyl_bot, b, b);
  if (!rep.checks.empty()) return rep;

  auto add = [&](const std::string& name, bool ok, const IntMatrix& lhs, const IntMatrix& rhs) {
    rep.checks.push_back({name, ok, ok ? "" : lhs.str() + " vs " + rhs.str()});
  };
  auto wd = [&](const std::string& name, const IntMatrix& f, const std::vector<Integer>& src,
                const std::vector<Integer>& tgt) {
    rep.checks.push_back({"well-defined " + name, well_defined(f, src, tgt), f.str()});
    if (rep.checks.back().passed) rep.checks.back().detail.clear();
  };
  wd("res42", m.res42, T, M);
  wd("tr42", m.tr42, M, T);
  wd("res21", m.res21, M, B);
  wd("tr21", m.tr21, B, M);
  wd("weyl_mid", m.weyl_mid, M, M);
  wd("weyl_bot", m.weyl_bot, B, B);

  const IntMatrix It = IntMatrix::identity(t), Im = IntMatrix::identity(md), Ib = IntMatrix::identity(b);
  const IntMatrix Wm = m.weyl_mid, Wb = m.weyl_bot, Wb2 = Wb * Wb;
  IntMatrix lhs = m.tr42 * m.res42;
  add("tr42 res42 = 2", equal_mod(lhs, It.scaled(2), T), lhs, It.scaled(2));
  lhs = m.tr21 * m.res21;
  add("tr21 res21 = 2", equal_mod(lhs, Im.scaled(2), M), lhs, Im.scaled(2));
  lhs = m.res42 * m.tr42;
  add("res42 tr42 = 1 + weyl_mid", equal_mod(lhs, Im + Wm, M), lhs, Im + Wm);
  lhs = m.res21 * m.tr21;
  add("res21 tr21 = 1 + weyl_bot^2", equal_mod(lhs, Ib + Wb2, B), lhs, Ib + Wb2);
  add("weyl_mid^2 = 1", equal_mod(Wm * Wm, Im, M), Wm * Wm, Im);
  add("weyl_bot^4 = 1", equal_mod(Wb2 * Wb2, Ib, B), Wb2 * Wb2, Ib);
  add("weyl_mid fixes im res42", equal_mod(Wm * m.res42, m.res42, M), Wm * m.res42, m.res42);
  add("weyl_bot^2 fixes im res21", equal_mod(Wb2 * m.res21, m.res21, B), Wb2 * m.res21, m.res21);
  IntMatrix r41 = m.res21 * m.res42;
  add("weyl_bot fixes im res41", equal_mod(Wb * r41, r41, B), Wb * r41, r41);
  add("res21 equivariant", equal_mod(m.res21 * Wm, Wb * m.res21, B), m.res21 * Wm, Wb * m.res21);
  add("tr21 equivariant", equal_mod(m.tr21 * Wb, Wm * m.tr21, M), m.tr21 * Wb, Wm * m.tr21);
  add("tr42 invariant", equal_mod(m.tr42 * Wm, m.tr42, T), m.tr42 * Wm, m.tr42);
  return rep;
}

bool MackeyInvariants::operator==(const MackeyInvariants& o) const {
  return top == o.top && mid == o.mid && bot == o.bot && res42 == o.res42 && tr42 == o.tr42 &&
         res21 == o.res21 && tr21 == o.tr21 && weyl_mid_fixed == o.weyl_mid_fixed &&
         weyl_bot_fixed == o.weyl_bot_fixed;
}

MackeyInvariants invariants(const MackeyC4& m) {
  const auto T = m.orders(Subgroup::C4), M = m.orders(Subgroup::C2), B = m.orders(Subgroup::e);
  MackeyInvariants inv;
  inv.top = group_of(T);
  inv.mid = group_of(M);
  inv.bot = group_of(B);
  inv.res42 = hom_invariants(m.res42, T, M);
  inv.tr42 = hom_invariants(m.tr42, M, T);
  inv.res21 = hom_invariants(m.res21, M, B);
  inv.tr21 = hom_invariants(m.tr21, B, M);
  inv.weyl_mid_fixed = hom_invariants(m.weyl_mid - IntMatrix::identity(M.size()), M, M).kernel;
  inv.weyl_bot_fixed = hom_invariants(m.weyl_bot - IntMatrix::identity(B.size()), B, B).kernel;
  return inv;
}

bool compare(const MackeyC4& a, const MackeyC4& b) { return compare_detail(a, b).empty(); }

std::string compare_detail(const MackeyC4& a, const MackeyC4& b) {
  auto x = invariants(a), y = invariants(b);
  auto grp = [](const char* n, const FinAbGroup& p, const FinAbGroup& q) -> std::string {
    return p == q ? "" : std::string(n) + ": " + p.str() + " vs " + q.str();
  };
  auto hom = [](const char* n, const HomInvariants& p, const HomInvariants& q) -> std::string {
    return p == q ? "" : std::string(n) + ": " + p.str() + " vs " + q.str();
  };
  for (const auto& s :
       {grp("top", x.top, y.top), grp("mid", x.mid, y.mid), grp("bot", x.bot, y.bot),
        hom("res42", x.res42, y.res42), hom("tr42", x.tr42, y.tr42), hom("res21", x.res21, y.res21),
        hom("tr21", x.tr21, y.tr21), grp("weyl_mid fixed", x.weyl_mid_fixed, y.weyl_mid_fixed),
        grp("weyl_bot fixed", x.weyl_bot_fixed, y.weyl_bot_fixed)})
    if (!s.empty()) return s;
  return "";
}

namespace {

nlohmann::json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(j.get<long>());
}

}  // namespace

nlohmann::json matrix_to_json(const IntMatrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

IntMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || (j.size() != rows && !(rows == 0 && j.empty())))
    throw std::invalid_argument("matrix_from_json: wrong row count");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw std::invalid_argument("matrix_from_json: wrong column count");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = integer_from_json(j[i][c]);
  }
  return m;
}

nlohmann::json group_to_json(const FinAbGroup& g) {
  auto tors = nlohmann::json::array();
  for (const auto& t : g.torsion) tors.push_back(integer_to_json(t));
  return {{"free", g.free_rank}, {"torsion", tors}};
}

FinAbGroup group_from_json(const nlohmann::json& j) {
  FinAbGroup g;
  g.free_rank = j.at("free").get<int>();
  for (const auto& t : j.at("torsion")) g.torsion.push_back(integer_from_json(t));
  return g;
}

nlohmann::json to_json(const MackeyC4& m) {
  return {{"top", group_to_json(m.top)},          {"mid", group_to_json(m.mid)},
          {"bot", group_to_json(m.bot)},          {"res42", matrix_to_json(m.res42)},
          {"tr42", matrix_to_json(m.tr42)},       {"res21", matrix_to_json(m.res21)},
          {"tr21", matrix_to_json(m.tr21)},       {"weyl_mid", matrix_to_json(m.weyl_mid)},
          {"weyl_bot", matrix_to_json(m.weyl_bot)}};
}

MackeyC4 mackey_from_json(const nlohmann::json& j) {
  MackeyC4 m;
  m.top = group_from_json(j.at("top"));
  m.mid = group_from_json(j.at("mid"));
  m.bot = group_from_json(j.at("bot"));
  const auto t = m.top.num_generators(), md = m.mid.num_generators(), b = m.bot.num_generators();
  m.res42 = matrix_from_json(j.at("res42"), md, t);
  m.tr42 = matrix_from_json(j.at("tr42"), t, md);
  m.res21 = matrix_from_json(j.at("res21"), b, md);
  m.tr21 = matrix_from_json(j.at("tr21"), md, b);
  m.weyl_mid = matrix_from_json(j.at("weyl_mid"), md, md);
  m.weyl_bot = matrix_from_json(j.at("weyl_bot"), b, b);
  return m;
}

std::size_t act(const std::vector<std::size_t>& perm, std::size_t i, int p) {
  p = ((p % 4) + 4) % 4;
  for (int s = 0; s < p; ++s) i = perm[i];
  return i;
}

IntMatrix permutation_matrix(const std::vector<std::size_t>& perm, int p) {
  IntMatrix m(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) m(act(perm, i, p), i) = 1;
  return m;
}

OrbitBasis orbits(const std::vector<std::size_t>& perm, Subgroup k) {
  const int step = 4 / order(k);
  OrbitBasis ob;
  ob.orbit_of.assign(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (ob.orbit_of[i] != perm.size()) continue;
    const std::size_t idx = ob.rep.size();
    ob.rep.push_back(i);
    ob.members.emplace_back();
    std::size_t j = i;
    do {
      ob.orbit_of[j] = idx;
      ob.members.back().push_back(j);
      j = act(perm, j, step);
    } while (j != i);
    std::sort(ob.members.back().begin(), ob.members.back().end());
  }
  return ob;
}

IntMatrix level_matrix(const IntMatrix& f, const std::vector<std::size_t>& src_perm,
                       const std::vector<std::size_t>& tgt_perm, Subgroup k) {
  if (f.cols() != src_perm.size() || f.rows() != tgt_perm.size())
    throw std::invalid_argument("level_matrix: shape mismatch");
  auto so = orbits(src_perm, k), to = orbits(tgt_perm, k);
  IntMatrix m(to.size(), so.size());
  for (std::size_t c = 0; c < so.size(); ++c)
    for (std::size_t r = 0; r < to.size(); ++r) {
      Integer s = 0;
      for (auto j : so.members[c]) s += f(to.rep[r], j);
      m(r, c) = s;
    }
  return m;
}

IntMatrix res_lattice(const std::vector<std::size_t>& perm, Subgroup from, Subgroup to) {
  if (order(to) > order(from)) throw std::invalid_argument("res_lattice: target must be a subgroup");
  auto big = orbits(perm, from), small = orbits(perm, to);
  IntMatrix m(small.size(), big.size());
  for (std::size_t c = 0; c < big.size(); ++c)
    for (std::size_t r = 0; r < small.size(); ++r)
      if (big.orbit_of[small.rep[r]] == c) m(r, c) = 1;
  return m;
}

IntMatrix tr_lattice(const std::vector<std::size_t>& perm, Subgroup from, Subgroup to) {
  if (order(to) < order(from)) throw std::invalid_argument("tr_lattice: target must be an overgroup");
  auto small = orbits(perm, from), big = orbits(perm, to);
  const int step = 4 / order(to), index = order(to) / order(from);
  IntMatrix m(big.size(), small.size());
  for (std::size_t c = 0; c < small.size(); ++c)
    for (int i = 0; i < index; ++i)
      for (auto j : small.members[c]) {
        std::size_t img = act(perm, j, i * step);
        if (img == big.rep[big.orbit_of[img]]) m(big.orbit_of[img], c) += 1;
      }
  return m;
}

IntMatrix weyl_lattice(const std::vector<std::size_t>& perm, Subgroup k) {
  auto ob = orbits(perm, k);
  IntMatrix m(ob.size(), ob.size());
  for (std::size_t c = 0; c < ob.size(); ++c) m(ob.orbit_of[act(perm, ob.rep[c], 1)], c) = 1;
  return m;
}

void MackeyChainComplex::set_term(int n, std::vector<std::size_t> perm) { perms_[n] = std::move(perm); }

void MackeyChainComplex::set_diff(int n, IntMatrix d) { diffs_[n] = std::move(d); }

int MackeyChainComplex::min_degree() const { return perms_.empty() ? 0 : perms_.begin()->first; }

int MackeyChainComplex::max_degree() const { return perms_.empty() ? -1 : perms_.rbegin()->first; }

std::size_t MackeyChainComplex::rank(int n) const {
  auto it = perms_.find(n);
  return it == perms_.end() ? 0 : it->second.size();
}

const std::vector<std::size_t>& MackeyChainComplex::perm(int n) const {
  static const std::vector<std::size_t> empty;
  auto it = perms_.find(n);
  return it == perms_.end() ? empty : it->second;
}

IntMatrix MackeyChainComplex::diff(int n) const {
  auto it = diffs_.find(n);
  if (it != diffs_.end() && rank(n) > 0 && rank(n - 1) > 0) return it->second;
  return IntMatrix(rank(n - 1), rank(n));
}

std::vector<Subgroup> MackeyChainComplex::orbit_types(int n) const {
  const auto& p = perm(n);
  auto ob = orbits(p, Subgroup::C4);
  std::vector<Subgroup> out;
  for (std::size_t r = 0; r < ob.size(); ++r) {
    auto len = ob.members[r].size();
    out.push_back(len == 1 ? Subgroup::C4 : len == 2 ? Subgroup::C2 : Subgroup::e);
  }
  return out;
}

IntMatrix MackeyChainComplex::level_diff(int n, Subgroup k) const {
  return level_matrix(diff(n), perm(n), perm(n - 1), k);
}

void MackeyChainComplex::validate() const {
  for (const auto& [n, p] : perms_) {
    std::vector<bool> seen(p.size(), false);
    for (auto v : p) {
      if (v >= p.size() || seen[v]) throw std::invalid_argument("term " + std::to_string(n) + ": not a permutation");
      seen[v] = true;
    }
    for (std::size_t i = 0; i < p.size(); ++i)
      if (act(p, i, 4) != i) throw std::invalid_argument("term " + std::to_string(n) + ": generator order exceeds 4");
  }
  for (const auto& [n, d] : diffs_) {
    if (rank(n) == 0 || rank(n - 1) == 0) continue;
    if (d.rows() != rank(n - 1) || d.cols() != rank(n))
      throw std::invalid_argument("diff " + std::to_string(n) + ": wrong shape");
    if (d * permutation_matrix(perm(n)) != permutation_matrix(perm(n - 1)) * d)
      throw std::invalid_argument("diff " + std::to_string(n) + ": not equivariant");
    if (rank(n - 2) > 0 && !(diff(n - 1) * d).is_zero())
      throw std::invalid_argument("d^2 != 0 at degree " + std::to_string(n));
  }
}

MackeyChainComplex MackeyChainComplex::truncate(int lo, int hi) const {
  MackeyChainComplex t;
  for (int n = lo; n <= hi; ++n) {
    if (rank(n) == 0) continue;
    t.set_term(n, perm(n));
    if (n > lo && rank(n - 1) > 0) t.set_diff(n, diff(n));
  }
  return t;
}

nlohmann::json MackeyChainComplex::debug_json() const {
  auto terms = nlohmann::json::array();
  for (const auto& [n, p] : perms_) {
    auto types = nlohmann::json::array();
    for (auto t : orbit_types(n)) types.push_back(std::string("C4/") + name(t));
    nlohmann::json levels;
    for (auto k : kSubgroups) levels[name(k)] = matrix_to_json(level_diff(n, k));
    terms.push_back({{"degree", n}, {"perm", p}, {"orbits", types}, {"diff", levels}});
  }
  return terms;
}

MackeyHomology homology_data(const MackeyChainComplex& c, int n) {
  MackeyHomology out;
  for (auto k : kSubgroups) out.levels[static_cast<int>(k)] = homology(c.level_diff(n + 1, k), c.level_diff(n, k));
  const auto& p = c.perm(n);
  const Homology& T = out.at(Subgroup::C4);
  const Homology& M = out.at(Subgroup::C2);
  const Homology& B = out.at(Subgroup::e);
  MackeyC4& m = out.mackey;
  m.top = T.group;
  m.mid = M.group;
  m.bot = B.group;
  m.res42 = induced_map(res_lattice(p, Subgroup::C4, Subgroup::C2), T, M);
  m.tr42 = induced_map(tr_lattice(p, Subgroup::C2, Subgroup::C4), M, T);
  m.res21 = induced_map(res_lattice(p, Subgroup::C2, Subgroup::e), M, B);
  m.tr21 = induced_map(tr_lattice(p, Subgroup::e, Subgroup::C2), B, M);
  m.weyl_mid = induced_map(weyl_lattice(p, Subgroup::C2), M, M);
  m.weyl_bot = induced_map(weyl_lattice(p, Subgroup::e), B, B);
  return out;
}

MackeyC4 homology_of_complex(const MackeyChainComplex& c, int n) { return homology_data(c, n).mackey; }

}  // namespace c4hz
