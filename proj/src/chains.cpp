#include "c4hz/chains.hpp"

#include <sstream>
#include <stdexcept>

namespace c4hz {

Degree Degree::parse(const std::string& s) {
  std::vector<long> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    long x = 0;
    try {
      x = std::stol(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad degree component '" + tok + "' in '" + s + "'");
    }
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) throw std::invalid_argument("bad degree component '" + tok + "' in '" + s + "'");
    v.push_back(x);
  }
  if (v.size() != 3 || (!s.empty() && s.back() == ','))
    throw std::invalid_argument("degree must be a,b,c: '" + s + "'");
  return {v[0], v[1], v[2]};
}

std::string Degree::str() const {
  return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
}

const char* name(EulerGen g) { return g == EulerGen::alpha ? "alpha" : "lambda"; }

Degree degree_of(EulerGen g) { return g == EulerGen::alpha ? kAlpha : kLambda; }

namespace {

std::vector<std::size_t> cyclic_perm(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}

struct Block {
  int p, q;
  std::size_t offset, rx, ry;
};

std::vector<Block> box_layout(const MackeyChainComplex& x, const MackeyChainComplex& y, int n) {
  std::vector<Block> out;
  std::size_t off = 0;
  for (int p = x.min_degree(); p <= x.max_degree(); ++p) {
    const int q = n - p;
    const std::size_t rx = x.rank(p), ry = y.rank(q);
    if (rx == 0 || ry == 0) continue;
    out.push_back({p, q, off, rx, ry});
    off += rx * ry;
  }
  return out;
}

std::size_t layout_size(const std::vector<Block>& l) { return l.empty() ? 0 : l.back().offset + l.back().rx * l.back().ry; }

const Block* find_block(const std::vector<Block>& l, int p) {
  for (const auto& b : l)
    if (b.p == p) return &b;
  return nullptr;
}

}  // namespace

SphereComplex sphere_zero() {
  SphereComplex s;
  s.chains.set_term(0, {0});
  return s;
}

SphereComplex alpha_power(int n) {
  if (n < 0) throw std::invalid_argument("alpha_power: negative exponent");
  SphereComplex s;
  s.degree = kAlpha * n;
  s.chains.set_term(0, {0});
  for (int k = 1; k <= n; ++k) {
    s.chains.set_term(k, {1, 0});
    if (k == 1) {
      s.chains.set_diff(1, IntMatrix{{1, 1}});
    } else {
      const long sg = (k % 2 == 0) ? -1 : 1;
      s.chains.set_diff(k, IntMatrix{{1, sg}, {sg, 1}});
    }
  }
  s.orientation_log.push_back("alpha cells: d1 = [1,1]; d_k = [[1,s],[s,1]] with s = (-1)^(k-1)");
  s.chains.validate();
  return s;
}

SphereComplex lambda_power(int n) {
  if (n < 0) throw std::invalid_argument("lambda_power: negative exponent");
  SphereComplex s;
  s.degree = kLambda * n;
  s.chains.set_term(0, {0});
  for (int k = 1; k <= 2 * n; ++k) {
    s.chains.set_term(k, cyclic_perm(4));
    IntMatrix d(k == 1 ? 1 : 4, 4);
    for (std::size_t j = 0; j < 4; ++j) {
      if (k == 1) {
        d(0, j) = 1;
      } else if (k % 2 == 0) {
        d(j, j) += 1;
        d((j + 1) % 4, j) -= 1;
      } else {
        for (std::size_t i = 0; i < 4; ++i) d(i, j) = 1;
      }
    }
    s.chains.set_diff(k, d);
  }
  s.orientation_log.push_back("lambda cells: d1 = augmentation; even d = 1 - g; odd d >= 3 = norm");
  s.chains.validate();
  return s;
}

SphereComplex sphere_alpha() { return alpha_power(1); }

SphereComplex sphere_lambda() { return lambda_power(1); }

SphereComplex dual(const SphereComplex& c) {
  SphereComplex d;
  d.degree = -c.degree;
  d.orientation_log = c.orientation_log;
  d.orientation_log.push_back("dual: D_{-n} = C_n, differential is the transpose");
  const auto& C = c.chains;
  for (int n = C.min_degree(); n <= C.max_degree(); ++n)
    if (C.rank(n) > 0) d.chains.set_term(-n, C.perm(n));
  for (int n = C.min_degree(); n < C.max_degree(); ++n)
    if (C.rank(n) > 0 && C.rank(n + 1) > 0) d.chains.set_diff(-n, C.diff(n + 1).transpose());
  d.chains.validate();
  return d;
}

SphereComplex box(const SphereComplex& x, const SphereComplex& y) {
  SphereComplex s;
  s.degree = x.degree + y.degree;
  s.orientation_log = x.orientation_log;
  s.orientation_log.insert(s.orientation_log.end(), y.orientation_log.begin(), y.orientation_log.end());
  const auto& X = x.chains;
  const auto& Y = y.chains;
  const int lo = X.min_degree() + Y.min_degree(), hi = X.max_degree() + Y.max_degree();
  for (int n = lo; n <= hi; ++n) {
    auto L = box_layout(X, Y, n);
    if (L.empty()) continue;
    std::vector<std::size_t> perm(layout_size(L));
    for (const auto& b : L) {
      const auto& px = X.perm(b.p);
      const auto& py = Y.perm(b.q);
      for (std::size_t i = 0; i < b.rx; ++i)
        for (std::size_t j = 0; j < b.ry; ++j) perm[b.offset + i * b.ry + j] = b.offset + px[i] * b.ry + py[j];
    }
    s.chains.set_term(n, perm);
  }
  for (int n = lo + 1; n <= hi; ++n) {
    auto src = box_layout(X, Y, n), tgt = box_layout(X, Y, n - 1);
    if (src.empty() || tgt.empty()) continue;
    IntMatrix d(layout_size(tgt), layout_size(src));
    for (const auto& b : src) {
      if (const Block* t = find_block(tgt, b.p - 1))
        d.set_block(t->offset, b.offset, IntMatrix::kron(X.diff(b.p), IntMatrix::identity(b.ry)));
      if (const Block* t = find_block(tgt, b.p)) {
        IntMatrix m = IntMatrix::kron(IntMatrix::identity(b.rx), Y.diff(b.q));
        d.set_block(t->offset, b.offset, (b.p % 2 == 0) ? m : -m);
      }
    }
    s.chains.set_diff(n, d);
  }
  s.orientation_log.push_back("box: d(x@y) = dx@y + (-1)^|x| x@dy, blocks ordered by |x|");
  s.chains.validate();
  return s;
}

SphereComplex shift(const SphereComplex& c, int a) {
  SphereComplex s;
  s.degree = c.degree + Degree{a, 0, 0};
  s.orientation_log = c.orientation_log;
  const auto& C = c.chains;
  for (int n = C.min_degree(); n <= C.max_degree(); ++n) {
    if (C.rank(n) == 0) continue;
    s.chains.set_term(n + a, C.perm(n));
    if (C.rank(n - 1) > 0) s.chains.set_diff(n + a, C.diff(n));
  }
  return s;
}

namespace {

SphereComplex alpha_factor(long b) {
  return b >= 0 ? alpha_power(static_cast<int>(b)) : dual(alpha_power(static_cast<int>(-b)));
}

SphereComplex lambda_factor(long c) {
  return c >= 0 ? lambda_power(static_cast<int>(c)) : dual(lambda_power(static_cast<int>(-c)));
}

// Inclusion S^{b alpha} -> S^{(b+1) alpha} (or the dual projection) for the minimal structures.
ChainMap factor_euler(const SphereComplex& src, const SphereComplex& tgt) {
  ChainMap f;
  const auto& S = src.chains;
  const auto& T = tgt.chains;
  for (int n = S.min_degree(); n <= S.max_degree(); ++n) {
    if (S.rank(n) == 0) continue;
    if (T.rank(n) == S.rank(n))
      f.comp[n] = IntMatrix::identity(S.rank(n));
    else
      f.comp[n] = IntMatrix(T.rank(n), S.rank(n));
  }
  return f;
}

}  // namespace

SphereComplex assemble(const Degree& d) {
  SphereComplex s = shift(box(alpha_factor(d.b), lambda_factor(d.c)), static_cast<int>(d.a));
  s.degree = d;
  return s;
}

SphereComplex assemble_boxed(const Degree& d) {
  SphereComplex s = sphere_zero();
  const SphereComplex a = d.b >= 0 ? sphere_alpha() : dual(sphere_alpha());
  const SphereComplex l = d.c >= 0 ? sphere_lambda() : dual(sphere_lambda());
  for (long i = 0; i < std::labs(d.b); ++i) s = box(s, a);
  for (long i = 0; i < std::labs(d.c); ++i) s = box(s, l);
  s = shift(s, static_cast<int>(d.a));
  s.degree = d;
  return s;
}

IntMatrix ChainMap::at(int n, std::size_t rows, std::size_t cols) const {
  auto it = comp.find(n);
  if (it == comp.end()) return IntMatrix(rows, cols);
  if (it->second.rows() != rows || it->second.cols() != cols)
    throw std::invalid_argument("chain map component " + std::to_string(n) + " has the wrong shape");
  return it->second;
}

void check_chain_map(const ChainMap& f, const MackeyChainComplex& src, const MackeyChainComplex& tgt) {
  const int lo = std::min(src.min_degree(), tgt.min_degree()), hi = std::max(src.max_degree(), tgt.max_degree());
  for (int n = lo; n <= hi; ++n) {
    IntMatrix fn = f.at(n, tgt.rank(n), src.rank(n));
    if (fn.empty()) continue;
    if (fn * permutation_matrix(src.perm(n)) != permutation_matrix(tgt.perm(n)) * fn)
      throw std::invalid_argument("chain map not equivariant in degree " + std::to_string(n));
    IntMatrix fm = f.at(n - 1, tgt.rank(n - 1), src.rank(n - 1));
    if (tgt.diff(n) * fn != fm * src.diff(n))
      throw std::invalid_argument("chain map does not commute with d in degree " + std::to_string(n));
  }
}

ChainMap identity_map(const MackeyChainComplex& c) {
  ChainMap f;
  for (int n = c.min_degree(); n <= c.max_degree(); ++n)
    if (c.rank(n) > 0) f.comp[n] = IntMatrix::identity(c.rank(n));
  return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  ChainMap h;
  for (const auto& [n, fn] : f.comp) {
    auto it = g.comp.find(n);
    if (it == g.comp.end()) continue;
    h.comp[n] = it->second * fn;
  }
  return h;
}

ChainMap box_map(const ChainMap& f, const MackeyChainComplex& f_src, const MackeyChainComplex& f_tgt,
                 const ChainMap& g, const MackeyChainComplex& g_src, const MackeyChainComplex& g_tgt) {
  ChainMap h;
  const int lo = f_src.min_degree() + g_src.min_degree(), hi = f_src.max_degree() + g_src.max_degree();
  for (int n = lo; n <= hi; ++n) {
    auto S = box_layout(f_src, g_src, n), T = box_layout(f_tgt, g_tgt, n);
    if (S.empty()) continue;
    IntMatrix m(layout_size(T), layout_size(S));
    for (const auto& b : S)
      if (const Block* t = find_block(T, b.p); t && t->q == b.q)
        m.set_block(t->offset, b.offset,
                    IntMatrix::kron(f.at(b.p, t->rx, b.rx), g.at(b.q, t->ry, b.ry)));
    h.comp[n] = m;
  }
  return h;
}

ChainMap euler_inclusion(const Degree& d, EulerGen gen) {
  const Degree e = d + degree_of(gen);
  SphereComplex as = alpha_factor(d.b), at = alpha_factor(e.b);
  SphereComplex ls = lambda_factor(d.c), lt = lambda_factor(e.c);
  ChainMap fa = gen == EulerGen::alpha ? factor_euler(as, at) : identity_map(as.chains);
  ChainMap fl = gen == EulerGen::lambda ? factor_euler(ls, lt) : identity_map(ls.chains);
  ChainMap unshifted = box_map(fa, as.chains, at.chains, fl, ls.chains, lt.chains);
  ChainMap f;
  for (auto& [n, m] : unshifted.comp) f.comp[n + static_cast<int>(d.a)] = std::move(m);
  return f;
}

ChainMap euler_chain_map(const SphereComplex& c, EulerGen gen) {
  const SphereComplex s = gen == EulerGen::alpha ? sphere_alpha() : sphere_lambda();
  const auto& C = c.chains;
  ChainMap f;
  for (int n = C.min_degree(); n <= C.max_degree(); ++n) {
    if (C.rank(n) == 0) continue;
    auto T = box_layout(C, s.chains, n);
    IntMatrix m(layout_size(T), C.rank(n));
    if (const Block* t = find_block(T, n)) m.set_block(t->offset, 0, IntMatrix::identity(C.rank(n)));
    f.comp[n] = m;
  }
  return f;
}

IntMatrix induced_level_map(const ChainMap& f, const MackeyChainComplex& src, const MackeyChainComplex& tgt, int n,
                            Subgroup k, const Homology& hs, const Homology& ht) {
  IntMatrix fn = f.at(n, tgt.rank(n), src.rank(n));
  return induced_map(level_matrix(fn, src.perm(n), tgt.perm(n), k), hs, ht);
}

}  // namespace c4hz
