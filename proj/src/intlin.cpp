#include "c4hz/intlin.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace c4hz {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntMatrix IntMatrix::column(const std::vector<Integer>& v) {
  IntMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
  IntMatrix p(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Integer& b = o(k, j);
        if (b != 0) mpz_addmul(p(i, j).get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      }
    }
  return p;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMatrix: dimension mismatch in sum");
  IntMatrix s(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) s.data_[k] += o.data_[k];
  return s;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMatrix: dimension mismatch in difference");
  IntMatrix s(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) s.data_[k] -= o.data_[k];
  return s;
}

IntMatrix IntMatrix::operator-() const { return scaled(-1); }

IntMatrix IntMatrix::scaled(const Integer& s) const {
  IntMatrix r(*this);
  for (auto& v : r.data_) v *= s;
  return r;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("IntMatrix::block");
  IntMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void IntMatrix::set_block(std::size_t r0, std::size_t c0, const IntMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("IntMatrix::set_block");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

IntMatrix IntMatrix::col(std::size_t j) const { return block(0, j, rows_, 1); }

IntMatrix IntMatrix::hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("IntMatrix::hcat: row mismatch");
  IntMatrix m(a.rows_, a.cols_ + b.cols_);
  m.set_block(0, 0, a);
  m.set_block(0, a.cols_, b);
  return m;
}

IntMatrix IntMatrix::vcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix::vcat: column mismatch");
  IntMatrix m(a.rows_ + b.rows_, a.cols_);
  m.set_block(0, 0, a);
  m.set_block(a.rows_, 0, b);
  return m;
}

IntMatrix IntMatrix::kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) {
      const Integer& x = a(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows_; ++k)
        for (std::size_t l = 0; l < b.cols_; ++l) m(i * b.rows_ + k, j * b.cols_ + l) = x * b(k, l);
    }
  return m;
}

std::vector<std::vector<long>> IntMatrix::to_longs() const {
  std::vector<std::vector<long>> out(rows_, std::vector<long>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!(*this)(i, j).fits_slong_p()) throw std::overflow_error("IntMatrix::to_longs: entry too large");
      out[i][j] = (*this)(i, j).get_si();
    }
  return out;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

namespace {

// Elementary operations applied simultaneously to A, its row transform U and column transform V,
// keeping the inverses current.
class SmithWorker {
 public:
  explicit SmithWorker(const IntMatrix& m)
      : A(m),
        U(IntMatrix::identity(m.rows())),
        Ui(IntMatrix::identity(m.rows())),
        V(IntMatrix::identity(m.cols())),
        Vi(IntMatrix::identity(m.cols())) {}

  IntMatrix A, U, Ui, V, Vi;

  // row_i += c * row_j
  void row_add(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < A.cols(); ++k) mpz_addmul(A(i, k).get_mpz_t(), c.get_mpz_t(), A(j, k).get_mpz_t());
    for (std::size_t k = 0; k < U.cols(); ++k) mpz_addmul(U(i, k).get_mpz_t(), c.get_mpz_t(), U(j, k).get_mpz_t());
    for (std::size_t k = 0; k < Ui.rows(); ++k) mpz_submul(Ui(k, j).get_mpz_t(), c.get_mpz_t(), Ui(k, i).get_mpz_t());
  }
  void row_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < A.cols(); ++k) std::swap(A(i, k), A(j, k));
    for (std::size_t k = 0; k < U.cols(); ++k) std::swap(U(i, k), U(j, k));
    for (std::size_t k = 0; k < Ui.rows(); ++k) std::swap(Ui(k, i), Ui(k, j));
  }
  void row_neg(std::size_t i) {
    for (std::size_t k = 0; k < A.cols(); ++k) A(i, k) = -A(i, k);
    for (std::size_t k = 0; k < U.cols(); ++k) U(i, k) = -U(i, k);
    for (std::size_t k = 0; k < Ui.rows(); ++k) Ui(k, i) = -Ui(k, i);
  }
  // col_i += c * col_j
  void col_add(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < A.rows(); ++k) mpz_addmul(A(k, i).get_mpz_t(), c.get_mpz_t(), A(k, j).get_mpz_t());
    for (std::size_t k = 0; k < V.rows(); ++k) mpz_addmul(V(k, i).get_mpz_t(), c.get_mpz_t(), V(k, j).get_mpz_t());
    for (std::size_t k = 0; k < Vi.cols(); ++k) mpz_submul(Vi(j, k).get_mpz_t(), c.get_mpz_t(), Vi(i, k).get_mpz_t());
  }
  void col_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < A.rows(); ++k) std::swap(A(k, i), A(k, j));
    for (std::size_t k = 0; k < V.rows(); ++k) std::swap(V(k, i), V(k, j));
    for (std::size_t k = 0; k < Vi.cols(); ++k) std::swap(Vi(i, k), Vi(j, k));
  }

  std::size_t run() {
    const std::size_t m = A.rows(), n = A.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      for (;;) {
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
          for (std::size_t j = t; j < n; ++j)
            if (A(i, j) != 0 && (pi == m || mpz_cmpabs(A(i, j).get_mpz_t(), A(pi, pj).get_mpz_t()) < 0)) {
              pi = i;
              pj = j;
            }
        if (pi == m) return t;
        row_swap(t, pi);
        col_swap(t, pj);
        bool clean = true;
        Integer q;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (A(i, t) == 0) continue;
          mpz_tdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
          if (q != 0) row_add(i, t, -q);
          if (A(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (A(t, j) == 0) continue;
          mpz_tdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
          if (q != 0) col_add(j, t, -q);
          if (A(t, j) != 0) clean = false;
        }
        if (!clean) continue;
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
              row_add(t, i, 1);
              divides = false;
              break;
            }
        if (divides) break;
      }
      if (A(t, t) < 0) row_neg(t);
    }
    return t;
  }
};

std::vector<Integer> nonzero_orders(const std::vector<Integer>& orders, std::vector<std::size_t>* positions) {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (orders[i] != 0) {
      out.push_back(orders[i]);
      if (positions) positions->push_back(i);
    }
  return out;
}

// Columns orders[i] * e_i for the torsion generators of a presented group.
IntMatrix relation_matrix(const std::vector<Integer>& orders) {
  std::vector<std::size_t> pos;
  auto nz = nonzero_orders(orders, &pos);
  IntMatrix r(orders.size(), nz.size());
  for (std::size_t k = 0; k < nz.size(); ++k) r(pos[k], k) = nz[k];
  return r;
}

FinAbGroup group_from_snf(const SmithForm& sf, std::size_t ambient) {
  FinAbGroup g;
  for (std::size_t i = 0; i < sf.rank; ++i)
    if (sf.S(i, i) != 1) g.torsion.push_back(sf.S(i, i));
  g.free_rank = static_cast<int>(ambient - sf.rank);
  return g;
}

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

SmithForm snf(const IntMatrix& m) {
  SmithWorker w(m);
  SmithForm f;
  f.rank = w.run();
  f.S = std::move(w.A);
  f.U = std::move(w.U);
  f.U_inv = std::move(w.Ui);
  f.V = std::move(w.V);
  f.V_inv = std::move(w.Vi);
  return f;
}

Integer abs_det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("abs_det: matrix not square");
  auto f = snf(m);
  if (f.rank < m.rows()) return 0;
  Integer d = 1;
  for (std::size_t i = 0; i < f.rank; ++i) d *= f.S(i, i);
  return d;
}

FinAbGroup FinAbGroup::from_orders(const std::vector<Integer>& orders) {
  return group_from_snf(snf(IntMatrix::diagonal(orders)), orders.size());
}

std::vector<Integer> FinAbGroup::orders() const {
  std::vector<Integer> o(torsion);
  o.insert(o.end(), static_cast<std::size_t>(free_rank), Integer(0));
  return o;
}

std::string FinAbGroup::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : torsion) {
    os << (first ? "" : "+") << "Z/" << t.get_str();
    first = false;
  }
  for (int i = 0; i < free_rank; ++i) {
    os << (first ? "" : "+") << "Z";
    first = false;
  }
  return os.str();
}

bool Homology::is_cycle(const IntMatrix& v) const { return (d_out * v).is_zero(); }

IntMatrix Homology::project(const IntMatrix& cycles) const {
  return reduce_rows(projection * cycles, orders);
}

Homology homology(const IntMatrix& d_in, const IntMatrix& d_out) {
  if (d_out.cols() != d_in.rows()) throw std::invalid_argument("homology: d_in and d_out do not compose");
  if (!(d_out * d_in).is_zero()) throw std::invalid_argument("homology: d_out * d_in != 0");
  const std::size_t n = d_out.cols();
  Homology h;
  h.d_in = d_in;
  h.d_out = d_out;
  auto f1 = snf(d_out);
  const std::size_t r = f1.rank, k = n - r;
  std::vector<std::size_t> kidx;
  for (std::size_t i = r; i < n; ++i) kidx.push_back(i);
  IntMatrix K = f1.V.select_cols(kidx);
  IntMatrix P = f1.V_inv.select_rows(kidx);
  IntMatrix X = P * d_in;
  auto f2 = snf(X);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < k; ++i) {
    Integer s = i < f2.rank ? f2.S(i, i) : Integer(0);
    if (s == 1) continue;
    keep.push_back(i);
    h.orders.push_back(s);
  }
  h.generators = (K * f2.U_inv).select_cols(keep);
  h.projection = (f2.U * P).select_rows(keep);
  if (h.generators.rows() != n) h.generators = IntMatrix(n, keep.size());
  if (h.projection.cols() != n) h.projection = IntMatrix(keep.size(), n);
  for (const auto& o : h.orders)
    if (o != 0) h.group.torsion.push_back(o);
  h.group.free_rank = static_cast<int>(k - f2.rank);
  h.group.basis_map = h.generators;
  return h;
}

IntMatrix induced_map(const IntMatrix& f, const Homology& src, const Homology& tgt) {
  if (f.cols() != src.ambient() || f.rows() != tgt.ambient())
    throw std::invalid_argument("induced_map: chain map has the wrong shape");
  IntMatrix img = f * src.generators;
  if (!tgt.is_cycle(img)) throw std::invalid_argument("induced_map: chain map does not send cycles to cycles");
  if (src.d_in.cols() > 0 && !tgt.project(f * src.d_in).is_zero())
    throw std::invalid_argument("induced_map: chain map does not send boundaries to boundaries");
  return tgt.project(img);
}

IntMatrix reduce_rows(const IntMatrix& m, const std::vector<Integer>& orders) {
  if (orders.size() != m.rows()) throw std::invalid_argument("reduce_rows: order count mismatch");
  IntMatrix r(m);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (orders[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_fdiv_r(r(i, j).get_mpz_t(), r(i, j).get_mpz_t(), orders[i].get_mpz_t());
  }
  return r;
}

FinAbGroup subquotient(const IntMatrix& L, const IntMatrix& R) {
  if (L.rows() != R.rows()) throw std::invalid_argument("subquotient: ambient mismatch");
  auto f = snf(L);
  IntMatrix W = f.U * R;
  IntMatrix coords(f.rank, R.cols());
  for (std::size_t j = 0; j < R.cols(); ++j) {
    for (std::size_t i = f.rank; i < W.rows(); ++i)
      if (W(i, j) != 0) throw std::invalid_argument("subquotient: relation lattice not contained in L");
    for (std::size_t i = 0; i < f.rank; ++i) {
      if (!mpz_divisible_p(W(i, j).get_mpz_t(), f.S(i, i).get_mpz_t()))
        throw std::invalid_argument("subquotient: relation lattice not contained in L");
      mpz_divexact(coords(i, j).get_mpz_t(), W(i, j).get_mpz_t(), f.S(i, i).get_mpz_t());
    }
  }
  return group_from_snf(snf(coords), f.rank);
}

bool in_lattice(const IntMatrix& L, const IntMatrix& v) {
  if (L.rows() != v.rows()) throw std::invalid_argument("in_lattice: ambient mismatch");
  auto f = snf(L);
  IntMatrix W = f.U * v;
  for (std::size_t j = 0; j < v.cols(); ++j) {
    for (std::size_t i = f.rank; i < W.rows(); ++i)
      if (W(i, j) != 0) return false;
    for (std::size_t i = 0; i < f.rank; ++i)
      if (!mpz_divisible_p(W(i, j).get_mpz_t(), f.S(i, i).get_mpz_t())) return false;
  }
  return true;
}

IntMatrix kernel_basis(const IntMatrix& m) {
  auto f = snf(m);
  std::vector<std::size_t> idx;
  for (std::size_t i = f.rank; i < m.cols(); ++i) idx.push_back(i);
  return f.V.select_cols(idx);
}

std::string HomInvariants::str() const {
  return "ker=" + kernel.str() + " im=" + image.str() + " coker=" + cokernel.str();
}

IntMatrix hom_kernel(const IntMatrix& f, const std::vector<Integer>& src_orders,
                     const std::vector<Integer>& tgt_orders) {
  if (f.cols() != src_orders.size() || f.rows() != tgt_orders.size())
    throw std::invalid_argument("hom_kernel: shape mismatch");
  IntMatrix K = kernel_basis(IntMatrix::hcat(f, relation_matrix(tgt_orders)));
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < f.cols(); ++i) rows.push_back(i);
  return K.select_rows(rows);
}

HomInvariants hom_invariants(const IntMatrix& f, const std::vector<Integer>& src_orders,
                             const std::vector<Integer>& tgt_orders) {
  if (f.cols() != src_orders.size() || f.rows() != tgt_orders.size())
    throw std::invalid_argument("hom_invariants: shape mismatch");
  IntMatrix RB = relation_matrix(tgt_orders);
  IntMatrix RA = relation_matrix(src_orders);
  IntMatrix L = IntMatrix::hcat(f, RB);
  HomInvariants inv;
  inv.cokernel = group_from_snf(snf(L), tgt_orders.size());
  inv.image = subquotient(L, RB);
  IntMatrix Kx = hom_kernel(f, src_orders, tgt_orders);
  if (!in_lattice(Kx, RA)) throw std::invalid_argument("hom_invariants: map is not well defined on torsion");
  inv.kernel = subquotient(Kx, RA);
  return inv;
}

bool same_subgroup(const IntMatrix& g1, const IntMatrix& g2, const std::vector<Integer>& orders) {
  IntMatrix R = relation_matrix(orders);
  return in_lattice(IntMatrix::hcat(g2, R), g1) && in_lattice(IntMatrix::hcat(g1, R), g2);
}

}  // namespace c4hz
