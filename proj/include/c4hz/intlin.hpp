#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace c4hz {

using Integer = mpz_class;

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Integer>& d);
  static IntMatrix column(const std::vector<Integer>& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix operator-() const;
  IntMatrix scaled(const Integer& s) const;
  bool operator==(const IntMatrix& o) const;
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }
  bool is_zero() const;

  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b);
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  IntMatrix select_cols(const std::vector<std::size_t>& idx) const;
  IntMatrix col(std::size_t j) const;

  static IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vcat(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix kron(const IntMatrix& a, const IntMatrix& b);

  std::vector<std::vector<long>> to_longs() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// U * M * V = S with U, V unimodular and S diagonal, d1 | d2 | ... , all d_i >= 0.
struct SmithForm {
  IntMatrix S, U, V, U_inv, V_inv;
  std::size_t rank = 0;
  std::vector<Integer> diagonal() const;
};

SmithForm snf(const IntMatrix& m);

/// Absolute value of the determinant of a square matrix.
Integer abs_det(const IntMatrix& m);

/// Finitely generated abelian group Z^free_rank + sum Z/torsion[i].
/// Generators are ordered torsion first (ascending) and then free.
struct FinAbGroup {
  int free_rank = 0;
  std::vector<Integer> torsion;
  std::optional<IntMatrix> basis_map;

  static FinAbGroup from_orders(const std::vector<Integer>& orders);
  std::vector<Integer> orders() const;
  std::size_t num_generators() const { return torsion.size() + static_cast<std::size_t>(free_rank); }
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_cyclic() const { return num_generators() <= 1; }
  bool same_type(const FinAbGroup& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
  bool operator==(const FinAbGroup& o) const { return same_type(o); }
  std::string str() const;
};

/// Homology ker(d_out)/im(d_in) with a chosen basis.
struct Homology {
  FinAbGroup group;
  std::vector<Integer> orders;  // order of each generator, 0 for free
  IntMatrix generators;         // ambient x g, columns are cycle representatives
  IntMatrix projection;         // g x ambient, valid on cycles
  IntMatrix d_in, d_out;

  std::size_t ambient() const { return d_out.cols(); }
  bool is_cycle(const IntMatrix& v) const;
  /// Class of each column of `cycles`, reduced modulo the generator orders.
  IntMatrix project(const IntMatrix& cycles) const;
};

Homology homology(const IntMatrix& d_in, const IntMatrix& d_out);

/// Matrix of the map induced on homology by the chain-level map f (ambient_tgt x ambient_src).
IntMatrix induced_map(const IntMatrix& f, const Homology& src, const Homology& tgt);

/// Reduce each row i modulo orders[i] (rows with order 0 are left alone).
IntMatrix reduce_rows(const IntMatrix& m, const std::vector<Integer>& orders);

/// Group type of L/R where the columns of R lie in the lattice spanned by the columns of L.
FinAbGroup subquotient(const IntMatrix& L, const IntMatrix& R);

/// Whether each column of v lies in the column span of L.
bool in_lattice(const IntMatrix& L, const IntMatrix& v);

/// Generators (as columns) of the kernel lattice of a matrix.
IntMatrix kernel_basis(const IntMatrix& m);

/// Kernel, image and cokernel of a homomorphism between presented groups.
struct HomInvariants {
  FinAbGroup kernel, image, cokernel;
  bool operator==(const HomInvariants& o) const {
    return kernel == o.kernel && image == o.image && cokernel == o.cokernel;
  }
  std::string str() const;
};

HomInvariants hom_invariants(const IntMatrix& f, const std::vector<Integer>& src_orders,
                             const std::vector<Integer>& tgt_orders);

/// Generators of the kernel subgroup of f, in source coordinates.
IntMatrix hom_kernel(const IntMatrix& f, const std::vector<Integer>& src_orders,
                     const std::vector<Integer>& tgt_orders);

/// Equality of the subgroups generated by the columns of g1 and g2 inside a presented group.
bool same_subgroup(const IntMatrix& g1, const IntMatrix& g2, const std::vector<Integer>& orders);

}  // namespace c4hz
