#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "c4hz/mackey.hpp"

namespace c4hz {

/// The virtual representation a + b*alpha + c*lambda.
struct Degree {
  long a = 0, b = 0, c = 0;

  /// Parses "a,b,c"; throws std::invalid_argument on malformed input.
  static Degree parse(const std::string& s);
  std::string str() const;
  /// Real dimension of the underlying representation.
  long dim() const { return a + b + 2 * c; }

  Degree operator+(const Degree& o) const { return {a + o.a, b + o.b, c + o.c}; }
  Degree operator-(const Degree& o) const { return {a - o.a, b - o.b, c - o.c}; }
  Degree operator-() const { return {-a, -b, -c}; }
  Degree operator*(long k) const { return {a * k, b * k, c * k}; }
  auto operator<=>(const Degree&) const = default;
};

inline const Degree kAlpha{0, 1, 0};
inline const Degree kLambda{0, 0, 1};

enum class EulerGen { alpha, lambda };
const char* name(EulerGen g);
Degree degree_of(EulerGen g);

/// Chain complex of a representation sphere together with its provenance.
struct SphereComplex {
  MackeyChainComplex chains;
  Degree degree;
  std::vector<std::string> orientation_log;
};

SphereComplex sphere_zero();
/// Reduced cells of S^alpha: a fixed 0-cell and a 1-cell of type C4/C2.
SphereComplex sphere_alpha();
/// Reduced cells of S^lambda: a fixed 0-cell and free 1- and 2-cells.
SphereComplex sphere_lambda();
/// Minimal structure on S^{n alpha}: one C4/C2 cell in each degree 1..n (n >= 0).
SphereComplex alpha_power(int n);
/// Minimal structure on S^{n lambda}: one free cell in each degree 1..2n (n >= 0).
SphereComplex lambda_power(int n);

/// Spanier-Whitehead dual: C_n becomes degree -n and differentials are transposed.
SphereComplex dual(const SphereComplex& c);
SphereComplex box(const SphereComplex& x, const SphereComplex& y);
SphereComplex shift(const SphereComplex& c, int a);

/// Chains of S^d built from the minimal alpha and lambda structures.
SphereComplex assemble(const Degree& d);
/// Chains of S^d as the box of |b| copies of S^{+-alpha} and |c| of S^{+-lambda}, without cancellation.
SphereComplex assemble_boxed(const Degree& d);

/// Equivariant degree-preserving chain map, one component per chain degree.
struct ChainMap {
  std::map<int, IntMatrix> comp;  // comp[n] : C_n -> D_n
  IntMatrix at(int n, std::size_t rows, std::size_t cols) const;
};

/// Throws std::invalid_argument unless f commutes with the differentials and the group action.
void check_chain_map(const ChainMap& f, const MackeyChainComplex& src, const MackeyChainComplex& tgt);
ChainMap identity_map(const MackeyChainComplex& c);
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap box_map(const ChainMap& f, const MackeyChainComplex& f_src, const MackeyChainComplex& f_tgt,
                 const ChainMap& g, const MackeyChainComplex& g_src, const MackeyChainComplex& g_tgt);

/// Multiplication by the Euler class of gen as a map S^d -> S^{d + gen} of minimal complexes.
ChainMap euler_inclusion(const Degree& d, EulerGen gen);
/// The map C -> C box S^gen sending x to x tensor (fixed 0-cell).
ChainMap euler_chain_map(const SphereComplex& c, EulerGen gen);

/// Map on level-k homology in degree n induced by a chain map.
IntMatrix induced_level_map(const ChainMap& f, const MackeyChainComplex& src, const MackeyChainComplex& tgt, int n,
                            Subgroup k, const Homology& hs, const Homology& ht);

}  // namespace c4hz
