#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "c4hz/intlin.hpp"

namespace c4hz {

/// Subgroups of C4, ordered e < C2 < C4.
enum class Subgroup { e = 0, C2 = 1, C4 = 2 };

int order(Subgroup k);
const char* name(Subgroup k);
inline constexpr std::array<Subgroup, 3> kSubgroups{Subgroup::e, Subgroup::C2, Subgroup::C4};

/// A C4-Mackey functor. Generators of each level are ordered torsion (ascending) then free.
struct MackeyC4 {
  FinAbGroup top, mid, bot;
  IntMatrix res42, tr42, res21, tr21;  // res: mid x top, tr: top x mid, etc.
  IntMatrix weyl_mid, weyl_bot;

  static MackeyC4 zero();
  static MackeyC4 constant_z();

  const FinAbGroup& level(Subgroup k) const;
  std::vector<Integer> orders(Subgroup k) const { return level(k).orders(); }
  bool is_zero() const { return top.is_zero() && mid.is_zero() && bot.is_zero(); }
  std::string str() const;
};

/// Direct sum, with generators re-sorted into canonical order.
MackeyC4 direct_sum(const MackeyC4& a, const MackeyC4& b);

/// The fixed-point functor of the permutation module Z[C4/H].
MackeyC4 permutation_mackey(Subgroup h);

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool passed() const;
  std::string failures() const;
};

AxiomReport check_axioms(const MackeyC4& m);

/// Whether A and B agree modulo the orders of the target generators.
bool equal_mod(const IntMatrix& a, const IntMatrix& b, const std::vector<Integer>& target_orders);

/// Isomorphism invariants used by compare.
struct MackeyInvariants {
  FinAbGroup top, mid, bot;
  HomInvariants res42, tr42, res21, tr21;
  FinAbGroup weyl_mid_fixed, weyl_bot_fixed;
  bool operator==(const MackeyInvariants& o) const;
};

MackeyInvariants invariants(const MackeyC4& m);
bool compare(const MackeyC4& a, const MackeyC4& b);
/// Empty when compare succeeds, otherwise the first differing invariant.
std::string compare_detail(const MackeyC4& a, const MackeyC4& b);

nlohmann::json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols);
nlohmann::json group_to_json(const FinAbGroup& g);
FinAbGroup group_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MackeyC4& m);
MackeyC4 mackey_from_json(const nlohmann::json& j);

// Lattices of fixed points of a permutation module. perm[i] is the image of basis vector i under the
// generator; the level-K lattice has one basis vector per K-orbit, the orbit sum.

struct OrbitBasis {
  std::vector<std::size_t> rep;       // smallest member of each orbit
  std::vector<std::size_t> orbit_of;  // orbit index of each underlying basis vector
  std::vector<std::vector<std::size_t>> members;
  std::size_t size() const { return rep.size(); }
};

OrbitBasis orbits(const std::vector<std::size_t>& perm, Subgroup k);
/// Applies the generator power g^p to a basis index.
std::size_t act(const std::vector<std::size_t>& perm, std::size_t i, int p);
/// Matrix of the underlying permutation action g^p.
IntMatrix permutation_matrix(const std::vector<std::size_t>& perm, int p = 1);

/// Level-K matrix of an equivariant map f (tgt x src) between permutation modules.
IntMatrix level_matrix(const IntMatrix& f, const std::vector<std::size_t>& src_perm,
                       const std::vector<std::size_t>& tgt_perm, Subgroup k);
IntMatrix res_lattice(const std::vector<std::size_t>& perm, Subgroup from, Subgroup to);
IntMatrix tr_lattice(const std::vector<std::size_t>& perm, Subgroup from, Subgroup to);
IntMatrix weyl_lattice(const std::vector<std::size_t>& perm, Subgroup k);

/// Bounded complex of permutation modules with equivariant differentials d_n : C_n -> C_{n-1}.
/// Its Mackey chain complex is the levelwise fixed-point lattice.
class MackeyChainComplex {
 public:
  void set_term(int n, std::vector<std::size_t> perm);
  void set_diff(int n, IntMatrix d);

  int min_degree() const;
  int max_degree() const;
  std::size_t rank(int n) const;
  const std::vector<std::size_t>& perm(int n) const;
  /// d_n : C_n -> C_{n-1}; a zero matrix of the right shape when absent.
  IntMatrix diff(int n) const;
  /// Orbit type C4/H of each C4-orbit of cells, listed by the stabilizer H.
  std::vector<Subgroup> orbit_types(int n) const;
  IntMatrix level_diff(int n, Subgroup k) const;

  /// Throws std::invalid_argument on a malformed complex (shape, perm, equivariance, d^2).
  void validate() const;
  /// Keeps only the chain degrees lo..hi.
  MackeyChainComplex truncate(int lo, int hi) const;
  nlohmann::json debug_json() const;

 private:
  std::map<int, std::vector<std::size_t>> perms_;
  std::map<int, IntMatrix> diffs_;
};

/// Levelwise homology with the chosen bases retained.
struct MackeyHomology {
  MackeyC4 mackey;
  std::array<Homology, 3> levels;  // indexed by Subgroup
  const Homology& at(Subgroup k) const { return levels[static_cast<int>(k)]; }
};

MackeyHomology homology_data(const MackeyChainComplex& c, int n);
MackeyC4 homology_of_complex(const MackeyChainComplex& c, int n);

}  // namespace c4hz
