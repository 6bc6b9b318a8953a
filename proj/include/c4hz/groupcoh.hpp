#pragma once

#include <string>
#include <vector>

#include "c4hz/chains.hpp"

namespace c4hz {

/// Rank-one coefficient modules: Z, the sign twist of Z, and Z/2, all with trivial action but the twist.
enum class CoeffModule { Z, Ztilde, Z2 };

const char* name(CoeffModule m);
CoeffModule parse_coeff(const std::string& s);
/// The generator acts by this scalar.
int action(CoeffModule m);
/// 0 for a torsion-free module.
int torsion(CoeffModule m);
CoeffModule tensor(CoeffModule a, CoeffModule b);

/// The periodic free resolution of Z over Z[C_n], n a power of two: F_k = Z[C_n] with d alternating 1 - g and N.
struct PeriodicResolution {
  int order = 4;

  explicit PeriodicResolution(int n);
  /// d_k : F_k -> F_{k-1} in the basis g^0, ..., g^{n-1} (k >= 1).
  IntMatrix differential(int k) const;
  IntMatrix generator() const;
  IntMatrix norm() const;
  /// The ring element d_k(1) acting on a rank-one module.
  Integer acting_scalar(int k, CoeffModule m) const;
  /// Delta_{pq}(1) evaluated on generators of M1 (x) M2.
  Integer diagonal_scalar(int p, int q, CoeffModule m1, CoeffModule m2) const;
};

/// H^q(C_n; M) together with a generator of the cyclic group, as a cochain value.
struct CyclicCohomology {
  FinAbGroup group;
  Integer order = 0;  // 0 = Z; meaningless when the group is zero
  /// Coordinate of the class of a cocycle value.
  Integer coordinate(const Integer& cocycle) const;
};

CyclicCohomology cohomology_class(int order, CoeffModule m, int q);
FinAbGroup cohomology(int order, CoeffModule m, int q);

/// Cup product H^p(M1) x H^q(M2) -> H^{p+q}(M1 (x) M2) on generators (an empty matrix if a side is zero).
IntMatrix cup(int order, int p, int q, CoeffModule m1, CoeffModule m2);

/// The E_2 column H^s(C_4; pi_d^e H) for s = 0..smax.
struct E2Column {
  Degree degree;
  std::vector<FinAbGroup> groups;
  bool collapses = true;
};

E2Column hfpss_e2(const Degree& d, int smax = 8);
/// pi_d of the homotopy fixed points, read off the collapsing E_2 page.
FinAbGroup homotopy_fixed_points(const Degree& d);

}  // namespace c4hz
