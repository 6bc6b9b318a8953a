#pragma once

#include <array>
#include <map>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "c4hz/chains.hpp"

namespace c4hz {

struct EngineConfig {
  /// Largest underlying lattice rank allowed in any chain degree that is read.
  std::size_t budget = 100000;
};

class ResourceError : public std::runtime_error {
 public:
  ResourceError(const Degree& d, std::size_t rank, std::size_t budget);
  Degree degree;
};

/// pi_d of HZ as a Mackey functor, read off H_0 of the chains of S^{-d}.
struct HomotopyResult {
  Degree degree;
  MackeyC4 mackey;
  MackeyHomology data;
  MackeyChainComplex chains;  // chains of S^{-d}, truncated to degrees -1..1
  nlohmann::json witnesses() const;
  nlohmann::json to_json() const;
};

using LevelMaps = std::array<IntMatrix, 3>;  // indexed by Subgroup

struct Tower {
  Degree base;
  EulerGen direction = EulerGen::alpha;
  int length = 0;
  std::vector<FinAbGroup> groups;  // top level of pi_{base + k*direction}, k = 0..length
  std::vector<IntMatrix> maps;     // maps[k] : groups[k+1] -> groups[k], multiplication by the Euler class
};

/// A tower after inverting a_lambda, read off at base - shift*lambda.
struct LocalizedTower {
  Tower tower;
  int shift = 0;
  /// Whether a_lambda is an isomorphism out of every group of the tower, so the groups are the colimits.
  bool stable = false;
};

struct KerImReport {
  Degree degree;
  bool kernel_is_transfer_image = true;
  bool image_is_restriction_kernel = true;
  bool passed() const { return kernel_is_transfer_image && image_is_restriction_kernel; }
  std::string str() const;
};

class Engine {
 public:
  explicit Engine(EngineConfig cfg = {}) : cfg_(cfg) {}

  std::shared_ptr<const HomotopyResult> homotopy(const Degree& d) const;
  /// Multiplication by the Euler class, pi_d -> pi_{d - gen}, at each level.
  LevelMaps euler_action(const Degree& d, EulerGen gen) const;
  /// The same map computed through the generic x -> x (x) pt chain map into C box S^gen.
  LevelMaps euler_action_generic(const Degree& d, EulerGen gen) const;
  Tower tower(const Degree& d, EulerGen direction, int length) const;
  LocalizedTower tower_localized(const Degree& d, EulerGen direction, int length, int shift) const;
  KerImReport verify_ker_im(const Degree& d) const;

  const EngineConfig& config() const { return cfg_; }
  std::size_t cache_size() const;

 private:
  EngineConfig cfg_;
  mutable std::shared_mutex mu_;
  mutable std::map<Degree, std::shared_ptr<const HomotopyResult>> cache_;
};

}  // namespace c4hz
