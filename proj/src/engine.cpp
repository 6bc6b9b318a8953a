#include "c4hz/engine.hpp"

#include <mutex>

namespace c4hz {

ResourceError::ResourceError(const Degree& d, std::size_t rank, std::size_t budget)
    : std::runtime_error("degree " + d.str() + ": lattice rank " + std::to_string(rank) + " exceeds budget " +
                         std::to_string(budget)),
      degree(d) {}

nlohmann::json HomotopyResult::witnesses() const {
  nlohmann::json w;
  for (auto k : kSubgroups) w[name(k)] = matrix_to_json(data.at(k).generators.transpose());
  return w;
}

nlohmann::json HomotopyResult::to_json() const {
  auto j = c4hz::to_json(mackey);
  j["degree"] = {degree.a, degree.b, degree.c};
  j["witnesses"] = witnesses();
  return j;
}

std::string KerImReport::str() const {
  std::string s = degree.str() + ":";
  s += kernel_is_transfer_image ? " ker(a_alpha)=im(tr)" : " ker(a_alpha)!=im(tr)";
  s += image_is_restriction_kernel ? " im(a_alpha)=ker(res)" : " im(a_alpha)!=ker(res)";
  return s;
}

std::shared_ptr<const HomotopyResult> Engine::homotopy(const Degree& d) const {
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
  }
  SphereComplex s = assemble(-d);
  for (int n = -1; n <= 1; ++n)
    if (s.chains.rank(n) > cfg_.budget) throw ResourceError(d, s.chains.rank(n), cfg_.budget);
  auto r = std::make_shared<HomotopyResult>();
  r->degree = d;
  r->chains = s.chains.truncate(-1, 1);
  r->data = homology_data(r->chains, 0);
  r->mackey = r->data.mackey;
  std::unique_lock lock(mu_);
  cache_[d] = r;
  return r;
}

std::size_t Engine::cache_size() const {
  std::shared_lock lock(mu_);
  return cache_.size();
}

LevelMaps Engine::euler_action(const Degree& d, EulerGen gen) const {
  auto src = homotopy(d);
  auto tgt = homotopy(d - degree_of(gen));
  ChainMap f = euler_inclusion(-d, gen);
  LevelMaps out;
  for (auto k : kSubgroups)
    out[static_cast<int>(k)] =
        induced_level_map(f, src->chains, tgt->chains, 0, k, src->data.at(k), tgt->data.at(k));
  return out;
}

LevelMaps Engine::euler_action_generic(const Degree& d, EulerGen gen) const {
  SphereComplex c = assemble(-d);
  SphereComplex s = gen == EulerGen::alpha ? sphere_alpha() : sphere_lambda();
  SphereComplex t = box(c, s);
  ChainMap f = euler_chain_map(c, gen);
  auto hs = homology_data(c.chains, 0);
  auto ht = homology_data(t.chains, 0);
  LevelMaps out;
  for (auto k : kSubgroups)
    out[static_cast<int>(k)] = induced_level_map(f, c.chains, t.chains, 0, k, hs.at(k), ht.at(k));
  return out;
}

Tower Engine::tower(const Degree& d, EulerGen direction, int length) const {
  if (length < 1) throw std::invalid_argument("tower length must be at least 1");
  Tower t;
  t.base = d;
  t.direction = direction;
  t.length = length;
  const Degree step = degree_of(direction);
  for (int k = 0; k <= length; ++k) t.groups.push_back(homotopy(d + step * k)->mackey.top);
  for (int k = 0; k < length; ++k)
    t.maps.push_back(euler_action(d + step * (k + 1), direction)[static_cast<int>(Subgroup::C4)]);
  return t;
}

LocalizedTower Engine::tower_localized(const Degree& d, EulerGen direction, int length, int shift) const {
  if (shift < 0) throw std::invalid_argument("localization shift must be nonnegative");
  LocalizedTower out;
  out.shift = shift;
  const Degree base = d - kLambda * shift;
  out.tower = tower(base, direction, length);
  out.stable = true;
  const auto top = static_cast<int>(Subgroup::C4);
  for (int k = 0; k <= length; ++k) {
    const Degree x = base + degree_of(direction) * k;
    IntMatrix f = euler_action(x, EulerGen::lambda)[top];
    auto inv = hom_invariants(f, homotopy(x)->mackey.orders(Subgroup::C4),
                              homotopy(x - kLambda)->mackey.orders(Subgroup::C4));
    if (!inv.kernel.is_zero() || !inv.cokernel.is_zero()) out.stable = false;
  }
  return out;
}

KerImReport Engine::verify_ker_im(const Degree& d) const {
  KerImReport rep;
  rep.degree = d;
  const auto top = static_cast<int>(Subgroup::C4);
  auto here = homotopy(d);
  const auto T = here->mackey.orders(Subgroup::C4);
  if (T.empty()) return rep;
  const auto M = here->mackey.orders(Subgroup::C2);
  auto below = homotopy(d - kAlpha);
  IntMatrix a_out = euler_action(d, EulerGen::alpha)[top];
  IntMatrix a_in = euler_action(d + kAlpha, EulerGen::alpha)[top];
  IntMatrix ker_a = hom_kernel(a_out, T, below->mackey.orders(Subgroup::C4));
  rep.kernel_is_transfer_image = same_subgroup(ker_a, here->mackey.tr42, T);
  IntMatrix ker_res = hom_kernel(here->mackey.res42, T, M);
  rep.image_is_restriction_kernel = same_subgroup(a_in, ker_res, T);
  return rep;
}

}  // namespace c4hz
