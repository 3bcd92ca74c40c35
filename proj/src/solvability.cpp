#include "selfsim/solvability.hpp"

#include <algorithm>
#include <set>

namespace selfsim::solvability {

namespace {

std::vector<EndPairConfig> all_configs(const EquationalSystem& S, EndPairConfig::Kind kind) {
  const FinCategory& cat = *S.category;
  std::vector<EndPairConfig> out;
  for (int f = 0; f < cat.num_arrows(); ++f)
    for (int g = 0; g < cat.num_arrows(); ++g) {
      if (cat.tgt(f) != cat.tgt(g)) continue;
      if (kind == EndPairConfig::Kind::Parallel && cat.src(f) != cat.src(g)) continue;
      out.push_back({kind, f, g});
    }
  return out;
}

// Can `config` extend one rung to some config in `pool`?
bool step(const EquationalSystem& S, const EndPairConfig& config,
          const std::set<std::pair<int, int>>& pool) {
  const FinCategory& cat = *S.category;
  const Module& M = S.module;
  int a0 = cat.src(config.f0);
  int a0p = cat.src(config.f0_prime);
  int b0 = cat.tgt(config.f0);
  for (int p1 : M.sectors_into(b0)) {
    int b1 = M.src(p1);
    if (config.kind == EndPairConfig::Kind::Parallel) {
      // One top complex, two arrow families: shared m1.
      for (int m1 : M.sectors_into(a0)) {
        int lhs = M.left(config.f0, m1);
        int lhs_p = M.left(config.f0_prime, m1);
        for (int f1 : cat.arrows_from(M.src(m1))) {
          if (cat.tgt(f1) != b1 || M.right(p1, f1) != lhs) continue;
          for (int f1p : cat.arrows_from(M.src(m1))) {
            if (cat.tgt(f1p) != b1 || M.right(p1, f1p) != lhs_p) continue;
            if (pool.count({f1, f1p})) return true;
          }
        }
      }
    } else {
      // Two top complexes with their own sectors m1, m1'.
      for (int m1 : M.sectors_into(a0)) {
        int lhs = M.left(config.f0, m1);
        bool f1_found = false;
        std::vector<int> f1s;
        for (int f1 : cat.arrows_from(M.src(m1)))
          if (cat.tgt(f1) == b1 && M.right(p1, f1) == lhs) f1s.push_back(f1);
        if (f1s.empty()) continue;
        for (int m1p : M.sectors_into(a0p)) {
          int lhs_p = M.left(config.f0_prime, m1p);
          for (int f1p : cat.arrows_from(M.src(m1p))) {
            if (cat.tgt(f1p) != b1 || M.right(p1, f1p) != lhs_p) continue;
            for (int f1 : f1s)
              if (pool.count({f1, f1p})) return true;
          }
        }
        (void)f1_found;
      }
    }
  }
  return false;
}

}  // namespace

std::vector<EndPairConfig> survivors(const EquationalSystem& S, EndPairConfig::Kind kind) {
  std::vector<EndPairConfig> configs = all_configs(S, kind);
  std::set<std::pair<int, int>> pool;
  for (const auto& c : configs) pool.insert({c.f0, c.f0_prime});
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : configs) {
      if (!pool.count({c.f0, c.f0_prime})) continue;
      if (!step(S, c, pool)) {
        pool.erase({c.f0, c.f0_prime});
        changed = true;
      }
    }
  }
  std::vector<EndPairConfig> out;
  for (const auto& c : configs)
    if (pool.count({c.f0, c.f0_prime})) out.push_back(c);
  return out;
}

bool extends_within(const EquationalSystem& S, const EndPairConfig& config,
                    const std::vector<EndPairConfig>& pool) {
  std::set<std::pair<int, int>> pool_set;
  for (const auto& c : pool) pool_set.insert({c.f0, c.f0_prime});
  return step(S, config, pool_set);
}

bool cospan_completes(const FinCategory& cat, int f0, int f0_prime) {
  for (int c = 0; c < cat.num_objects(); ++c)
    for (int g : cat.arrows_from(c)) {
      if (cat.tgt(g) != cat.src(f0)) continue;
      for (int gp : cat.arrows_from(c)) {
        if (cat.tgt(gp) != cat.src(f0_prime)) continue;
        if (cat.compose(f0, g) == cat.compose(f0_prime, gp)) return true;
      }
    }
  return false;
}

bool parallel_forks(const FinCategory& cat, int f0, int f0_prime) {
  for (int c = 0; c < cat.num_objects(); ++c)
    for (int e : cat.arrows_from(c)) {
      if (cat.tgt(e) != cat.src(f0)) continue;
      if (cat.compose(f0, e) == cat.compose(f0_prime, e)) return true;
    }
  return false;
}

SolvabilityVerdict check_S(const EquationalSystem& S) {
  if (S.metadata.truncated) return {SolvabilityVerdict::Tag::Unknown, std::nullopt, 0};
  const FinCategory& cat = *S.category;
  // Deterministic witness order: lexicographic in the arrow id pair.
  auto order = [&](const EndPairConfig& x, const EndPairConfig& y) {
    const Id& xf = cat.arrow(x.f0).id;
    const Id& yf = cat.arrow(y.f0).id;
    if (xf != yf) return xf < yf;
    return cat.arrow(x.f0_prime).id < cat.arrow(y.f0_prime).id;
  };
  std::vector<EndPairConfig> cospans = survivors(S, EndPairConfig::Kind::Cospan);
  std::sort(cospans.begin(), cospans.end(), order);
  for (const auto& c : cospans)
    if (!cospan_completes(cat, c.f0, c.f0_prime))
      return {SolvabilityVerdict::Tag::Fails, c, 0};
  std::vector<EndPairConfig> parallels = survivors(S, EndPairConfig::Kind::Parallel);
  std::sort(parallels.begin(), parallels.end(), order);
  for (const auto& c : parallels)
    if (!parallel_forks(cat, c.f0, c.f0_prime))
      return {SolvabilityVerdict::Tag::Fails, c, 0};
  return {SolvabilityVerdict::Tag::Holds, std::nullopt, 0};
}

}  // namespace selfsim::solvability
