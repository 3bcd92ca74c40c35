#include "selfsim/complexes.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace selfsim::complexes {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

int TruncatedComplex::object_at(const Module& M, int i) const {
  if (i == 0) return base_object;
  return M.src(sectors[static_cast<size_t>(i - 1)]);
}

bool TruncatedComplex::valid(const Module& M) const {
  for (int i = 1; i <= depth(); ++i)
    if (M.tgt(sectors[static_cast<size_t>(i - 1)]) != object_at(M, i - 1)) return false;
  return true;
}

Id TruncatedComplex::name(const Module& M) const {
  Id out = M.base().objects()[static_cast<size_t>(base_object)];
  for (int m : sectors) out += ";" + M.sector(m).id;
  return out;
}

void validate_lasso(const Module& M, const LassoComplex& L) {
  if (L.cycle.empty()) throw InputError("lasso cycle must be nonempty");
  int at = M.base().object_index(L.base_object);
  for (const Id& m : L.prefix) {
    int mi = M.sector_index(m);
    if (M.tgt(mi) != at) throw InputError("lasso prefix breaks adjacency at sector " + m);
    at = M.src(mi);
  }
  int head = at;
  for (const Id& m : L.cycle) {
    int mi = M.sector_index(m);
    if (M.tgt(mi) != at) throw InputError("lasso cycle breaks adjacency at sector " + m);
    at = M.src(mi);
  }
  if (at != head) throw InputError("lasso cycle endpoints do not coincide");
}

int lasso_sector_at(const Module& M, const LassoComplex& L, int i) {
  int p = static_cast<int>(L.prefix.size());
  if (i <= 0) throw InputError("lasso sector positions start at 1");
  if (i <= p) return M.sector_index(L.prefix[static_cast<size_t>(i - 1)]);
  int c = static_cast<int>(L.cycle.size());
  return M.sector_index(L.cycle[static_cast<size_t>((i - p - 1) % c)]);
}

TruncatedComplex unroll(const Module& M, const LassoComplex& L, int n) {
  TruncatedComplex tc;
  tc.base_object = M.base().object_index(L.base_object);
  for (int i = 1; i <= n; ++i) tc.sectors.push_back(lasso_sector_at(M, L, i));
  return tc;
}

// ---------------------------------------------------------------------------

bool verify_ladder(const Module& M, const TruncatedComplex& from, const TruncatedComplex& to,
                   const LadderMorphism& ladder) {
  const FinCategory& cat = M.base();
  if (from.depth() != to.depth()) return false;
  if (static_cast<int>(ladder.arrows.size()) != from.depth() + 1) return false;
  int f0 = ladder.arrows[0];
  if (!cat.is_identity(f0) || cat.src(f0) != from.base_object || to.base_object != from.base_object)
    return false;
  for (int i = 1; i <= from.depth(); ++i) {
    int f_prev = ladder.arrows[static_cast<size_t>(i - 1)];
    int f = ladder.arrows[static_cast<size_t>(i)];
    if (cat.src(f) != from.object_at(M, i) || cat.tgt(f) != to.object_at(M, i)) return false;
    int lhs = M.left(f_prev, from.sectors[static_cast<size_t>(i - 1)]);
    int rhs = M.right(to.sectors[static_cast<size_t>(i - 1)], f);
    if (lhs < 0 || rhs < 0 || lhs != rhs) return false;
  }
  return true;
}

namespace {

// Arrow candidates f_i given the previous rung.
std::vector<int> ladder_step_candidates(const Module& M, const TruncatedComplex& from,
                                        const TruncatedComplex& to, int i, int f_prev) {
  const FinCategory& cat = M.base();
  std::vector<int> out;
  int lhs = M.left(f_prev, from.sectors[static_cast<size_t>(i - 1)]);
  if (lhs < 0) return out;
  int src_obj = from.object_at(M, i);
  int tgt_obj = to.object_at(M, i);
  for (int f : cat.arrows_from(src_obj)) {
    if (cat.tgt(f) != tgt_obj) continue;
    if (M.right(to.sectors[static_cast<size_t>(i - 1)], f) == lhs) out.push_back(f);
  }
  return out;
}

bool ladder_exists_rec(const Module& M, const TruncatedComplex& from, const TruncatedComplex& to,
                       int i, int f_prev, std::set<std::pair<int, int>>& dead) {
  if (i > from.depth()) return true;
  if (dead.count({i, f_prev})) return false;
  for (int f : ladder_step_candidates(M, from, to, i, f_prev))
    if (ladder_exists_rec(M, from, to, i + 1, f, dead)) return true;
  dead.insert({i, f_prev});
  return false;
}

}  // namespace

bool ladder_exists(const Module& M, const TruncatedComplex& from, const TruncatedComplex& to) {
  if (from.depth() != to.depth() || from.base_object != to.base_object) return false;
  std::set<std::pair<int, int>> dead;
  return ladder_exists_rec(M, from, to, 1, M.base().identity_of(from.base_object), dead);
}

std::vector<LadderMorphism> enumerate_ladders(const Module& M, const TruncatedComplex& from,
                                              const TruncatedComplex& to, long long budget) {
  std::vector<LadderMorphism> out;
  if (from.depth() != to.depth() || from.base_object != to.base_object) return out;
  std::vector<int> stack = {M.base().identity_of(from.base_object)};
  long long steps = 0;
  const FinCategory& cat = M.base();
  std::function<void()> dfs = [&]() {
    if (++steps > budget) throw ResourceError("ladder enumeration budget exceeded");
    int i = static_cast<int>(stack.size());  // next level to fill is i
    if (i > from.depth()) {
      LadderMorphism l;
      l.arrows = stack;
      out.push_back(std::move(l));
      return;
    }
    std::vector<int> cands = ladder_step_candidates(M, from, to, i, stack.back());
    std::sort(cands.begin(), cands.end(),
              [&](int x, int y) { return cat.arrow(x).id < cat.arrow(y).id; });
    for (int f : cands) {
      stack.push_back(f);
      dfs();
      stack.pop_back();
    }
  };
  dfs();
  return out;
}

// ---------------------------------------------------------------------------

std::vector<TruncatedComplex> enumerate_complexes(const EquationalSystem& S, const Id& a, int n,
                                                  long long budget) {
  const Module& M = S.module;
  std::vector<TruncatedComplex> out;
  TruncatedComplex current;
  current.base_object = M.base().object_index(a);
  std::function<void(int)> dfs = [&](int depth) {
    if (depth == n) {
      out.push_back(current);
      if (static_cast<long long>(out.size()) > budget)
        throw ResourceError("complex enumeration budget exceeded");
      return;
    }
    int head = current.object_at(M, depth);
    std::vector<int> sectors = M.sectors_into(head);
    std::sort(sectors.begin(), sectors.end(),
              [&](int x, int y) { return M.sector(x).id < M.sector(y).id; });
    for (int m : sectors) {
      current.sectors.push_back(m);
      dfs(depth + 1);
      current.sectors.pop_back();
    }
  };
  dfs(0);
  return out;
}

TruncatedComplexCategory truncated_complex_category(const EquationalSystem& S, const Id& a,
                                                    int n, long long budget) {
  const Module& M = S.module;
  TruncatedComplexCategory out;
  out.chains = enumerate_complexes(S, a, n, budget);
  std::sort(out.chains.begin(), out.chains.end(),
            [&](const TruncatedComplex& x, const TruncatedComplex& y) {
              return x.name(M) < y.name(M);
            });
  std::vector<Id> objects;
  for (int i = 0; i < static_cast<int>(out.chains.size()); ++i) {
    objects.push_back(out.chains[static_cast<size_t>(i)].name(M));
    out.chain_of_object[objects.back()] = i;
  }
  std::vector<Arrow> arrows;
  std::map<Id, Id> identity;
  // Ladder data per arrow id, for composition.
  std::map<Id, std::pair<std::pair<int, int>, std::vector<int>>> ladder_of;
  std::map<std::string, Id> id_of_ladder;
  long long arrow_budget = budget;
  auto ladder_key = [](int s, int t, const std::vector<int>& arrows_vec) {
    std::string k = std::to_string(s) + ">" + std::to_string(t);
    for (int f : arrows_vec) k += "," + std::to_string(f);
    return k;
  };
  int seq = 0;
  for (int s = 0; s < static_cast<int>(out.chains.size()); ++s)
    for (int t = 0; t < static_cast<int>(out.chains.size()); ++t) {
      std::vector<LadderMorphism> ladders =
          enumerate_ladders(M, out.chains[static_cast<size_t>(s)],
                            out.chains[static_cast<size_t>(t)], budget);
      for (const LadderMorphism& l : ladders) {
        bool is_id = (s == t);
        if (is_id)
          for (int f : l.arrows)
            if (!M.base().is_identity(f)) is_id = false;
        Id aid = is_id ? identity_id(objects[static_cast<size_t>(s)])
                       : "L" + std::to_string(seq++);
        arrows.push_back({aid, objects[static_cast<size_t>(s)], objects[static_cast<size_t>(t)]});
        if (static_cast<long long>(arrows.size()) > arrow_budget)
          throw ResourceError("ladder-category arrow budget exceeded");
        if (is_id) identity[objects[static_cast<size_t>(s)]] = aid;
        ladder_of[aid] = {{s, t}, l.arrows};
        id_of_ladder[ladder_key(s, t, l.arrows)] = aid;
      }
    }
  std::vector<std::tuple<Id, Id, Id>> compose;
  const FinCategory& base = M.base();
  for (const auto& [gid, gdata] : ladder_of)
    for (const auto& [fid, fdata] : ladder_of) {
      if (fdata.first.second != gdata.first.first) continue;
      std::vector<int> comb(gdata.second.size());
      bool ok = true;
      for (size_t i = 0; i < comb.size(); ++i) {
        int c = base.compose(gdata.second[i], fdata.second[i]);
        if (c < 0) {
          ok = false;
          break;
        }
        comb[i] = c;
      }
      if (!ok) throw InputError("base category has a missing composite");
      compose.emplace_back(gid, fid,
                           id_of_ladder.at(ladder_key(fdata.first.first, gdata.first.second, comb)));
    }
  out.cat = FinCategory::make_raw(std::move(objects), std::move(arrows), identity, compose);
  return out;
}

// ---------------------------------------------------------------------------

ComponentsTower truncated_components(const EquationalSystem& S, const Id& a, int n,
                                     long long budget) {
  const Module& M = S.module;
  ComponentsTower tower;
  for (int r = 0; r <= n; ++r) {
    std::vector<TruncatedComplex> chains = enumerate_complexes(S, a, r, budget);
    std::sort(chains.begin(), chains.end(),
              [&](const TruncatedComplex& x, const TruncatedComplex& y) {
                return x.name(M) < y.name(M);
              });
    int count = static_cast<int>(chains.size());
    UnionFind uf(count);
    for (int i = 0; i < count; ++i)
      for (int j = i + 1; j < count; ++j) {
        if (uf.find(i) == uf.find(j)) continue;
        if (ladder_exists(M, chains[static_cast<size_t>(i)], chains[static_cast<size_t>(j)]) ||
            ladder_exists(M, chains[static_cast<size_t>(j)], chains[static_cast<size_t>(i)]))
          uf.unite(i, j);
      }
    std::map<int, std::vector<Id>> groups;
    for (int i = 0; i < count; ++i)
      groups[uf.find(i)].push_back(chains[static_cast<size_t>(i)].name(M));
    ComponentPartition part;
    for (auto& [root, ids] : groups) {
      std::sort(ids.begin(), ids.end());
      part.blocks.push_back(std::move(ids));
    }
    std::sort(part.blocks.begin(), part.blocks.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    for (int b = 0; b < part.num_blocks(); ++b)
      for (const Id& o : part.blocks[static_cast<size_t>(b)]) part.block_of[o] = b;
    tower.chains.push_back(std::move(chains));
    tower.levels.push_back(std::move(part));
  }
  return tower;
}

int ComponentsTower::project_block(const EquationalSystem& S, const TruncatedComplex& chain,
                                   int r) const {
  TruncatedComplex truncated;
  truncated.base_object = chain.base_object;
  truncated.sectors.assign(chain.sectors.begin(), chain.sectors.begin() + r);
  return levels[static_cast<size_t>(r)].block_of.at(truncated.name(S.module));
}

// ---------------------------------------------------------------------------
// Lazy span-roof BFS.

namespace {

// All chains y adjacent to x by a roof: exists apex complex with ladders to
// both x and y. Steps are counted against *budget; emits into `out`.
void roof_neighbors(const Module& M, const TruncatedComplex& x,
                    std::vector<TruncatedComplex>& out, long long* budget, bool* clean) {
  const FinCategory& cat = M.base();
  int n = x.depth();
  TruncatedComplex y;
  y.base_object = x.base_object;
  std::set<std::string> seen;
  // State: level i filled so far, g = apex->x arrow at i-1, f = apex->y arrow
  // at i-1 (same domain).
  std::function<void(int, int, int)> dfs = [&](int i, int g_prev, int f_prev) {
    if (--(*budget) < 0) {
      *clean = false;
      return;
    }
    if (i > n) {
      std::string key;
      for (int m : y.sectors) key += ";" + std::to_string(m);
      if (seen.insert(key).second) out.push_back(y);
      return;
    }
    int dom = cat.src(g_prev);
    for (int p : M.sectors_into(dom)) {
      int lhs_x = M.left(g_prev, p);
      int lhs_y = M.left(f_prev, p);
      if (lhs_x < 0 || lhs_y < 0) continue;
      int apex_obj = M.src(p);
      // g candidates: apex_obj -> x_i with x.m_i * g = lhs_x.
      bool any_g = false;
      for (int g : cat.arrows_from(apex_obj)) {
        if (cat.tgt(g) != x.object_at(M, i)) continue;
        if (M.right(x.sectors[static_cast<size_t>(i - 1)], g) != lhs_x) continue;
        any_g = true;
        break;
      }
      if (!any_g) continue;
      // y continuation: any sector m into y_{i-1} and f: apex_obj -> src(m).
      int y_head = (i == 1) ? y.base_object : M.src(y.sectors[static_cast<size_t>(i - 2)]);
      for (int m : M.sectors_into(y_head)) {
        for (int f : cat.arrows_from(apex_obj)) {
          if (cat.tgt(f) != M.src(m)) continue;
          if (M.right(m, f) != lhs_y) continue;
          y.sectors.push_back(m);
          // Retain the g that worked; any g works independently of the rest,
          // so recurse per (g, f) pair.
          for (int g : cat.arrows_from(apex_obj)) {
            if (cat.tgt(g) != x.object_at(M, i)) continue;
            if (M.right(x.sectors[static_cast<size_t>(i - 1)], g) != lhs_x) continue;
            dfs(i + 1, g, f);
          }
          y.sectors.pop_back();
          if (*budget < 0) return;
        }
      }
    }
  };
  dfs(1, cat.identity_of(x.base_object), cat.identity_of(x.base_object));
}

}  // namespace

BlockQuery same_block_query(const EquationalSystem& S, const TruncatedComplex& x,
                            const TruncatedComplex& y, int distance_bound,
                            long long node_budget) {
  const Module& M = S.module;
  Id target = y.name(M);
  if (x.name(M) == target) return {true, true, 0};
  std::set<Id> visited = {x.name(M)};
  std::vector<TruncatedComplex> frontier = {x};
  long long budget = node_budget;
  bool clean = true;
  int radius = 0;
  while (!frontier.empty()) {
    if (radius >= distance_bound) return {false, false, radius};
    ++radius;
    std::vector<TruncatedComplex> next;
    for (const TruncatedComplex& node : frontier) {
      std::vector<TruncatedComplex> neighbors;
      roof_neighbors(M, node, neighbors, &budget, &clean);
      if (!clean) return {false, false, radius};
      for (const TruncatedComplex& nb : neighbors) {
        Id name = nb.name(M);
        if (name == target) return {true, true, radius};
        if (visited.insert(name).second) next.push_back(nb);
      }
    }
    frontier = std::move(next);
  }
  return {clean, false, radius};
}

DistanceProfile distance_profile(const EquationalSystem& S, const Id& a, const LassoComplex& L,
                                 const LassoComplex& L2, int N, int bound,
                                 long long node_budget) {
  const Module& M = S.module;
  validate_lasso(M, L);
  validate_lasso(M, L2);
  DistanceProfile profile;
  profile.bound = bound;
  for (int r = 1; r <= N; ++r) {
    BlockQuery q = same_block_query(S, unroll(M, L, r), unroll(M, L2, r), bound, node_budget);
    if (q.same_block) {
      profile.d.push_back(q.distance);
      profile.exact.push_back(true);
    } else if (q.certain) {
      profile.d.push_back(kInfiniteDistance);
      profile.exact.push_back(true);
    } else {
      profile.d.push_back(bound + 1);
      profile.exact.push_back(false);
    }
  }
  return profile;
}

// ---------------------------------------------------------------------------
// Equality decision.

int PeriodicLadder::arrow_at(const FinCategory& cat, int i) const {
  int r = static_cast<int>(prefix_arrows.size()) - 1;  // prefix holds f_0..f_R
  if (i <= r) return cat.arrow_index(prefix_arrows[static_cast<size_t>(i)]);
  int c = static_cast<int>(cycle_arrows.size());
  return cat.arrow_index(cycle_arrows[static_cast<size_t>((i - r - 1) % c)]);
}

bool verify_span_certificate(const EquationalSystem& S, const Id& a, const LassoComplex& L,
                             const LassoComplex& L2, const SpanCertificate& cert, int n) {
  const Module& M = S.module;
  try {
    validate_lasso(M, cert.apex);
  } catch (const InputError&) {
    return false;
  }
  if (cert.apex.base_object != a) return false;
  TruncatedComplex apex = unroll(M, cert.apex, n);
  TruncatedComplex left = unroll(M, L, n);
  TruncatedComplex right = unroll(M, L2, n);
  const FinCategory& cat = M.base();
  LadderMorphism lm, rm;
  for (int i = 0; i <= n; ++i) {
    lm.arrows.push_back(cert.left.arrow_at(cat, i));
    rm.arrows.push_back(cert.right.arrow_at(cat, i));
  }
  return verify_ladder(M, apex, left, lm) && verify_ladder(M, apex, right, rm);
}

namespace {

struct SpanSearch {
  const Module& M;
  const FinCategory& cat;
  const LassoComplex& L1;
  const LassoComplex& L2;
  int a_obj;
  int prefix_len;  // P*: beyond this, sector pairs are periodic
  int period;      // lcm of cycle lengths

  int sector1(int i) const { return lasso_sector_at(M, L1, i); }
  int sector2(int i) const { return lasso_sector_at(M, L2, i); }

  struct State {
    int g, f;  // arrows apex->L1-chain, apex->L2-chain, same src
    bool operator<(const State& o) const { return std::tie(g, f) < std::tie(o.g, o.f); }
    bool operator==(const State& o) const { return g == o.g && f == o.f; }
  };

  // Transition into level i: choose apex sector p and next arrows.
  std::vector<std::tuple<int, State>> step(int i, const State& s) const {
    std::vector<std::tuple<int, State>> out;
    int m1 = sector1(i);
    int m2 = sector2(i);
    int dom = cat.src(s.g);
    for (int p : M.sectors_into(dom)) {
      int lhs1 = M.left(s.g, p);
      int lhs2 = M.left(s.f, p);
      if (lhs1 < 0 || lhs2 < 0) continue;
      int apex_obj = M.src(p);
      for (int g2 : cat.arrows_from(apex_obj)) {
        if (cat.tgt(g2) != M.src(m1)) continue;
        if (M.right(m1, g2) != lhs1) continue;
        for (int f2 : cat.arrows_from(apex_obj)) {
          if (cat.tgt(f2) != M.src(m2)) continue;
          if (M.right(m2, f2) != lhs2) continue;
          out.push_back({p, State{g2, f2}});
        }
      }
    }
    return out;
  }
};

}  // namespace

EqualityVerdict decide_equal(const EquationalSystem& S, const Id& a, const LassoComplex& L,
                             const LassoComplex& L2, int depth_budget, int distance_bound,
                             long long node_budget) {
  const Module& M = S.module;
  const FinCategory& cat = M.base();
  validate_lasso(M, L);
  validate_lasso(M, L2);
  int a_obj = cat.object_index(a);
  if (cat.object_index(L.base_object) != a_obj || cat.object_index(L2.base_object) != a_obj)
    throw PreconditionError("lassos must end at the queried object");

  int p1 = static_cast<int>(L.prefix.size());
  int p2 = static_cast<int>(L2.prefix.size());
  int c1 = static_cast<int>(L.cycle.size());
  int c2 = static_cast<int>(L2.cycle.size());
  int prefix_len = std::max(p1, p2);
  int period = static_cast<int>(std::lcm(c1, c2));
  SpanSearch search{M, cat, L, L2, a_obj, prefix_len, period};

  using State = SpanSearch::State;
  State start{cat.identity_of(a_obj), cat.identity_of(a_obj)};

  // Forward pass through the prefix levels, keeping one parent per state.
  std::vector<std::map<State, std::tuple<State, int>>> parent(
      static_cast<size_t>(prefix_len + 1));
  std::vector<std::set<State>> level_states(static_cast<size_t>(prefix_len + 1));
  level_states[0] = {start};
  for (int i = 1; i <= prefix_len; ++i)
    for (const State& s : level_states[static_cast<size_t>(i - 1)])
      for (const auto& [p, s2] : search.step(i, s))
        if (level_states[static_cast<size_t>(i)].insert(s2).second)
          parent[static_cast<size_t>(i)][s2] = {s, p};

  // Periodic part: nodes (state, phase); a node survives iff it has an edge
  // to a surviving node (greatest fixpoint), i.e. admits an infinite path.
  struct PNode {
    State s;
    int phase;
    bool operator<(const PNode& o) const {
      return std::tie(s, phase) < std::tie(o.s, o.phase);
    }
  };
  // Collect reachable nodes.
  std::set<PNode> reachable;
  std::deque<PNode> queue;
  std::map<PNode, std::vector<std::tuple<int, PNode>>> edges;
  for (const State& s : level_states[static_cast<size_t>(prefix_len)]) {
    PNode node{s, 0};
    if (reachable.insert(node).second) queue.push_back(node);
  }
  while (!queue.empty()) {
    PNode node = queue.front();
    queue.pop_front();
    int level = prefix_len + 1 + node.phase;  // representative level for sectors
    for (const auto& [p, s2] : search.step(level, node.s)) {
      PNode next{s2, (node.phase + 1) % period};
      edges[node].push_back({p, next});
      if (reachable.insert(next).second) queue.push_back(next);
    }
  }
  // Prune to surviving nodes.
  std::set<PNode> alive = reachable;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = alive.begin(); it != alive.end();) {
      bool has_out = false;
      auto eit = edges.find(*it);
      if (eit != edges.end())
        for (const auto& [p, next] : eit->second)
          if (alive.count(next)) {
            has_out = true;
            break;
          }
      if (!has_out) {
        it = alive.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  // An apex lasso exists iff some state at the prefix boundary is alive at
  // phase 0.
  std::optional<State> entry;
  for (const State& s : level_states[static_cast<size_t>(prefix_len)])
    if (alive.count(PNode{s, 0})) {
      entry = s;
      break;
    }
  if (entry) {
    // Extract the certificate: prefix path, then walk alive edges until a
    // node repeats.
    SpanCertificate cert;
    cert.apex.base_object = a;
    std::vector<Id> apex_prefix(static_cast<size_t>(prefix_len));
    std::vector<Id> left_prefix(static_cast<size_t>(prefix_len + 1));
    std::vector<Id> right_prefix(static_cast<size_t>(prefix_len + 1));
    State cur = *entry;
    left_prefix[static_cast<size_t>(prefix_len)] = cat.arrow(cur.g).id;
    right_prefix[static_cast<size_t>(prefix_len)] = cat.arrow(cur.f).id;
    for (int i = prefix_len; i >= 1; --i) {
      auto [prev, p] = parent[static_cast<size_t>(i)].at(cur);
      apex_prefix[static_cast<size_t>(i - 1)] = M.sector(p).id;
      left_prefix[static_cast<size_t>(i - 1)] = cat.arrow(prev.g).id;
      right_prefix[static_cast<size_t>(i - 1)] = cat.arrow(prev.f).id;
      cur = prev;
    }
    // Walk from the entry node along alive edges.
    std::vector<PNode> walk = {PNode{*entry, 0}};
    std::vector<int> walk_sectors;
    std::map<PNode, int> position;
    position[walk.front()] = 0;
    int loop_start = -1;
    while (loop_start < 0) {
      PNode node = walk.back();
      for (const auto& [p, next] : edges.at(node))
        if (alive.count(next)) {
          walk_sectors.push_back(p);
          auto it = position.find(next);
          if (it != position.end()) {
            loop_start = it->second;
          } else {
            position[next] = static_cast<int>(walk.size());
            walk.push_back(next);
          }
          break;
        }
    }
    // walk[0..loop_start-1] extend the prefixes; the rest is the cycle.
    for (int k = 0; k < loop_start; ++k) {
      apex_prefix.push_back(M.sector(walk_sectors[static_cast<size_t>(k)]).id);
      left_prefix.push_back(cat.arrow(walk[static_cast<size_t>(k + 1)].s.g).id);
      right_prefix.push_back(cat.arrow(walk[static_cast<size_t>(k + 1)].s.f).id);
    }
    std::vector<Id> apex_cycle, left_cycle, right_cycle;
    for (int k = loop_start; k < static_cast<int>(walk_sectors.size()); ++k) {
      apex_cycle.push_back(M.sector(walk_sectors[static_cast<size_t>(k)]).id);
      int idx = k + 1 < static_cast<int>(walk.size()) ? k + 1 : loop_start;
      left_cycle.push_back(cat.arrow(walk[static_cast<size_t>(idx)].s.g).id);
      right_cycle.push_back(cat.arrow(walk[static_cast<size_t>(idx)].s.f).id);
    }
    cert.apex.prefix = apex_prefix;
    cert.apex.cycle = apex_cycle;
    cert.left.prefix_arrows = left_prefix;
    cert.left.cycle_arrows = left_cycle;
    cert.right.prefix_arrows = right_prefix;
    cert.right.cycle_arrows = right_cycle;
    EqualityVerdict verdict{EqualityVerdict::Tag::Equal, cert, -1, {}};
    if (!verify_span_certificate(S, a, L, L2, cert, depth_budget))
      throw InputError("internal error: span certificate failed re-verification");
    return verdict;
  }

  // No span: look for a definite separation, else report the profile.
  DistanceProfile profile;
  profile.bound = distance_bound;
  for (int r = 1; r <= depth_budget; ++r) {
    BlockQuery q =
        same_block_query(S, unroll(M, L, r), unroll(M, L2, r), distance_bound, node_budget);
    if (!q.same_block && q.certain) {
      EqualityVerdict verdict{EqualityVerdict::Tag::DistinctAtDepth, std::nullopt, r, profile};
      return verdict;
    }
    if (q.same_block) {
      profile.d.push_back(q.distance);
      profile.exact.push_back(true);
    } else {
      profile.d.push_back(distance_bound + 1);
      profile.exact.push_back(false);
    }
  }
  return EqualityVerdict{EqualityVerdict::Tag::Inconclusive, std::nullopt, -1, profile};
}

// ---------------------------------------------------------------------------

std::vector<Id> koenig_select(const InverseSystemLevels& sys, const std::vector<Id>& picks) {
  size_t depth = sys.levels.size();
  if (picks.size() != depth) throw InputError("one pick per level required");
  if (sys.maps.size() + 1 != depth && depth > 0)
    throw InputError("expected one map per adjacent level pair");
  for (size_t r = 0; r < depth; ++r)
    if (sys.levels[r].empty()) throw PreconditionError("koenig_select requires nonempty levels");
  // project x from level n down to level r.
  auto project = [&](size_t n, size_t r, Id x) {
    for (size_t i = n; i > r; --i) x = sys.maps[i - 1].at(x);
    return x;
  };
  std::vector<size_t> window(depth);
  std::iota(window.begin(), window.end(), 0);
  std::vector<Id> thread;
  for (size_t r = 0; r < depth; ++r) {
    std::map<Id, int> recurrence;
    for (size_t n : window)
      if (n >= r) recurrence[project(n, r, picks[n])]++;
    int best = 0;
    Id chosen;
    for (const auto& [value, count] : recurrence)
      if (count > best) {
        best = count;
        chosen = value;
      }
    std::vector<size_t> next_window;
    for (size_t n : window)
      if (n >= r && project(n, r, picks[n]) == chosen) next_window.push_back(n);
    window = std::move(next_window);
    thread.push_back(chosen);
  }
  return thread;
}

}  // namespace selfsim::complexes
