#include "selfsim/discrete.hpp"

#include <algorithm>
#include <set>

#include <Eigen/Core>

namespace selfsim::discrete {

int DiscreteSystem::object_index(const Id& o) const {
  auto it = std::find(objects.begin(), objects.end(), o);
  if (it == objects.end()) throw InputError("unknown object: " + o);
  return static_cast<int>(it - objects.begin());
}

long long DiscreteSystem::sector_count_into(const Id& a) const {
  long long n = 0;
  for (const auto& [ba, ms] : sectors)
    if (ba.second == a) n += static_cast<long long>(ms.size());
  return n;
}

EquationalSystem to_equational_system(const DiscreteSystem& D, const std::string& name) {
  auto cat = std::make_shared<const FinCategory>(FinCategory::make(D.objects, {}, {}));
  std::vector<Sector> sectors;
  for (const auto& [ba, ms] : D.sectors)
    for (const Id& m : ms) sectors.push_back({m, ba.first, ba.second});
  Module module = Module::make(cat, std::move(sectors), {}, {});
  return EquationalSystem{cat, std::move(module), SystemMetadata{name, "discrete", D.truncated}};
}

DiscreteSystem from_equational_system(const EquationalSystem& S) {
  const FinCategory& cat = *S.category;
  for (int f = 0; f < cat.num_arrows(); ++f)
    if (!cat.is_identity(f)) throw PreconditionError("system is not discrete");
  DiscreteSystem D;
  D.objects = cat.objects();
  D.truncated = S.metadata.truncated;
  for (const Sector& s : S.module.sectors()) D.sectors[{s.src, s.tgt}].push_back(s.id);
  return D;
}

namespace {

// live[o] per object under the greatest fixpoint.
std::vector<bool> live_objects(const DiscreteSystem& D) {
  size_t n = D.objects.size();
  std::vector<bool> live(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t a = 0; a < n; ++a) {
      if (!live[a]) continue;
      bool has_live_source = false;
      for (const auto& [ba, ms] : D.sectors) {
        if (ms.empty() || ba.second != D.objects[a]) continue;
        if (live[static_cast<size_t>(D.object_index(ba.first))]) {
          has_live_source = true;
          break;
        }
      }
      if (!has_live_source) {
        live[a] = false;
        changed = true;
      }
    }
  }
  return live;
}

// Incoming sectors of `a` whose source is live, as (source index, sector id).
std::vector<std::pair<int, Id>> live_incoming(const DiscreteSystem& D,
                                              const std::vector<bool>& live, const Id& a) {
  std::vector<std::pair<int, Id>> in;
  for (const auto& [ba, ms] : D.sectors) {
    if (ba.second != a) continue;
    int b = D.object_index(ba.first);
    if (!live[static_cast<size_t>(b)]) continue;
    for (const Id& m : ms) in.push_back({b, m});
  }
  return in;
}

// Objects backward-reachable from a through live sectors (a included).
std::vector<int> backward_cone(const DiscreteSystem& D, const std::vector<bool>& live, int a) {
  std::vector<int> stack = {a};
  std::set<int> seen = {a};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (const auto& [b, m] : live_incoming(D, live, D.objects[static_cast<size_t>(cur)]))
      if (seen.insert(b).second) stack.push_back(b);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<Id> nonempty_objects(const DiscreteSystem& D) {
  std::vector<bool> live = live_objects(D);
  std::vector<Id> out;
  for (size_t i = 0; i < D.objects.size(); ++i)
    if (live[i]) out.push_back(D.objects[i]);
  return out;
}

std::vector<Id> singleton_objects(const DiscreteSystem& D) {
  std::vector<bool> live = live_objects(D);
  std::vector<Id> out;
  for (size_t i = 0; i < D.objects.size(); ++i) {
    if (!live[i]) continue;
    bool deterministic = true;
    for (int c : backward_cone(D, live, static_cast<int>(i)))
      if (live_incoming(D, live, D.objects[static_cast<size_t>(c)]).size() != 1) {
        deterministic = false;
        break;
      }
    if (deterministic) out.push_back(D.objects[i]);
  }
  return out;
}

std::map<Id, ObjectClass> classify(const DiscreteSystem& D) {
  std::vector<bool> live = live_objects(D);
  std::vector<Id> singletons = singleton_objects(D);
  std::set<Id> singleton_set(singletons.begin(), singletons.end());
  std::map<Id, ObjectClass> out;
  for (size_t i = 0; i < D.objects.size(); ++i) {
    const Id& a = D.objects[i];
    ObjectClass oc{SpaceKind::Empty, std::nullopt, std::nullopt};
    auto bd = D.boundary_distance.find(a);
    if (bd != D.boundary_distance.end()) oc.boundary_distance = bd->second;
    if (!live[i]) {
      out[a] = oc;
      continue;
    }
    if (singleton_set.count(a)) {
      oc.kind = SpaceKind::Singleton;
      out[a] = oc;
      continue;
    }
    // Look for a backward-reachable singleton along a shortest descent.
    std::map<int, std::pair<int, Id>> parent;  // node -> (previous node, sector taken)
    std::vector<int> queue = {static_cast<int>(i)};
    parent[static_cast<int>(i)] = {-1, ""};
    int found = -1;
    for (size_t qi = 0; qi < queue.size() && found < 0; ++qi) {
      int cur = queue[qi];
      for (const auto& [b, m] : live_incoming(D, live, D.objects[static_cast<size_t>(cur)])) {
        if (parent.count(b)) continue;
        parent[b] = {cur, m};
        if (singleton_set.count(D.objects[static_cast<size_t>(b)])) {
          found = b;
          break;
        }
        queue.push_back(b);
      }
    }
    if (found < 0) {
      oc.kind = SpaceKind::Cantor;
      out[a] = oc;
      continue;
    }
    oc.kind = SpaceKind::Mixed;
    IsolatedWitness witness;
    // Sectors from a down to the singleton, address order (sector at a first).
    std::vector<Id> path;
    for (int cur = found; parent.at(cur).first >= 0; cur = parent.at(cur).first)
      path.push_back(parent.at(cur).second);
    std::reverse(path.begin(), path.end());
    witness.prefix = path;
    // Deterministic tail at the singleton: walk until a node repeats, then
    // split the walk into pre-cycle (prefix) and cycle parts.
    std::vector<Id> tail;
    std::vector<int> order = {found};
    int node = found;
    std::set<int> tail_seen = {found};
    while (true) {
      auto in = live_incoming(D, live, D.objects[static_cast<size_t>(node)]);
      tail.push_back(in.front().second);
      node = in.front().first;
      order.push_back(node);
      if (!tail_seen.insert(node).second) break;
    }
    size_t start = 0;
    while (order[start] != node) ++start;
    for (size_t k = 0; k < start; ++k) witness.prefix.push_back(tail[k]);
    for (size_t k = start; k < tail.size(); ++k) witness.cycle.push_back(tail[k]);
    oc.witness = witness;
    out[a] = oc;
  }
  return out;
}

long long stream_count(const DiscreteSystem& D, const Id& a, int n) {
  int n_obj = static_cast<int>(D.objects.size());
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> T =
      Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Zero(n_obj, n_obj);
  for (const auto& [ba, ms] : D.sectors)
    T(D.object_index(ba.second), D.object_index(ba.first)) +=
        static_cast<long long>(ms.size());
  Eigen::Matrix<long long, Eigen::Dynamic, 1> counts =
      Eigen::Matrix<long long, Eigen::Dynamic, 1>::Ones(n_obj);
  for (int k = 0; k < n; ++k) counts = (T * counts).eval();
  return counts(D.object_index(a));
}

}  // namespace selfsim::discrete

