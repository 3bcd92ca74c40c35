#include "selfsim/fincat.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace selfsim {

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

void FinCategory::index() {
  obj_index_.clear();
  arr_index_.clear();
  for (int i = 0; i < num_objects(); ++i) {
    if (!obj_index_.emplace(objects_[static_cast<size_t>(i)], i).second)
      throw InputError("duplicate object id: " + objects_[static_cast<size_t>(i)]);
  }
  arr_src_.resize(arrows_.size());
  arr_tgt_.resize(arrows_.size());
  from_.assign(objects_.size(), {});
  into_.assign(objects_.size(), {});
  for (int i = 0; i < num_arrows(); ++i) {
    const Arrow& a = arrows_[static_cast<size_t>(i)];
    if (!arr_index_.emplace(a.id, i).second) throw InputError("duplicate arrow id: " + a.id);
    auto s = obj_index_.find(a.src);
    auto t = obj_index_.find(a.tgt);
    if (s == obj_index_.end()) throw InputError("arrow " + a.id + " has unknown src " + a.src);
    if (t == obj_index_.end()) throw InputError("arrow " + a.id + " has unknown tgt " + a.tgt);
    arr_src_[static_cast<size_t>(i)] = s->second;
    arr_tgt_[static_cast<size_t>(i)] = t->second;
    from_[static_cast<size_t>(s->second)].push_back(i);
    into_[static_cast<size_t>(t->second)].push_back(i);
  }
}

FinCategory FinCategory::make(std::vector<Id> objects, std::vector<Arrow> arrows,
                              const std::vector<std::tuple<Id, Id, Id>>& compose) {
  for (const Arrow& a : arrows) {
    if (a.id.rfind("id_", 0) == 0)
      throw InputError("arrow id uses reserved identity prefix: " + a.id);
  }
  FinCategory cat;
  cat.objects_ = std::move(objects);
  cat.arrows_ = std::move(arrows);
  int user_arrows = cat.num_arrows();
  for (const Id& o : cat.objects_) cat.arrows_.push_back({identity_id(o), o, o});
  cat.index();
  cat.identity_.resize(cat.objects_.size());
  for (int o = 0; o < cat.num_objects(); ++o)
    cat.identity_[static_cast<size_t>(o)] = cat.arrow_index(identity_id(cat.objects_[static_cast<size_t>(o)]));
  // Identity composites are forced; user entries cover the rest.
  for (int f = 0; f < cat.num_arrows(); ++f) {
    cat.compose_[cat.key(cat.identity_[static_cast<size_t>(cat.tgt(f))], f)] = f;
    cat.compose_[cat.key(f, cat.identity_[static_cast<size_t>(cat.src(f))])] = f;
  }
  for (const auto& [g, f, h] : compose) {
    int gi = cat.arrow_index(g), fi = cat.arrow_index(f), hi = cat.arrow_index(h);
    if (gi >= user_arrows || fi >= user_arrows)
      throw InputError("compose entry mentions identity arrow; identities are implicit");
    if (cat.src(gi) != cat.tgt(fi))
      throw InputError("compose entry " + g + "|" + f + " is not a composable pair");
    cat.compose_[cat.key(gi, fi)] = hi;
  }
  return cat;
}

FinCategory FinCategory::make_raw(std::vector<Id> objects, std::vector<Arrow> arrows,
                                  const std::map<Id, Id>& identity,
                                  const std::vector<std::tuple<Id, Id, Id>>& compose) {
  FinCategory cat;
  cat.objects_ = std::move(objects);
  cat.arrows_ = std::move(arrows);
  cat.index();
  cat.identity_.assign(cat.objects_.size(), -1);
  for (const auto& [o, a] : identity) {
    int oi = cat.object_index(o);
    cat.identity_[static_cast<size_t>(oi)] = cat.arrow_index(a);
  }
  for (int o = 0; o < cat.num_objects(); ++o)
    if (cat.identity_[static_cast<size_t>(o)] < 0)
      throw InputError("no identity designated for object " + cat.objects_[static_cast<size_t>(o)]);
  for (const auto& [g, f, h] : compose) {
    int gi = cat.arrow_index(g), fi = cat.arrow_index(f), hi = cat.arrow_index(h);
    if (cat.src(gi) != cat.tgt(fi))
      throw InputError("compose entry " + g + "|" + f + " is not a composable pair");
    cat.compose_[cat.key(gi, fi)] = hi;
  }
  return cat;
}

int FinCategory::object_index(const Id& o) const {
  auto it = obj_index_.find(o);
  if (it == obj_index_.end()) throw InputError("unknown object: " + o);
  return it->second;
}

int FinCategory::arrow_index(const Id& a) const {
  auto it = arr_index_.find(a);
  if (it == arr_index_.end()) throw InputError("unknown arrow: " + a);
  return it->second;
}

bool FinCategory::is_identity(int arr) const {
  return identity_[static_cast<size_t>(src(arr))] == arr;
}

int FinCategory::compose(int g, int f) const {
  if (src(g) != tgt(f)) return -2;
  auto it = compose_.find(key(g, f));
  return it == compose_.end() ? -1 : it->second;
}

FinCategory opposite(const FinCategory& cat) {
  std::vector<Arrow> arrows;
  arrows.reserve(static_cast<size_t>(cat.num_arrows()));
  for (const Arrow& a : cat.arrows()) arrows.push_back({a.id, a.tgt, a.src});
  std::map<Id, Id> identity;
  for (int o = 0; o < cat.num_objects(); ++o)
    identity[cat.objects()[static_cast<size_t>(o)]] = cat.arrow(cat.identity_of(o)).id;
  std::vector<std::tuple<Id, Id, Id>> compose;
  for (int g = 0; g < cat.num_arrows(); ++g)
    for (int f = 0; f < cat.num_arrows(); ++f)
      if (cat.src(g) == cat.tgt(f)) {
        int h = cat.compose(g, f);
        if (h >= 0)
          compose.emplace_back(cat.arrow(f).id, cat.arrow(g).id, cat.arrow(h).id);
      }
  return FinCategory::make_raw(cat.objects(), std::move(arrows), identity, compose);
}

FinCategory full_subcategory(const FinCategory& cat, const std::vector<Id>& objects) {
  std::set<int> keep;
  for (const Id& o : objects) keep.insert(cat.object_index(o));
  std::vector<Arrow> arrows;
  std::map<Id, Id> identity;
  for (int f = 0; f < cat.num_arrows(); ++f)
    if (keep.count(cat.src(f)) && keep.count(cat.tgt(f))) {
      arrows.push_back(cat.arrow(f));
      if (cat.is_identity(f)) identity[cat.arrow(f).src] = cat.arrow(f).id;
    }
  std::vector<std::tuple<Id, Id, Id>> compose;
  for (const Arrow& g : arrows)
    for (const Arrow& f : arrows) {
      if (g.src != f.tgt) continue;
      int h = cat.compose(cat.arrow_index(g.id), cat.arrow_index(f.id));
      if (h >= 0) compose.emplace_back(g.id, f.id, cat.arrow(h).id);
    }
  return FinCategory::make_raw(objects, std::move(arrows), identity, compose);
}

Id pair_id(const Id& a, const Id& b) { return "(" + a + "," + b + ")"; }

FinCategory product_category(const FinCategory& A, const FinCategory& B) {
  std::vector<Id> objects;
  for (const Id& a : A.objects())
    for (const Id& b : B.objects()) objects.push_back(pair_id(a, b));
  std::vector<Arrow> arrows;
  std::map<Id, Id> identity;
  for (int f = 0; f < A.num_arrows(); ++f)
    for (int g = 0; g < B.num_arrows(); ++g) {
      const Arrow& fa = A.arrow(f);
      const Arrow& gb = B.arrow(g);
      arrows.push_back({pair_id(fa.id, gb.id), pair_id(fa.src, gb.src), pair_id(fa.tgt, gb.tgt)});
    }
  for (int a = 0; a < A.num_objects(); ++a)
    for (int b = 0; b < B.num_objects(); ++b)
      identity[pair_id(A.objects()[static_cast<size_t>(a)], B.objects()[static_cast<size_t>(b)])] =
          pair_id(A.arrow(A.identity_of(a)).id, B.arrow(B.identity_of(b)).id);
  std::vector<std::tuple<Id, Id, Id>> compose;
  for (int f2 = 0; f2 < A.num_arrows(); ++f2)
    for (int f1 = 0; f1 < A.num_arrows(); ++f1) {
      if (A.src(f2) != A.tgt(f1)) continue;
      int fh = A.compose(f2, f1);
      if (fh < 0) continue;
      for (int g2 = 0; g2 < B.num_arrows(); ++g2)
        for (int g1 = 0; g1 < B.num_arrows(); ++g1) {
          if (B.src(g2) != B.tgt(g1)) continue;
          int gh = B.compose(g2, g1);
          if (gh < 0) continue;
          compose.emplace_back(pair_id(A.arrow(f2).id, B.arrow(g2).id),
                               pair_id(A.arrow(f1).id, B.arrow(g1).id),
                               pair_id(A.arrow(fh).id, B.arrow(gh).id));
        }
    }
  return FinCategory::make_raw(std::move(objects), std::move(arrows), identity, compose);
}

// ---------------------------------------------------------------------------

ValidationReport validate_category(const FinCategory& cat) {
  ValidationReport report;
  auto add = [&](Violation::Kind k, std::string msg, std::vector<Id> w) {
    report.violations.push_back({k, std::move(msg), std::move(w)});
  };
  for (int o = 0; o < cat.num_objects(); ++o) {
    int e = cat.identity_of(o);
    if (cat.src(e) != o || cat.tgt(e) != o)
      add(Violation::Kind::IdentityEndpoints,
          "identity of " + cat.objects()[static_cast<size_t>(o)] + " is not an endomorphism",
          {cat.arrow(e).id});
  }
  for (int g = 0; g < cat.num_arrows(); ++g)
    for (int f = 0; f < cat.num_arrows(); ++f) {
      if (cat.src(g) != cat.tgt(f)) continue;
      int h = cat.compose(g, f);
      const Id& gid = cat.arrow(g).id;
      const Id& fid = cat.arrow(f).id;
      if (h < 0) {
        add(Violation::Kind::MissingEntry, "no composite for " + gid + "|" + fid, {gid, fid});
        continue;
      }
      if (cat.src(h) != cat.src(f) || cat.tgt(h) != cat.tgt(g))
        add(Violation::Kind::SrcTgtMismatch,
            "composite " + cat.arrow(h).id + " of " + gid + "|" + fid + " has wrong endpoints",
            {gid, fid, cat.arrow(h).id});
      if (cat.is_identity(g) && h != f)
        add(Violation::Kind::IdentityLaw, "1|" + fid + " != " + fid, {gid, fid});
      if (cat.is_identity(f) && h != g)
        add(Violation::Kind::IdentityLaw, gid + "|1 != " + gid, {gid, fid});
    }
  for (int h = 0; h < cat.num_arrows(); ++h)
    for (int g = 0; g < cat.num_arrows(); ++g) {
      if (cat.src(h) != cat.tgt(g)) continue;
      int hg = cat.compose(h, g);
      if (hg < 0) continue;
      for (int f = 0; f < cat.num_arrows(); ++f) {
        if (cat.src(g) != cat.tgt(f)) continue;
        int gf = cat.compose(g, f);
        if (gf < 0) continue;
        int left = cat.compose(h, gf);
        int right = cat.compose(hg, f);
        if (left >= 0 && right >= 0 && left != right)
          add(Violation::Kind::Associativity,
              "associativity fails on " + cat.arrow(h).id + "|" + cat.arrow(g).id + "|" +
                  cat.arrow(f).id,
              {cat.arrow(h).id, cat.arrow(g).id, cat.arrow(f).id});
      }
    }
  return report;
}

// ---------------------------------------------------------------------------

SetFunctor SetFunctor::make(CatPtr base, const std::map<Id, std::vector<Id>>& on_objects,
                            const std::map<std::pair<Id, Id>, Id>& on_arrows) {
  SetFunctor X;
  X.base_ = std::move(base);
  const FinCategory& cat = *X.base_;
  X.elems_.assign(static_cast<size_t>(cat.num_objects()), {});
  X.elem_index_.assign(static_cast<size_t>(cat.num_objects()), {});
  for (const auto& [o, xs] : on_objects) {
    int oi = cat.object_index(o);
    X.elems_[static_cast<size_t>(oi)] = xs;
    for (int i = 0; i < static_cast<int>(xs.size()); ++i)
      if (!X.elem_index_[static_cast<size_t>(oi)].emplace(xs[static_cast<size_t>(i)], i).second)
        throw InputError("duplicate element " + xs[static_cast<size_t>(i)] + " at object " + o);
  }
  X.action_.assign(static_cast<size_t>(cat.num_arrows()), {});
  for (int f = 0; f < cat.num_arrows(); ++f) {
    size_t n = X.elems_[static_cast<size_t>(cat.src(f))].size();
    X.action_[static_cast<size_t>(f)].assign(n, cat.is_identity(f) ? 0 : -1);
    if (cat.is_identity(f))
      for (size_t i = 0; i < n; ++i) X.action_[static_cast<size_t>(f)][i] = static_cast<int>(i);
  }
  for (const auto& [fx, y] : on_arrows) {
    int f = cat.arrow_index(fx.first);
    int xi = X.element_index(cat.src(f), fx.second);
    if (xi < 0) throw InputError("unknown element " + fx.second + " in action of " + fx.first);
    int yi = X.element_index(cat.tgt(f), y);
    if (yi < 0) throw InputError("unknown image element " + y + " in action of " + fx.first);
    X.action_[static_cast<size_t>(f)][static_cast<size_t>(xi)] = yi;
  }
  return X;
}

int SetFunctor::element_index(int obj, const Id& x) const {
  const auto& m = elem_index_[static_cast<size_t>(obj)];
  auto it = m.find(x);
  return it == m.end() ? -1 : it->second;
}

int SetFunctor::apply(int arr, int x) const {
  return action_[static_cast<size_t>(arr)][static_cast<size_t>(x)];
}

ValidationReport SetFunctor::validate() const {
  ValidationReport report;
  const FinCategory& cat = *base_;
  for (int f = 0; f < cat.num_arrows(); ++f)
    for (size_t x = 0; x < elems_[static_cast<size_t>(cat.src(f))].size(); ++x)
      if (action_[static_cast<size_t>(f)][x] < 0)
        report.violations.push_back(
            {Violation::Kind::MissingEntry,
             "no action entry for " + cat.arrow(f).id + "|" +
                 elems_[static_cast<size_t>(cat.src(f))][x],
             {cat.arrow(f).id}});
  if (!report.ok()) return report;
  for (int g = 0; g < cat.num_arrows(); ++g)
    for (int f = 0; f < cat.num_arrows(); ++f) {
      if (cat.src(g) != cat.tgt(f)) continue;
      int h = cat.compose(g, f);
      if (h < 0) continue;
      for (size_t x = 0; x < elems_[static_cast<size_t>(cat.src(f))].size(); ++x) {
        int via = apply(g, apply(f, static_cast<int>(x)));
        int direct = apply(h, static_cast<int>(x));
        if (via != direct)
          report.violations.push_back(
              {Violation::Kind::Associativity,
               "(" + cat.arrow(g).id + "∘" + cat.arrow(f).id + ")x != " + cat.arrow(g).id + "(" +
                   cat.arrow(f).id + "x) at x=" + elems_[static_cast<size_t>(cat.src(f))][x],
               {cat.arrow(g).id, cat.arrow(f).id}});
      }
    }
  return report;
}

SetFunctor representable(CatPtr base, const Id& b) {
  const FinCategory& cat = *base;
  int bi = cat.object_index(b);
  std::map<Id, std::vector<Id>> on_objects;
  for (const Id& o : cat.objects()) on_objects[o] = {};
  for (int f : cat.arrows_from(bi))
    on_objects[cat.objects()[static_cast<size_t>(cat.tgt(f))]].push_back(cat.arrow(f).id);
  for (auto& [o, xs] : on_objects) std::sort(xs.begin(), xs.end());
  std::map<std::pair<Id, Id>, Id> on_arrows;
  for (int g = 0; g < cat.num_arrows(); ++g) {
    if (cat.is_identity(g)) continue;
    for (int f : cat.arrows_from(bi)) {
      if (cat.tgt(f) != cat.src(g)) continue;
      int h = cat.compose(g, f);
      if (h < 0) throw InputError("representable over a category with a missing composite");
      on_arrows[{cat.arrow(g).id, cat.arrow(f).id}] = cat.arrow(h).id;
    }
  }
  return SetFunctor::make(std::move(base), on_objects, on_arrows);
}

SetFunctor constant_functor(CatPtr base, const Id& elem) {
  std::map<Id, std::vector<Id>> on_objects;
  for (const Id& o : base->objects()) on_objects[o] = {elem};
  std::map<std::pair<Id, Id>, Id> on_arrows;
  for (const Arrow& a : base->arrows()) on_arrows[{a.id, elem}] = elem;
  return SetFunctor::make(std::move(base), on_objects, on_arrows);
}

SetFunctor sum_of_representables(CatPtr base, const std::vector<Id>& bs) {
  const FinCategory& cat = *base;
  std::map<Id, std::vector<Id>> on_objects;
  for (const Id& o : cat.objects()) on_objects[o] = {};
  std::map<std::pair<Id, Id>, Id> on_arrows;
  for (int k = 0; k < static_cast<int>(bs.size()); ++k) {
    int bi = cat.object_index(bs[static_cast<size_t>(k)]);
    std::string prefix = std::to_string(k) + ":";
    for (int f : cat.arrows_from(bi))
      on_objects[cat.objects()[static_cast<size_t>(cat.tgt(f))]].push_back(prefix + cat.arrow(f).id);
    for (int g = 0; g < cat.num_arrows(); ++g) {
      if (cat.is_identity(g)) continue;
      for (int f : cat.arrows_from(bi)) {
        if (cat.tgt(f) != cat.src(g)) continue;
        int h = cat.compose(g, f);
        if (h >= 0) on_arrows[{cat.arrow(g).id, prefix + cat.arrow(f).id}] = prefix + cat.arrow(h).id;
      }
    }
  }
  for (auto& [o, xs] : on_objects) std::sort(xs.begin(), xs.end());
  return SetFunctor::make(std::move(base), on_objects, on_arrows);
}

// ---------------------------------------------------------------------------

ComponentPartition connected_components(const FinCategory& cat) {
  UnionFind uf(cat.num_objects());
  for (int f = 0; f < cat.num_arrows(); ++f) uf.unite(cat.src(f), cat.tgt(f));
  std::map<int, std::vector<Id>> groups;
  for (int o = 0; o < cat.num_objects(); ++o)
    groups[uf.find(o)].push_back(cat.objects()[static_cast<size_t>(o)]);
  ComponentPartition part;
  for (auto& [root, ids] : groups) {
    std::sort(ids.begin(), ids.end());
    part.blocks.push_back(std::move(ids));
  }
  std::sort(part.blocks.begin(), part.blocks.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  for (int b = 0; b < part.num_blocks(); ++b)
    for (const Id& o : part.blocks[static_cast<size_t>(b)]) part.block_of[o] = b;
  return part;
}

std::optional<int> zigzag_distance(const FinCategory& cat, const Id& a, const Id& b) {
  int s = cat.object_index(a);
  int t = cat.object_index(b);
  if (s == t) return 0;
  // Roof adjacency: x ~ y when some object has arrows to both.
  std::vector<std::vector<int>> outs(static_cast<size_t>(cat.num_objects()));
  std::vector<std::vector<int>> roof_sources(static_cast<size_t>(cat.num_objects()));
  for (int c = 0; c < cat.num_objects(); ++c) {
    std::set<int> dedup;
    for (int f : cat.arrows_from(c)) dedup.insert(cat.tgt(f));
    outs[static_cast<size_t>(c)].assign(dedup.begin(), dedup.end());
    for (int y : outs[static_cast<size_t>(c)]) roof_sources[static_cast<size_t>(y)].push_back(c);
  }
  std::vector<int> dist(static_cast<size_t>(cat.num_objects()), -1);
  std::deque<int> queue;
  dist[static_cast<size_t>(s)] = 0;
  queue.push_back(s);
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int c : roof_sources[static_cast<size_t>(x)])
      for (int y : outs[static_cast<size_t>(c)])
        if (dist[static_cast<size_t>(y)] < 0) {
          dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
          if (y == t) return dist[static_cast<size_t>(y)];
          queue.push_back(y);
        }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Id element_object_id(const Id& obj, const Id& elem) { return "(" + obj + "|" + elem + ")"; }

ElementsCategory category_of_elements(const SetFunctor& X) {
  const FinCategory& cat = X.base();
  std::vector<Id> objects;
  std::unordered_map<Id, Id> object_proj;
  for (int o = 0; o < cat.num_objects(); ++o)
    for (const Id& x : X.elements(o)) {
      Id id = element_object_id(cat.objects()[static_cast<size_t>(o)], x);
      objects.push_back(id);
      object_proj[id] = cat.objects()[static_cast<size_t>(o)];
    }
  std::vector<Arrow> arrows;
  std::map<Id, Id> identity;
  std::unordered_map<Id, Id> arrow_proj;
  auto elt_arrow_id = [&](int f, const Id& src_obj_id) {
    return cat.arrow(f).id + "@" + src_obj_id;
  };
  for (int o = 0; o < cat.num_objects(); ++o)
    for (const Id& x : X.elements(o)) {
      Id src_id = element_object_id(cat.objects()[static_cast<size_t>(o)], x);
      int xi = X.element_index(o, x);
      for (int f : cat.arrows_from(o)) {
        int yi = X.apply(f, xi);
        if (yi < 0) throw PreconditionError("category_of_elements requires a validated functor");
        Id tgt_id = element_object_id(cat.objects()[static_cast<size_t>(cat.tgt(f))],
                                      X.elements(cat.tgt(f))[static_cast<size_t>(yi)]);
        Id aid = elt_arrow_id(f, src_id);
        arrows.push_back({aid, src_id, tgt_id});
        arrow_proj[aid] = cat.arrow(f).id;
        if (cat.is_identity(f)) identity[src_id] = aid;
      }
    }
  std::vector<std::tuple<Id, Id, Id>> compose;
  for (const Arrow& a2 : arrows)
    for (const Arrow& a1 : arrows) {
      if (a2.src != a1.tgt) continue;
      int g = cat.arrow_index(arrow_proj.at(a2.id));
      int f = cat.arrow_index(arrow_proj.at(a1.id));
      int h = cat.compose(g, f);
      if (h < 0) throw PreconditionError("category_of_elements requires a total composition table");
      compose.emplace_back(a2.id, a1.id, elt_arrow_id(h, a1.src));
    }
  ElementsCategory result{FinCategory::make_raw(std::move(objects), std::move(arrows), identity,
                                                compose),
                          std::move(object_proj), std::move(arrow_proj)};
  return result;
}

// ---------------------------------------------------------------------------

namespace {

// All (g, g') with g: c→a, g': c→a' and f∘g = f'∘g', together with z such
// that gz = x and g'z = x'.
bool nd1_instance_completes(const SetFunctor& X, int f, int f_prime, int x, int x_prime) {
  const FinCategory& cat = X.base();
  for (int c = 0; c < cat.num_objects(); ++c)
    for (int g : cat.arrows_from(c)) {
      if (cat.tgt(g) != cat.src(f)) continue;
      for (int g_prime : cat.arrows_from(c)) {
        if (cat.tgt(g_prime) != cat.src(f_prime)) continue;
        if (cat.compose(f, g) != cat.compose(f_prime, g_prime)) continue;
        for (int z = 0; z < static_cast<int>(X.elements(c).size()); ++z)
          if (X.apply(g, z) == x && X.apply(g_prime, z) == x_prime) return true;
      }
    }
  return false;
}

bool nd2_instance_extends(const SetFunctor& X, int f, int f_prime, int x) {
  const FinCategory& cat = X.base();
  for (int c = 0; c < cat.num_objects(); ++c)
    for (int g : cat.arrows_from(c)) {
      if (cat.tgt(g) != cat.src(f)) continue;
      if (cat.compose(f, g) != cat.compose(f_prime, g)) continue;
      for (int z = 0; z < static_cast<int>(X.elements(c).size()); ++z)
        if (X.apply(g, z) == x) return true;
    }
  return false;
}

// Arrow indices sorted by id for deterministic witness order.
std::vector<int> arrows_by_id(const FinCategory& cat) {
  std::vector<int> order(static_cast<size_t>(cat.num_arrows()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return cat.arrow(i).id < cat.arrow(j).id; });
  return order;
}

}  // namespace

NdReport check_functor_nondegenerate(const SetFunctor& X) {
  const FinCategory& cat = X.base();
  NdReport report;
  std::vector<int> order = arrows_by_id(cat);
  for (int f : order)
    for (int f_prime : order) {
      if (cat.tgt(f) != cat.tgt(f_prime)) continue;
      for (int x = 0; x < static_cast<int>(X.elements(cat.src(f)).size()); ++x)
        for (int xp = 0; xp < static_cast<int>(X.elements(cat.src(f_prime)).size()); ++xp) {
          if (X.apply(f, x) != X.apply(f_prime, xp)) continue;
          if (!nd1_instance_completes(X, f, f_prime, x, xp)) {
            report.nd1 = NdSquareWitness{cat.arrow(f).id, cat.arrow(f_prime).id,
                                         X.elements(cat.src(f))[static_cast<size_t>(x)],
                                         X.elements(cat.src(f_prime))[static_cast<size_t>(xp)]};
            return report;
          }
        }
    }
  for (int f : order)
    for (int f_prime : order) {
      if (cat.src(f) != cat.src(f_prime) || cat.tgt(f) != cat.tgt(f_prime)) continue;
      for (int x = 0; x < static_cast<int>(X.elements(cat.src(f)).size()); ++x) {
        if (X.apply(f, x) != X.apply(f_prime, x)) continue;
        if (!nd2_instance_extends(X, f, f_prime, x)) {
          report.nd2 = NdForkWitness{cat.arrow(f).id, cat.arrow(f_prime).id,
                                     X.elements(cat.src(f))[static_cast<size_t>(x)]};
          return report;
        }
      }
    }
  return report;
}

FilteredReport check_componentwise_filtered(const FinCategory& cat) {
  FilteredReport report;
  std::vector<int> order = arrows_by_id(cat);
  // A parallel pair with no cofork also fails square completion, so check the
  // pairs first to report the sharper witness.
  for (int f : order)
    for (int f_prime : order) {
      if (cat.src(f) != cat.src(f_prime) || cat.tgt(f) != cat.tgt(f_prime)) continue;
      bool found = false;
      for (int h = 0; h < cat.num_arrows() && !found; ++h) {
        if (cat.src(h) != cat.tgt(f)) continue;
        if (cat.compose(h, f) == cat.compose(h, f_prime)) found = true;
      }
      if (!found) {
        report.parallel_failure = {cat.arrow(f).id, cat.arrow(f_prime).id};
        return report;
      }
    }
  for (int f : order)
    for (int f_prime : order) {
      if (cat.src(f) != cat.src(f_prime)) continue;
      bool found = false;
      for (int g = 0; g < cat.num_arrows() && !found; ++g) {
        if (cat.src(g) != cat.tgt(f)) continue;
        for (int g_prime = 0; g_prime < cat.num_arrows() && !found; ++g_prime) {
          if (cat.src(g_prime) != cat.tgt(f_prime)) continue;
          if (cat.tgt(g) != cat.tgt(g_prime)) continue;
          if (cat.compose(g, f) == cat.compose(g_prime, f_prime)) found = true;
        }
      }
      if (!found) {
        report.span_failure = {cat.arrow(f).id, cat.arrow(f_prime).id};
        return report;
      }
    }
  return report;
}

FilteredReport check_componentwise_cofiltered(const FinCategory& cat) {
  return check_componentwise_filtered(opposite(cat));
}

// ---------------------------------------------------------------------------

std::vector<Id> split_idempotents_check(const FinCategory& cat) {
  std::vector<Id> non_split;
  for (int e = 0; e < cat.num_arrows(); ++e) {
    if (cat.src(e) != cat.tgt(e)) continue;
    if (cat.compose(e, e) != e) continue;
    if (cat.is_identity(e)) continue;
    bool splits = false;
    int b = cat.src(e);
    for (int a = 0; a < cat.num_objects() && !splits; ++a)
      for (int i : cat.arrows_from(a)) {
        if (cat.tgt(i) != b) continue;
        for (int p : cat.arrows_into(a)) {
          if (cat.src(p) != b) continue;
          if (cat.compose(p, i) == cat.identity_of(a) && cat.compose(i, p) == e) {
            splits = true;
            break;
          }
        }
        if (splits) break;
      }
    if (!splits) non_split.push_back(cat.arrow(e).id);
  }
  std::sort(non_split.begin(), non_split.end());
  return non_split;
}

std::map<Id, std::optional<Id>> initial_object_per_component(const FinCategory& cat) {
  ComponentPartition part = connected_components(cat);
  // arrow counts o -> p
  std::map<std::pair<int, int>, int> count;
  for (int f = 0; f < cat.num_arrows(); ++f) count[{cat.src(f), cat.tgt(f)}]++;
  std::map<Id, std::optional<Id>> result;
  for (int b = 0; b < part.num_blocks(); ++b) {
    const auto& block = part.blocks[static_cast<size_t>(b)];
    std::optional<Id> initial;
    for (const Id& o : block) {  // blocks are sorted, first hit is lexicographic
      int oi = cat.object_index(o);
      bool ok = true;
      for (const Id& p : block) {
        auto it = count.find({oi, cat.object_index(p)});
        if (it == count.end() || it->second != 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        initial = o;
        break;
      }
    }
    result[part.representative(b)] = initial;
  }
  return result;
}

DecomposeResult decompose_into_representables(const SetFunctor& X) {
  const FinCategory& cat = X.base();
  if (!split_idempotents_check(cat).empty())
    throw PreconditionError("decompose_into_representables requires a Cauchy-complete base");
  if (!X.validate().ok())
    throw PreconditionError("decompose_into_representables requires a validated functor");
  NdReport nd = check_functor_nondegenerate(X);
  if (!nd.ok()) return DecomposeFailure{"functor is degenerate", nd, std::nullopt};
  ElementsCategory elt = category_of_elements(X);
  std::map<Id, std::optional<Id>> initials = initial_object_per_component(elt.cat);
  Decomposition decomposition;
  for (const auto& [rep, initial] : initials) {
    if (!initial) return DecomposeFailure{"component without initial object", std::nullopt, rep};
    decomposition.multiplicity[elt.object_proj.at(*initial)]++;
  }
  return decomposition;
}

}  // namespace selfsim
