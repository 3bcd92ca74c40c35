#include "selfsim/finmod.hpp"

#include <algorithm>
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

Module Module::make(CatPtr base, std::vector<Sector> sectors,
                    const std::map<std::pair<Id, Id>, Id>& left,
                    const std::map<std::pair<Id, Id>, Id>& right) {
  Module M;
  M.base_ = std::move(base);
  M.sectors_ = std::move(sectors);
  const FinCategory& cat = *M.base_;
  M.sec_src_.resize(M.sectors_.size());
  M.sec_tgt_.resize(M.sectors_.size());
  M.into_.assign(static_cast<size_t>(cat.num_objects()), {});
  M.from_.assign(static_cast<size_t>(cat.num_objects()), {});
  for (int i = 0; i < M.num_sectors(); ++i) {
    const Sector& s = M.sectors_[static_cast<size_t>(i)];
    if (!M.sec_index_.emplace(s.id, i).second) throw InputError("duplicate sector id: " + s.id);
    M.sec_src_[static_cast<size_t>(i)] = cat.object_index(s.src);
    M.sec_tgt_[static_cast<size_t>(i)] = cat.object_index(s.tgt);
    M.into_[static_cast<size_t>(M.sec_tgt_[static_cast<size_t>(i)])].push_back(i);
    M.from_[static_cast<size_t>(M.sec_src_[static_cast<size_t>(i)])].push_back(i);
  }
  // Identity actions are forced by the axioms.
  for (int m = 0; m < M.num_sectors(); ++m) {
    M.left_[M.key(cat.identity_of(M.tgt(m)), m)] = m;
    M.right_[M.rkey(m, cat.identity_of(M.src(m)))] = m;
  }
  for (const auto& [fm, result] : left) {
    int f = cat.arrow_index(fm.first);
    int m = M.sector_index(fm.second);
    if (cat.src(f) != M.tgt(m))
      throw InputError("left action entry " + fm.first + "|" + fm.second + " is not composable");
    M.left_[M.key(f, m)] = M.sector_index(result);
  }
  for (const auto& [mg, result] : right) {
    int m = M.sector_index(mg.first);
    int g = cat.arrow_index(mg.second);
    if (cat.tgt(g) != M.src(m))
      throw InputError("right action entry " + mg.first + "|" + mg.second + " is not composable");
    M.right_[M.rkey(m, g)] = M.sector_index(result);
  }
  return M;
}

int Module::sector_index(const Id& m) const {
  auto it = sec_index_.find(m);
  if (it == sec_index_.end()) throw InputError("unknown sector: " + m);
  return it->second;
}

int Module::left(int f, int m) const {
  auto it = left_.find(key(f, m));
  return it == left_.end() ? -1 : it->second;
}

int Module::right(int m, int g) const {
  auto it = right_.find(rkey(m, g));
  return it == right_.end() ? -1 : it->second;
}

SetFunctor Module::hom_from(const Id& b) const {
  const FinCategory& cat = *base_;
  int bi = cat.object_index(b);
  std::map<Id, std::vector<Id>> on_objects;
  for (const Id& o : cat.objects()) on_objects[o] = {};
  for (int m = 0; m < num_sectors(); ++m)
    if (src(m) == bi) on_objects[cat.objects()[static_cast<size_t>(tgt(m))]].push_back(sector(m).id);
  for (auto& [o, xs] : on_objects) std::sort(xs.begin(), xs.end());
  std::map<std::pair<Id, Id>, Id> on_arrows;
  for (int f = 0; f < cat.num_arrows(); ++f) {
    if (cat.is_identity(f)) continue;
    for (int m = 0; m < num_sectors(); ++m) {
      if (src(m) != bi || tgt(m) != cat.src(f)) continue;
      int fm = left(f, m);
      if (fm >= 0) on_arrows[{cat.arrow(f).id, sector(m).id}] = sector(fm).id;
    }
  }
  return SetFunctor::make(base_, on_objects, on_arrows);
}

SetFunctor Module::hom_into(const Id& a) const {
  FinCategory op = opposite(*base_);
  auto op_ptr = std::make_shared<const FinCategory>(std::move(op));
  int ai = base_->object_index(a);
  std::map<Id, std::vector<Id>> on_objects;
  for (const Id& o : base_->objects()) on_objects[o] = {};
  for (int m = 0; m < num_sectors(); ++m)
    if (tgt(m) == ai) on_objects[base_->objects()[static_cast<size_t>(src(m))]].push_back(sector(m).id);
  for (auto& [o, xs] : on_objects) std::sort(xs.begin(), xs.end());
  std::map<std::pair<Id, Id>, Id> on_arrows;
  for (int g = 0; g < base_->num_arrows(); ++g) {
    if (base_->is_identity(g)) continue;
    for (int m = 0; m < num_sectors(); ++m) {
      if (tgt(m) != ai || src(m) != base_->tgt(g)) continue;
      int mg = right(m, g);
      if (mg >= 0) on_arrows[{base_->arrow(g).id, sector(m).id}] = sector(mg).id;
    }
  }
  return SetFunctor::make(op_ptr, on_objects, on_arrows);
}

// ---------------------------------------------------------------------------

ValidationReport validate_module(const Module& M) {
  ValidationReport report;
  const FinCategory& cat = M.base();
  auto add = [&](Violation::Kind k, std::string msg, std::vector<Id> w) {
    report.violations.push_back({k, std::move(msg), std::move(w)});
  };
  // Totality of the tables.
  for (int f = 0; f < cat.num_arrows(); ++f)
    for (int m = 0; m < M.num_sectors(); ++m) {
      if (cat.src(f) == M.tgt(m) && M.left(f, m) < 0)
        add(Violation::Kind::MissingEntry,
            "no left action entry for " + cat.arrow(f).id + "|" + M.sector(m).id,
            {cat.arrow(f).id, M.sector(m).id});
      if (cat.tgt(f) == M.src(m) && M.right(m, f) < 0)
        add(Violation::Kind::MissingEntry,
            "no right action entry for " + M.sector(m).id + "|" + cat.arrow(f).id,
            {M.sector(m).id, cat.arrow(f).id});
    }
  if (!report.ok()) return report;
  // Endpoint sanity.
  for (int f = 0; f < cat.num_arrows(); ++f)
    for (int m = 0; m < M.num_sectors(); ++m) {
      if (cat.src(f) == M.tgt(m)) {
        int fm = M.left(f, m);
        if (M.src(fm) != M.src(m) || M.tgt(fm) != cat.tgt(f))
          add(Violation::Kind::SrcTgtMismatch,
              "left action " + cat.arrow(f).id + "|" + M.sector(m).id + " has wrong endpoints",
              {cat.arrow(f).id, M.sector(m).id});
      }
      if (cat.tgt(f) == M.src(m)) {
        int mf = M.right(m, f);
        if (M.tgt(mf) != M.tgt(m) || M.src(mf) != cat.src(f))
          add(Violation::Kind::SrcTgtMismatch,
              "right action " + M.sector(m).id + "|" + cat.arrow(f).id + " has wrong endpoints",
              {M.sector(m).id, cat.arrow(f).id});
      }
    }
  if (!report.ok()) return report;
  // (f'f)m = f'(fm) and dually (mg)g' = m(gg').
  for (int f2 = 0; f2 < cat.num_arrows(); ++f2)
    for (int f1 = 0; f1 < cat.num_arrows(); ++f1) {
      if (cat.src(f2) != cat.tgt(f1)) continue;
      int c = cat.compose(f2, f1);
      if (c < 0) continue;
      for (int m = 0; m < M.num_sectors(); ++m) {
        if (M.tgt(m) == cat.src(f1) && M.left(c, m) != M.left(f2, M.left(f1, m)))
          add(Violation::Kind::Associativity,
              "(f'f)m != f'(fm) at " + cat.arrow(f2).id + "," + cat.arrow(f1).id + "," +
                  M.sector(m).id,
              {cat.arrow(f2).id, cat.arrow(f1).id, M.sector(m).id});
        if (M.src(m) == cat.tgt(f2) && M.right(m, c) != M.right(M.right(m, f2), f1))
          add(Violation::Kind::Associativity,
              "(mg)g' != m(gg') at " + M.sector(m).id + "," + cat.arrow(f2).id + "," +
                  cat.arrow(f1).id,
              {M.sector(m).id, cat.arrow(f2).id, cat.arrow(f1).id});
      }
    }
  // (fm)g = f(mg).
  for (int f = 0; f < cat.num_arrows(); ++f)
    for (int m = 0; m < M.num_sectors(); ++m) {
      if (cat.src(f) != M.tgt(m)) continue;
      for (int g = 0; g < cat.num_arrows(); ++g) {
        if (cat.tgt(g) != M.src(m)) continue;
        if (M.right(M.left(f, m), g) != M.left(f, M.right(m, g)))
          add(Violation::Kind::Associativity,
              "(fm)g != f(mg) at " + cat.arrow(f).id + "," + M.sector(m).id + "," +
                  cat.arrow(g).id,
              {cat.arrow(f).id, M.sector(m).id, cat.arrow(g).id});
      }
    }
  return report;
}

std::map<Id, long long> check_module_finite(const Module& M) {
  const FinCategory& cat = M.base();
  std::map<Id, long long> counts;
  for (int a = 0; a < cat.num_objects(); ++a) {
    long long n = 0;
    for (int m : M.sectors_into(a)) n += static_cast<long long>(cat.arrows_into(M.src(m)).size());
    counts[cat.objects()[static_cast<size_t>(a)]] = n;
  }
  return counts;
}

std::optional<ModuleNdWitness> check_module_nondegenerate(const Module& M) {
  std::vector<Id> sources = M.base().objects();
  std::sort(sources.begin(), sources.end());
  for (const Id& b : sources) {
    NdReport report = check_functor_nondegenerate(M.hom_from(b));
    if (!report.ok()) return ModuleNdWitness{b, report};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

int TensorResult::pair_index(int obj, int sector, int elem) const {
  auto& m = pidx_[static_cast<size_t>(obj)];
  auto it = m.find((static_cast<long long>(sector) << 32) | static_cast<unsigned>(elem));
  return it == m.end() ? -1 : it->second;
}

int TensorResult::class_of(int obj, int pair) const {
  return class_rep_[static_cast<size_t>(obj)][static_cast<size_t>(pair)];
}

int TensorResult::num_classes(int obj) const {
  return static_cast<int>(reps_[static_cast<size_t>(obj)].size());
}

std::vector<TensorResult::Pair> TensorResult::class_members(int obj, int cls) const {
  std::vector<Pair> members;
  for (int p = 0; p < num_pairs(obj); ++p)
    if (class_of(obj, p) == cls)
      members.push_back(pairs_[static_cast<size_t>(obj)][static_cast<size_t>(p)]);
  return members;
}

int TensorResult::apply(int arrow, int obj, int cls) const {
  int fe = functor_element_of_class(obj, cls);
  int image = functor_.apply(arrow, fe);
  return class_of_functor_element(functor_.base().tgt(arrow), image);
}

int TensorResult::class_of_functor_element(int obj, int functor_elem) const {
  return functor_elem;  // functor elements are indexed by class rank
}

int TensorResult::functor_element_of_class(int obj, int cls) const { return cls; }

TensorResult tensor(const Module& M, const SetFunctor& X) {
  const FinCategory& cat = M.base();
  TensorResult T;
  int n_obj = cat.num_objects();
  T.pairs_.assign(static_cast<size_t>(n_obj), {});
  T.pidx_.assign(static_cast<size_t>(n_obj), {});
  T.class_rep_.assign(static_cast<size_t>(n_obj), {});
  T.reps_.assign(static_cast<size_t>(n_obj), {});
  T.rep_rank_.assign(static_cast<size_t>(n_obj), {});

  // Deterministic pair order: (sector id, element id) lexicographic.
  for (int a = 0; a < n_obj; ++a) {
    std::vector<TensorResult::Pair> pairs;
    for (int m : M.sectors_into(a))
      for (int x = 0; x < static_cast<int>(X.elements(M.src(m)).size()); ++x)
        pairs.push_back({m, x});
    std::sort(pairs.begin(), pairs.end(), [&](const auto& p, const auto& q) {
      const Id& pm = M.sector(p.sector).id;
      const Id& qm = M.sector(q.sector).id;
      if (pm != qm) return pm < qm;
      return X.elements(M.src(p.sector))[static_cast<size_t>(p.elem)] <
             X.elements(M.src(q.sector))[static_cast<size_t>(q.elem)];
    });
    T.pairs_[static_cast<size_t>(a)] = std::move(pairs);
    for (int p = 0; p < T.num_pairs(a); ++p) {
      const auto& pr = T.pairs_[static_cast<size_t>(a)][static_cast<size_t>(p)];
      T.pidx_[static_cast<size_t>(a)][(static_cast<long long>(pr.sector) << 32) |
                                      static_cast<unsigned>(pr.elem)] = p;
    }
    // Union-find closure of (mg, x) ~ (m, gx).
    UnionFind uf(T.num_pairs(a));
    for (int m : M.sectors_into(a)) {
      int b = M.src(m);
      for (int g : cat.arrows_into(b)) {
        int mg = M.right(m, g);
        if (mg < 0) throw PreconditionError("tensor requires a validated module");
        for (int x = 0; x < static_cast<int>(X.elements(cat.src(g)).size()); ++x) {
          int gx = X.apply(g, x);
          if (gx < 0) throw PreconditionError("tensor requires a validated functor");
          int p = T.pair_index(a, mg, x);
          int q = T.pair_index(a, m, gx);
          uf.unite(p, q);
        }
      }
    }
    T.class_rep_[static_cast<size_t>(a)].resize(static_cast<size_t>(T.num_pairs(a)));
    for (int p = 0; p < T.num_pairs(a); ++p)
      T.class_rep_[static_cast<size_t>(a)][static_cast<size_t>(p)] = uf.find(p);
    for (int p = 0; p < T.num_pairs(a); ++p)
      if (T.class_rep_[static_cast<size_t>(a)][static_cast<size_t>(p)] == p)
        T.reps_[static_cast<size_t>(a)].push_back(p);
    for (int c = 0; c < T.num_classes(a); ++c)
      T.rep_rank_[static_cast<size_t>(a)][T.reps_[static_cast<size_t>(a)][static_cast<size_t>(c)]] = c;
  }

  // Re-index representatives through class ranks so that class_of returns a
  // rank, then build the quotient as a SetFunctor.
  for (int a = 0; a < n_obj; ++a)
    for (auto& rep : T.class_rep_[static_cast<size_t>(a)])
      rep = T.rep_rank_[static_cast<size_t>(a)].at(rep);

  std::map<Id, std::vector<Id>> on_objects;
  auto elem_name = [&](int a, int cls) {
    int rep = T.reps_[static_cast<size_t>(a)][static_cast<size_t>(cls)];
    const auto& pr = T.pairs_[static_cast<size_t>(a)][static_cast<size_t>(rep)];
    return M.sector(pr.sector).id + "⊗" +
           X.elements(M.src(pr.sector))[static_cast<size_t>(pr.elem)];
  };
  for (int a = 0; a < n_obj; ++a) {
    std::vector<Id> names;
    for (int c = 0; c < T.num_classes(a); ++c) names.push_back(elem_name(a, c));
    on_objects[cat.objects()[static_cast<size_t>(a)]] = std::move(names);
  }
  std::map<std::pair<Id, Id>, Id> on_arrows;
  for (int f = 0; f < cat.num_arrows(); ++f) {
    if (cat.is_identity(f)) continue;
    int a = cat.src(f);
    int a2 = cat.tgt(f);
    for (int c = 0; c < T.num_classes(a); ++c) {
      int rep = T.reps_[static_cast<size_t>(a)][static_cast<size_t>(c)];
      const auto& pr = T.pairs_[static_cast<size_t>(a)][static_cast<size_t>(rep)];
      int fm = M.left(f, pr.sector);
      if (fm < 0) throw PreconditionError("tensor requires a validated module");
      int q = T.pair_index(a2, fm, pr.elem);
      int target_cls = T.class_rep_[static_cast<size_t>(a2)][static_cast<size_t>(q)];
      on_arrows[{cat.arrow(f).id, elem_name(a, c)}] = elem_name(a2, target_cls);
    }
  }
  T.functor_ = SetFunctor::make(M.base_ptr(), on_objects, on_arrows);
  return T;
}

PresheafTensor tensor_presheaf(const SetFunctor& Y, const SetFunctor& X) {
  // Y lives on opposite(base(X)); match objects by id.
  const FinCategory& cat = X.base();
  const FinCategory& opcat = Y.base();
  struct P {
    Id y, x;
    int obj;
    int yi, xi;
  };
  std::vector<P> pairs;
  for (int o = 0; o < cat.num_objects(); ++o) {
    const Id& oid = cat.objects()[static_cast<size_t>(o)];
    int oo = opcat.object_index(oid);
    for (int yi = 0; yi < static_cast<int>(Y.elements(oo).size()); ++yi)
      for (int xi = 0; xi < static_cast<int>(X.elements(o).size()); ++xi)
        pairs.push_back({Y.elements(oo)[static_cast<size_t>(yi)],
                         X.elements(o)[static_cast<size_t>(xi)], o, yi, xi});
  }
  std::sort(pairs.begin(), pairs.end(), [](const P& p, const P& q) {
    if (p.y != q.y) return p.y < q.y;
    return p.x < q.x;
  });
  auto index_of = [&](int obj, int yi, int xi) {
    for (int i = 0; i < static_cast<int>(pairs.size()); ++i)
      if (pairs[static_cast<size_t>(i)].obj == obj && pairs[static_cast<size_t>(i)].yi == yi &&
          pairs[static_cast<size_t>(i)].xi == xi)
        return i;
    return -1;
  };
  UnionFind uf(static_cast<int>(pairs.size()));
  // (yg, x) ~ (y, gx) for g: b' → b, y ∈ Y(b), x ∈ X(b').
  for (int g = 0; g < cat.num_arrows(); ++g) {
    int b_prime = cat.src(g);
    int b = cat.tgt(g);
    int op_b = opcat.object_index(cat.objects()[static_cast<size_t>(b)]);
    int op_g = opcat.arrow_index(cat.arrow(g).id);
    for (int yi = 0; yi < static_cast<int>(Y.elements(op_b).size()); ++yi) {
      int yg = Y.apply(op_g, yi);
      if (yg < 0) throw PreconditionError("tensor_presheaf requires a validated presheaf");
      for (int xi = 0; xi < static_cast<int>(X.elements(b_prime).size()); ++xi) {
        int gx = X.apply(g, xi);
        uf.unite(index_of(b_prime, yg, xi), index_of(b, yi, gx));
      }
    }
  }
  std::map<int, std::vector<std::pair<Id, Id>>> groups;
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i)
    groups[uf.find(i)].push_back({pairs[static_cast<size_t>(i)].y, pairs[static_cast<size_t>(i)].x});
  PresheafTensor result;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    result.classes.push_back(std::move(members));
  }
  std::sort(result.classes.begin(), result.classes.end());
  return result;
}

// ---------------------------------------------------------------------------

EquationalSystem product_system(const EquationalSystem& S, const EquationalSystem& T) {
  auto cat = std::make_shared<const FinCategory>(product_category(*S.category, *T.category));
  const Module& M = S.module;
  const Module& N = T.module;
  std::vector<Sector> sectors;
  for (int m = 0; m < M.num_sectors(); ++m)
    for (int n = 0; n < N.num_sectors(); ++n)
      sectors.push_back({pair_id(M.sector(m).id, N.sector(n).id),
                         pair_id(M.sector(m).src, N.sector(n).src),
                         pair_id(M.sector(m).tgt, N.sector(n).tgt)});
  std::map<std::pair<Id, Id>, Id> left, right;
  const FinCategory& A = M.base();
  const FinCategory& B = N.base();
  for (int f = 0; f < A.num_arrows(); ++f)
    for (int g = 0; g < B.num_arrows(); ++g) {
      Id fg = pair_id(A.arrow(f).id, B.arrow(g).id);
      for (int m = 0; m < M.num_sectors(); ++m) {
        if (A.src(f) != M.tgt(m)) continue;
        int fm = M.left(f, m);
        if (fm < 0) continue;
        for (int n = 0; n < N.num_sectors(); ++n) {
          if (B.src(g) != N.tgt(n)) continue;
          int gn = N.left(g, n);
          if (gn < 0) continue;
          left[{fg, pair_id(M.sector(m).id, N.sector(n).id)}] =
              pair_id(M.sector(fm).id, N.sector(gn).id);
        }
      }
      for (int m = 0; m < M.num_sectors(); ++m) {
        if (A.tgt(f) != M.src(m)) continue;
        int mf = M.right(m, f);
        if (mf < 0) continue;
        for (int n = 0; n < N.num_sectors(); ++n) {
          if (B.tgt(g) != N.src(n)) continue;
          int ng = N.right(n, g);
          if (ng < 0) continue;
          right[{pair_id(M.sector(m).id, N.sector(n).id), fg}] =
              pair_id(M.sector(mf).id, N.sector(ng).id);
        }
      }
    }
  Module module = Module::make(cat, std::move(sectors), left, right);
  if (!validate_category(*cat).ok()) throw InputError("product category failed validation");
  if (!validate_module(module).ok()) throw InputError("product module failed validation");
  if (check_module_nondegenerate(module))
    throw InputError("product module failed nondegeneracy");
  EquationalSystem out{cat, std::move(module),
                       SystemMetadata{S.metadata.name + "×" + T.metadata.name, "product",
                                      S.metadata.truncated || T.metadata.truncated}};
  return out;
}

}  // namespace selfsim
