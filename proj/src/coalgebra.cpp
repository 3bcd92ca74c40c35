#include "selfsim/coalgebra.hpp"

#include <algorithm>
#include <functional>

namespace selfsim::coalgebra {

Coalgebra Coalgebra::make(EquationalSystem system, SetFunctor carrier,
                          const std::map<std::pair<Id, Id>, std::pair<Id, Id>>& xi,
                          std::set<std::pair<Id, Id>> boundary) {
  Coalgebra C;
  C.system_ = std::move(system);
  C.carrier_ = std::move(carrier);
  const FinCategory& cat = *C.system_.category;
  const Module& M = C.system_.module;
  C.xi_.assign(static_cast<size_t>(cat.num_objects()), {});
  for (int o = 0; o < cat.num_objects(); ++o)
    C.xi_[static_cast<size_t>(o)].assign(C.carrier_.elements(o).size(), {-1, -1});
  for (const auto& [ax, my] : xi) {
    int o = cat.object_index(ax.first);
    int x = C.carrier_.element_index(o, ax.second);
    if (x < 0) throw InputError("xi entry for unknown element " + ax.second);
    int m = M.sector_index(my.first);
    if (M.tgt(m) != o) throw InputError("xi sector " + my.first + " does not end at " + ax.first);
    int y = C.carrier_.element_index(M.src(m), my.second);
    if (y < 0) throw InputError("xi entry references unknown element " + my.second);
    C.xi_[static_cast<size_t>(o)][static_cast<size_t>(x)] = {m, y};
  }
  for (const auto& [obj, elem] : boundary) {
    int o = cat.object_index(obj);
    int x = C.carrier_.element_index(o, elem);
    if (x < 0) throw InputError("boundary entry for unknown element " + elem);
    C.boundary_.insert({o, x});
  }
  for (int o = 0; o < cat.num_objects(); ++o)
    for (int x = 0; x < static_cast<int>(C.carrier_.elements(o).size()); ++x)
      if (C.xi_[static_cast<size_t>(o)][static_cast<size_t>(x)].first < 0 &&
          !C.boundary_.count({o, x}))
        throw InputError("element " + C.carrier_.elements(o)[static_cast<size_t>(x)] +
                         " has no structure entry");
  C.tensor_ = tensor(M, C.carrier_);
  return C;
}

bool Coalgebra::has_structure(int obj, int elem) const {
  return xi_[static_cast<size_t>(obj)][static_cast<size_t>(elem)].first >= 0;
}

std::pair<int, int> Coalgebra::structure(int obj, int elem) const {
  auto p = xi_[static_cast<size_t>(obj)][static_cast<size_t>(elem)];
  if (p.first < 0) throw PreconditionError("element lies on the truncation boundary");
  return p;
}

std::vector<std::pair<int, int>> Coalgebra::structure_class(int obj, int elem) const {
  auto [m, y] = structure(obj, elem);
  int cls = tensor_.class_of(obj, tensor_.pair_index(obj, m, y));
  std::vector<std::pair<int, int>> out;
  for (const auto& member : tensor_.class_members(obj, cls))
    out.push_back({member.sector, member.elem});
  return out;
}

ValidationReport validate_coalgebra(const Coalgebra& C) {
  ValidationReport report;
  const FinCategory& cat = *C.system().category;
  const Module& M = C.system().module;
  const SetFunctor& X = C.carrier();
  ValidationReport carrier_report = X.validate();
  report.violations = carrier_report.violations;
  NdReport nd = check_functor_nondegenerate(X);
  if (!nd.ok())
    report.violations.push_back(
        {Violation::Kind::Associativity, "carrier is degenerate", {}});
  const TensorResult& T = C.tensor_certificates();
  for (int f = 0; f < cat.num_arrows(); ++f) {
    if (cat.is_identity(f)) continue;
    int a = cat.src(f);
    int a2 = cat.tgt(f);
    for (int x = 0; x < static_cast<int>(X.elements(a).size()); ++x) {
      if (!C.has_structure(a, x)) continue;
      int fx = X.apply(f, x);
      if (!C.has_structure(a2, fx)) continue;
      auto [m, y] = C.structure(a, x);
      int fm = M.left(f, m);
      int lhs = T.class_of(a2, T.pair_index(a2, fm, y));
      auto [m2, y2] = C.structure(a2, fx);
      int rhs = T.class_of(a2, T.pair_index(a2, m2, y2));
      if (lhs != rhs)
        report.violations.push_back(
            {Violation::Kind::Associativity,
             "structure map not natural at arrow " + cat.arrow(f).id + ", element " +
                 X.elements(a)[static_cast<size_t>(x)],
             {cat.arrow(f).id, X.elements(a)[static_cast<size_t>(x)]}});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

// All representative pairs of the ξ-class of (obj, elem).
std::vector<std::pair<int, int>> class_pairs(const Coalgebra& C, int obj, int elem) {
  const TensorResult& T = C.tensor_certificates();
  auto [m, y] = C.structure(obj, elem);
  int cls = T.class_of(obj, T.pair_index(obj, m, y));
  std::vector<std::pair<int, int>> out;
  for (const auto& member : T.class_members(obj, cls)) out.push_back({member.sector, member.elem});
  return out;
}

}  // namespace

std::vector<Resolution> resolutions(const Coalgebra& C, const Id& a, const Id& x, int n,
                                    long long budget) {
  const FinCategory& cat = *C.system().category;
  const Module& M = C.system().module;
  int a0 = cat.object_index(a);
  int x0 = C.carrier().element_index(a0, x);
  if (x0 < 0) throw InputError("unknown element " + x);
  std::vector<Resolution> out;
  Resolution current;
  current.complex.base_object = a0;
  current.elements = {x0};
  std::function<void(int)> dfs = [&](int depth) {
    if (depth == n) {
      out.push_back(current);
      if (static_cast<long long>(out.size()) > budget)
        throw ResourceError("resolution enumeration budget exceeded");
      return;
    }
    int obj = current.complex.object_at(M, depth);
    int elem = current.elements.back();
    if (!C.has_structure(obj, elem)) return;  // truncation boundary
    for (const auto& [m, y] : class_pairs(C, obj, elem)) {
      current.complex.sectors.push_back(m);
      current.elements.push_back(y);
      dfs(depth + 1);
      current.complex.sectors.pop_back();
      current.elements.pop_back();
    }
  };
  dfs(0);
  return out;
}

ResoConnectivity check_reso_connected(const Coalgebra& C, const Id& a, const Id& x, int n,
                                      long long budget) {
  const Module& M = C.system().module;
  const FinCategory& cat = M.base();
  std::vector<Resolution> all = resolutions(C, a, x, n, budget);
  ResoConnectivity result{true, static_cast<int>(all.size()), std::nullopt};
  if (all.empty()) return result;
  // Morphisms of Reso(x): ladders whose arrows also carry elements to
  // elements.
  auto reso_morphism = [&](const Resolution& from, const Resolution& to) {
    std::function<bool(int, int)> dfs = [&](int i, int f_prev) -> bool {
      if (i > n) return true;
      int lhs = M.left(f_prev, from.complex.sectors[static_cast<size_t>(i - 1)]);
      if (lhs < 0) return false;
      int src_obj = from.complex.object_at(M, i);
      int tgt_obj = to.complex.object_at(M, i);
      for (int f : cat.arrows_from(src_obj)) {
        if (cat.tgt(f) != tgt_obj) continue;
        if (M.right(to.complex.sectors[static_cast<size_t>(i - 1)], f) != lhs) continue;
        if (C.carrier().apply(f, from.elements[static_cast<size_t>(i)]) !=
            to.elements[static_cast<size_t>(i)])
          continue;
        if (dfs(i + 1, f)) return true;
      }
      return false;
    };
    return dfs(1, cat.identity_of(from.complex.base_object));
  };
  // Union-find over resolutions by morphism existence in either direction.
  std::vector<int> parent(all.size());
  for (size_t i = 0; i < all.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int v) {
    while (parent[static_cast<size_t>(v)] != v) v = parent[static_cast<size_t>(v)];
    return v;
  };
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j) {
      int ri = find(static_cast<int>(i));
      int rj = find(static_cast<int>(j));
      if (ri == rj) continue;
      if (reso_morphism(all[i], all[j]) || reso_morphism(all[j], all[i]))
        parent[static_cast<size_t>(std::max(ri, rj))] = std::min(ri, rj);
    }
  for (size_t i = 1; i < all.size(); ++i)
    if (find(static_cast<int>(i)) != find(0)) {
      result.ok = false;
      result.disconnected = {all[0], all[i]};
      return result;
    }
  return result;
}

TerminalImage terminal_map(const Coalgebra& C, const Id& a, const Id& x, int n,
                           const complexes::ComponentsTower& tower, long long budget) {
  const Module& M = C.system().module;
  std::vector<Resolution> all = resolutions(C, a, x, n, budget);
  if (all.empty())
    throw PreconditionError("no resolution at requested depth (truncated carrier?)");
  const ComponentPartition& part = tower.levels[static_cast<size_t>(n)];
  int block = part.block_of.at(all.front().complex.name(M));
  for (const Resolution& r : all)
    if (part.block_of.at(r.complex.name(M)) != block)
      throw InputError("resolutions land in different blocks; carrier is degenerate");
  return TerminalImage{n, block, part.representative(block), all.front().complex};
}

TerminalImage terminal_map(const Coalgebra& C, const Id& a, const Id& x, int n,
                           long long budget) {
  complexes::ComponentsTower tower = complexes::truncated_components(C.system(), a, n, budget);
  return terminal_map(C, a, x, n, tower, budget);
}

// ---------------------------------------------------------------------------

FixedPointData check_fixed_point(const Coalgebra& C) {
  const FinCategory& cat = *C.system().category;
  const Module& M = C.system().module;
  const SetFunctor& X = C.carrier();
  const TensorResult& T = C.tensor_certificates();
  FixedPointData out{true, true, "", {}};
  // Occupancy: live objects (greatest fixpoint on the sector graph) must
  // have nonempty carrier.
  std::vector<bool> live(static_cast<size_t>(cat.num_objects()), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < cat.num_objects(); ++a) {
      if (!live[static_cast<size_t>(a)]) continue;
      bool ok = false;
      for (int m : M.sectors_into(a))
        if (live[static_cast<size_t>(M.src(m))]) {
          ok = true;
          break;
        }
      if (!ok) {
        live[static_cast<size_t>(a)] = false;
        changed = true;
      }
    }
  }
  for (int a = 0; a < cat.num_objects(); ++a)
    if (live[static_cast<size_t>(a)] && X.elements(a).empty()) out.occupied = false;
  // Bijectivity per object.
  for (int a = 0; a < cat.num_objects(); ++a) {
    int n_elems = static_cast<int>(X.elements(a).size());
    if (n_elems != T.num_classes(a)) {
      out.is_fixed_point = false;
      out.failure = "structure map not bijective at " + cat.objects()[static_cast<size_t>(a)];
      return out;
    }
    std::vector<bool> hit(static_cast<size_t>(T.num_classes(a)), false);
    for (int x = 0; x < n_elems; ++x) {
      if (!C.has_structure(a, x)) {
        out.is_fixed_point = false;
        out.failure = "boundary element in fixed-point check";
        return out;
      }
      auto [m, y] = C.structure(a, x);
      int cls = T.class_of(a, T.pair_index(a, m, y));
      if (hit[static_cast<size_t>(cls)]) {
        out.is_fixed_point = false;
        out.failure = "structure map not injective at " + cat.objects()[static_cast<size_t>(a)];
        return out;
      }
      hit[static_cast<size_t>(cls)] = true;
    }
  }
  // ψ tables: ψ_m(y) = the unique x with ξ(x) ~ m⊗y.
  out.psi.assign(static_cast<size_t>(M.num_sectors()), {});
  for (int m = 0; m < M.num_sectors(); ++m) {
    int a = M.tgt(m);
    int b = M.src(m);
    out.psi[static_cast<size_t>(m)].assign(X.elements(b).size(), -1);
    for (int y = 0; y < static_cast<int>(X.elements(b).size()); ++y) {
      int cls = T.class_of(a, T.pair_index(a, m, y));
      for (int x = 0; x < static_cast<int>(X.elements(a).size()); ++x) {
        auto [mx, yx] = C.structure(a, x);
        if (T.class_of(a, T.pair_index(a, mx, yx)) == cls) {
          out.psi[static_cast<size_t>(m)][static_cast<size_t>(y)] = x;
          break;
        }
      }
    }
  }
  // ψ-naturality: ψ_{fmg} = X(f) ∘ ψ_m ∘ X(g).
  for (int m = 0; m < M.num_sectors(); ++m)
    for (int f = 0; f < cat.num_arrows(); ++f) {
      if (cat.src(f) != M.tgt(m)) continue;
      for (int g = 0; g < cat.num_arrows(); ++g) {
        if (cat.tgt(g) != M.src(m)) continue;
        int fmg = M.left(f, M.right(m, g));
        for (int y = 0; y < static_cast<int>(X.elements(cat.src(g)).size()); ++y) {
          int lhs = out.psi[static_cast<size_t>(fmg)][static_cast<size_t>(y)];
          int rhs = X.apply(f, out.psi[static_cast<size_t>(m)][static_cast<size_t>(X.apply(g, y))]);
          if (lhs != rhs) {
            out.is_fixed_point = false;
            out.failure = "psi naturality fails at sector " + M.sector(m).id;
            return out;
          }
        }
      }
    }
  return out;
}

// ---------------------------------------------------------------------------

Id representable_element_id(int level, const Id& arrow) {
  return std::to_string(level) + ":" + arrow;
}

RepresentableCoalgebra representable_coalgebra(const EquationalSystem& S,
                                               const complexes::LassoComplex& L, int levels) {
  const FinCategory& cat = *S.category;
  const Module& M = S.module;
  complexes::validate_lasso(M, L);
  complexes::TruncatedComplex chain = complexes::unroll(M, L, levels);
  // Carrier: Σ_{k<=levels} A(a_k, −), elements "k:arrow".
  std::map<Id, std::vector<Id>> on_objects;
  for (const Id& o : cat.objects()) on_objects[o] = {};
  std::map<std::pair<Id, Id>, Id> on_arrows;
  for (int k = 0; k <= levels; ++k) {
    int ak = chain.object_at(M, k);
    for (int h : cat.arrows_from(ak)) {
      Id elem = representable_element_id(k, cat.arrow(h).id);
      on_objects[cat.objects()[static_cast<size_t>(cat.tgt(h))]].push_back(elem);
      for (int g = 0; g < cat.num_arrows(); ++g) {
        if (cat.is_identity(g) || cat.src(g) != cat.tgt(h)) continue;
        int gh = cat.compose(g, h);
        if (gh < 0) throw InputError("base category has a missing composite");
        on_arrows[{cat.arrow(g).id, elem}] = representable_element_id(k, cat.arrow(gh).id);
      }
    }
  }
  for (auto& [o, xs] : on_objects) std::sort(xs.begin(), xs.end());
  SetFunctor carrier = SetFunctor::make(S.category, on_objects, on_arrows);
  // Structure: (k, h) ↦ (h·m_{k+1}) ⊗ (k+1, id), for k < levels.
  std::map<std::pair<Id, Id>, std::pair<Id, Id>> xi;
  std::set<std::pair<Id, Id>> boundary;
  for (int k = 0; k <= levels; ++k) {
    int ak = chain.object_at(M, k);
    for (int h : cat.arrows_from(ak)) {
      Id elem = representable_element_id(k, cat.arrow(h).id);
      Id obj = cat.objects()[static_cast<size_t>(cat.tgt(h))];
      if (k == levels) {
        boundary.insert({obj, elem});
        continue;
      }
      int m_next = chain.sectors[static_cast<size_t>(k)];
      int hm = M.left(h, m_next);
      if (hm < 0) throw InputError("module has a missing left action entry");
      int a_next = chain.object_at(M, k + 1);
      Id next = representable_element_id(k + 1, cat.arrow(cat.identity_of(a_next)).id);
      xi[{obj, elem}] = {M.sector(hm).id, next};
    }
  }
  RepresentableCoalgebra out{Coalgebra::make(S, std::move(carrier), xi, boundary), L, levels};
  return out;
}

complexes::TruncatedComplex RepresentableCoalgebra::kappa(int level, const Id& arrow,
                                                          int depth) const {
  const EquationalSystem& S = coalgebra.system();
  const FinCategory& cat = *S.category;
  const Module& M = S.module;
  int h = cat.arrow_index(arrow);
  complexes::TruncatedComplex out;
  out.base_object = cat.tgt(h);
  for (int i = 1; i <= depth; ++i) {
    int m = complexes::lasso_sector_at(M, lasso, level + i);
    if (i == 1) {
      int hm = M.left(h, m);
      if (hm < 0) throw InputError("module has a missing left action entry");
      out.sectors.push_back(hm);
    } else {
      out.sectors.push_back(m);
    }
  }
  return out;
}

}  // namespace selfsim::coalgebra
