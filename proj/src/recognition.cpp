#include "selfsim/recognition.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace selfsim::geometry {

Rational rational_from_string(const std::string& text) {
  try {
    mpq_class q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InputError("not a rational: " + text);
  }
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

static double spectral_norm_impl(const Eigen::MatrixXd& A, double tol) {
  if (A.rows() == 0 || A.cols() == 0) return 0.0;
  Eigen::MatrixXd G = A.transpose() * A;
  int n = static_cast<int>(G.rows());
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd w = G * v;
    double norm = w.norm();
    if (norm == 0.0) return 0.0;
    w /= norm;
    double next = w.dot(G * w);
    if (std::abs(next - lambda) < tol * std::max(1.0, std::abs(next)) && it > 2) {
      lambda = next;
      break;
    }
    lambda = next;
    v = w;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

double spectral_norm(const Mat<double>& A, double tol) { return spectral_norm_impl(A, tol); }

double spectral_norm(const Mat<Rational>& A, double tol) {
  Eigen::MatrixXd Ad(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) Ad(i, j) = A(i, j).get_d();
  return spectral_norm_impl(Ad, tol);
}

}  // namespace selfsim::geometry

namespace selfsim::recognition {

namespace {

template <class S>
Eigen::VectorXd to_double_vec(const geometry::Vec<S>& v) {
  Eigen::VectorXd out(v.size());
  for (int i = 0; i < v.size(); ++i) out(i) = geometry::to_double(v(i));
  return out;
}

template <class S>
const Polytope<S>& domain_of(const GeometricRealization<S>& R, const FinCategory& cat, int obj) {
  auto it = R.domains.find(cat.objects()[static_cast<size_t>(obj)]);
  if (it == R.domains.end())
    throw InputError("realization has no domain for object " +
                     cat.objects()[static_cast<size_t>(obj)]);
  return it->second;
}

template <class S>
const SectorMap<S>& sector_map_of(const GeometricRealization<S>& R, const Module& M, int m) {
  auto it = R.sector_maps.find(M.sector(m).id);
  if (it == R.sector_maps.end())
    throw InputError("realization has no map for sector " + M.sector(m).id);
  return it->second;
}

// Arrow map; identities are implicit identity maps.
template <class S>
AffineMap<S> arrow_map_of(const GeometricRealization<S>& R, const FinCategory& cat, int f,
                          int dim) {
  if (cat.is_identity(f)) {
    AffineMap<S> id;
    id.linear = geometry::Mat<S>::Identity(dim, dim);
    id.offset = geometry::Vec<S>::Zero(dim);
    return id;
  }
  auto it = R.arrow_maps.find(cat.arrow(f).id);
  if (it == R.arrow_maps.end())
    throw InputError("realization has no map for arrow " + cat.arrow(f).id);
  return it->second;
}

// Evaluate a sector map on a point.
template <class S>
geometry::Vec<S> eval_sector(const SectorMap<S>& map, const geometry::Vec<S>& p);

template <>
geometry::Vec<Rational> eval_sector(const SectorMap<Rational>& map,
                                    const geometry::Vec<Rational>& p) {
  if (!std::holds_alternative<AffineMap<Rational>>(map))
    throw PreconditionError("parametric sector maps require float mode");
  return std::get<AffineMap<Rational>>(map).apply(p);
}

template <>
geometry::Vec<double> eval_sector(const SectorMap<double>& map, const geometry::Vec<double>& p) {
  if (std::holds_alternative<AffineMap<double>>(map))
    return std::get<AffineMap<double>>(map).apply(p);
  return std::get<ParametricMap>(map).fn(p);
}

// Deterministic sample points of a polytope: vertices plus midpoints of
// vertex pairs plus the barycenter.
template <class S>
std::vector<geometry::Vec<S>> sample_points(const Polytope<S>& P) {
  std::vector<geometry::Vec<S>> out;
  int n = P.num_vertices();
  for (int i = 0; i < n; ++i) out.push_back(P.vertices.row(i).transpose());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out.push_back(((P.vertices.row(i) + P.vertices.row(j)) / S(2)).transpose());
  if (n > 0) {
    geometry::Vec<S> bary = geometry::Vec<S>::Zero(P.dim());
    for (int i = 0; i < n; ++i) bary += P.vertices.row(i).transpose();
    bary /= S(n);
    out.push_back(bary);
  }
  return out;
}

std::vector<bool> live_objects_of(const EquationalSystem& S_) {
  const FinCategory& cat = *S_.category;
  const Module& M = S_.module;
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
  return live;
}

}  // namespace

template <class S>
RealizationReport check_realization(const EquationalSystem& S_,
                                    const GeometricRealization<S>& R) {
  RealizationReport report;
  const FinCategory& cat = *S_.category;
  const Module& M = S_.module;
  const S tol = R.tolerance;
  // Dimension bookkeeping and containment of sector images.
  for (int m = 0; m < M.num_sectors(); ++m) {
    const Polytope<S>& src = domain_of(R, cat, M.src(m));
    const Polytope<S>& tgt = domain_of(R, cat, M.tgt(m));
    const SectorMap<S>& map = sector_map_of(R, M, m);
    if (std::holds_alternative<AffineMap<S>>(map)) {
      const AffineMap<S>& aff = std::get<AffineMap<S>>(map);
      if (aff.linear.cols() != src.dim() || aff.linear.rows() != tgt.dim()) {
        report.issues.push_back({"dimension", "sector " + M.sector(m).id});
        continue;
      }
      Polytope<S> image = geometry::apply(aff, src);
      if (!geometry::contains(tgt, image, tol))
        report.issues.push_back(
            {"containment", "sector " + M.sector(m).id + " leaves its target polytope"});
    } else {
      // Sampled containment for parametric maps.
      if constexpr (std::is_same_v<S, double>) {
        for (const auto& p : sample_points(src)) {
          geometry::Vec<double> q = eval_sector<double>(map, p);
          if (!geometry::contains(tgt, q, tol + 1e-9)) {
            report.issues.push_back(
                {"containment", "sector " + M.sector(m).id + " sample leaves target"});
            break;
          }
        }
      } else {
        report.issues.push_back({"dimension", "parametric sector in rational mode"});
      }
    }
  }
  // ψ-naturality ψ_{fmg} = (Jf) ∘ ψ_m ∘ (Jg) on sampled domain points
  // (vertices and midpoints; exact for affine maps since they agree on a
  // spanning set iff they agree on the hull).
  for (int m = 0; m < M.num_sectors(); ++m)
    for (int f = 0; f < cat.num_arrows(); ++f) {
      if (cat.src(f) != M.tgt(m)) continue;
      for (int g = 0; g < cat.num_arrows(); ++g) {
        if (cat.tgt(g) != M.src(m)) continue;
        int fmg = M.left(f, M.right(m, g));
        if (fmg < 0) {
          report.issues.push_back({"naturality", "module action missing"});
          continue;
        }
        const Polytope<S>& dom = domain_of(R, cat, cat.src(g));
        const SectorMap<S>& psi_m = sector_map_of(R, M, m);
        const SectorMap<S>& psi_fmg = sector_map_of(R, M, fmg);
        AffineMap<S> jf = arrow_map_of(R, cat, f, domain_of(R, cat, M.tgt(m)).dim());
        AffineMap<S> jg = arrow_map_of(R, cat, g, dom.dim());
        for (const auto& p : sample_points(dom)) {
          geometry::Vec<S> lhs = eval_sector<S>(psi_fmg, p);
          geometry::Vec<S> rhs = jf.apply(eval_sector<S>(psi_m, jg.apply(p)));
          bool equal = true;
          for (int i = 0; i < lhs.size(); ++i) {
            S diff = lhs(i) - rhs(i);
            if (diff > tol || diff < -tol) equal = false;
          }
          if (!equal) {
            report.issues.push_back({"naturality", "psi_{fmg} != Jf∘psi_m∘Jg at f=" +
                                                       cat.arrow(f).id + " m=" + M.sector(m).id +
                                                       " g=" + cat.arrow(g).id});
            break;
          }
        }
      }
    }
  // Occupancy: live objects need nonempty domains.
  std::vector<bool> live = live_objects_of(S_);
  for (int a = 0; a < cat.num_objects(); ++a)
    if (live[static_cast<size_t>(a)] && domain_of(R, cat, a).num_vertices() == 0)
      report.issues.push_back(
          {"occupancy", "object " + cat.objects()[static_cast<size_t>(a)] + " has empty domain"});
  return report;
}

double ContractionReport::max_factor() const {
  double best = 0.0;
  for (const auto& [id, f] : factor) best = std::max(best, f);
  return best;
}

template <class S>
ContractionReport contraction_factors(const EquationalSystem& S_,
                                      const GeometricRealization<S>& R) {
  ContractionReport report;
  const Module& M = S_.module;
  for (int m = 0; m < M.num_sectors(); ++m) {
    const SectorMap<S>& map = sector_map_of(R, M, m);
    if (std::holds_alternative<AffineMap<S>>(map)) {
      report.factor[M.sector(m).id] =
          geometry::spectral_norm(std::get<AffineMap<S>>(map).linear, 1e-12);
    } else if constexpr (std::is_same_v<S, double>) {
      const ParametricMap& pm = std::get<ParametricMap>(map);
      report.factor[M.sector(m).id] = pm.lipschitz;
      const Polytope<S>& dom = domain_of(R, *S_.category, M.src(m));
      auto samples = sample_points(dom);
      for (size_t i = 0; i < samples.size(); ++i)
        for (size_t j = i + 1; j < samples.size(); ++j) {
          double dist = (samples[i] - samples[j]).norm();
          if (dist < 1e-12) continue;
          double image_dist = (pm.fn(samples[i]) - pm.fn(samples[j])).norm();
          if (image_dist > pm.lipschitz * dist + 1e-9) {
            report.audit_failures.push_back(
                {"lipschitz", "sector " + M.sector(m).id + " exceeds declared constant"});
            i = samples.size();
            break;
          }
        }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

// Enumerate depth-n complexes at `a` and their cells. Affine-only.
template <class S>
void cells_at_depth(const EquationalSystem& S_, const GeometricRealization<S>& R, const Id& a,
                    int depth, long long budget, std::vector<Cell<S>>& out) {
  const Module& M = S_.module;
  const FinCategory& cat = *S_.category;
  std::vector<complexes::TruncatedComplex> chains =
      complexes::enumerate_complexes(S_, a, depth, budget);
  std::sort(chains.begin(), chains.end(),
            [&](const complexes::TruncatedComplex& x, const complexes::TruncatedComplex& y) {
              return x.name(M) < y.name(M);
            });
  for (const auto& chain : chains) {
    // Compose ψ_{m_1} ∘ ... ∘ ψ_{m_n} applied to the deepest domain.
    Polytope<S> cell = domain_of(R, cat, chain.object_at(M, depth));
    for (int i = depth; i >= 1; --i) {
      const SectorMap<S>& map = sector_map_of(R, M, chain.sectors[static_cast<size_t>(i - 1)]);
      if (!std::holds_alternative<AffineMap<S>>(map))
        throw PreconditionError("cell enumeration requires an all-affine realization");
      cell = geometry::apply(std::get<AffineMap<S>>(map), cell);
    }
    Cell<S> c;
    for (int m : chain.sectors) c.address.push_back(M.sector(m).id);
    c.polytope = std::move(cell);
    out.push_back(std::move(c));
  }
}

}  // namespace

template <class S>
CellTree<S> cell_tree(const EquationalSystem& S_, const GeometricRealization<S>& R, const Id& a,
                      int depth, long long budget) {
  CellTree<S> tree;
  for (int n = 0; n <= depth; ++n) {
    std::vector<Cell<S>> cells;
    cells_at_depth(S_, R, a, n, budget, cells);
    tree.depths.push_back(std::move(cells));
  }
  return tree;
}

template <class S>
std::optional<std::string> check_cell_nesting(const CellTree<S>& tree,
                                              const GeometricRealization<S>& R) {
  for (size_t n = 0; n + 1 < tree.depths.size(); ++n) {
    // Parent of (m_1 ... m_{k+1}) is (m_1 ... m_k).
    std::map<std::vector<Id>, const Polytope<S>*> parents;
    for (const auto& cell : tree.depths[n]) parents[cell.address] = &cell.polytope;
    for (const auto& cell : tree.depths[n + 1]) {
      std::vector<Id> parent_addr(cell.address.begin(), cell.address.end() - 1);
      auto it = parents.find(parent_addr);
      if (it == parents.end()) return "missing parent cell";
      if (!geometry::contains(*it->second, cell.polytope, R.tolerance)) {
        std::string addr;
        for (const Id& m : cell.address) addr += (addr.empty() ? "" : ".") + m;
        return "cell " + addr + " not inside its parent";
      }
    }
  }
  return std::nullopt;
}

template <class S>
CrudeOutcome crude_verify(const EquationalSystem& S_, const GeometricRealization<S>& R,
                          int audit_depth, double eps) {
  CrudeOutcome out{true, 0.0, {}};
  RealizationReport realization = check_realization(S_, R);
  for (const auto& issue : realization.issues) out.failures.push_back(issue);
  ContractionReport contraction = contraction_factors(S_, R);
  for (const auto& issue : contraction.audit_failures) out.failures.push_back(issue);
  out.lambda = contraction.max_factor();
  if (out.lambda >= 1.0 - eps)
    out.failures.push_back({"contraction", "max factor " + std::to_string(out.lambda)});
  const FinCategory& cat = *S_.category;
  const Module& M = S_.module;
  std::vector<bool> live = live_objects_of(S_);
  for (int a = 0; a < cat.num_objects(); ++a) {
    if (!live[static_cast<size_t>(a)]) continue;
    const Polytope<S>& dom = domain_of(R, cat, a);
    if (dom.num_vertices() == 0) {
      out.failures.push_back({"occupancy", cat.objects()[static_cast<size_t>(a)]});
      continue;
    }
    // Domain vertices must be covered by the depth-1 decomposition
    // ∪_m ψ_m(domain(src m)); only affine sectors contribute polytopes.
    for (int v = 0; v < dom.num_vertices(); ++v) {
      geometry::Vec<S> p = dom.vertices.row(v).transpose();
      bool covered = false;
      for (int m : M.sectors_into(a)) {
        const SectorMap<S>& map = sector_map_of(R, M, m);
        if (std::holds_alternative<AffineMap<S>>(map)) {
          Polytope<S> image =
              geometry::apply(std::get<AffineMap<S>>(map), domain_of(R, cat, M.src(m)));
          if (geometry::contains(image, p, R.tolerance)) {
            covered = true;
            break;
          }
        } else if constexpr (std::is_same_v<S, double>) {
          // Sampled images for parametric maps; 1-D domains get a dense grid.
          const Polytope<S>& src = domain_of(R, cat, M.src(m));
          std::vector<geometry::Vec<S>> probes = sample_points(src);
          if (src.dim() == 1 && src.num_vertices() > 0) {
            double lo = src.vertices.col(0).minCoeff();
            double hi = src.vertices.col(0).maxCoeff();
            for (int k = 0; k <= 256; ++k)
              probes.push_back(geometry::Vec<S>::Constant(1, lo + (hi - lo) * k / 256.0));
          }
          for (const auto& q : probes)
            if ((eval_sector<S>(map, q) - p).norm() <= eps * 10 + 1e-4) {
              covered = true;
              break;
            }
          if (covered) break;
        }
      }
      if (!covered) {
        out.failures.push_back(
            {"coverage", "vertex of " + cat.objects()[static_cast<size_t>(a)] +
                             " not covered by the depth-1 cells"});
        break;
      }
    }
  }
  // Cell-tree nesting spot check (affine-only realizations).
  if (R.all_affine()) {
    for (int a = 0; a < cat.num_objects(); ++a) {
      if (!live[static_cast<size_t>(a)]) continue;
      CellTree<S> tree = cell_tree(S_, R, cat.objects()[static_cast<size_t>(a)],
                                   std::min(audit_depth, 3), 200000);
      if (auto bad = check_cell_nesting(tree, R))
        out.failures.push_back({"nesting", *bad});
    }
  }
  out.certified = out.failures.empty() && out.lambda < 1.0;
  return out;
}

template <class S>
DecayReport<S> diameter_decay(const EquationalSystem& S_, const GeometricRealization<S>& R,
                              const Id& a, int N, long long budget) {
  DecayReport<S> report;
  report.inf = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= N; ++n) {
    std::vector<Cell<S>> cells;
    cells_at_depth(S_, R, a, n, budget, cells);
    S sup_sq(0);
    for (const auto& cell : cells) {
      S d2 = geometry::squared_diameter(cell.polytope);
      if (d2 > sup_sq) sup_sq = d2;
    }
    report.sup_sq.push_back(sup_sq);
    double sup = std::sqrt(geometry::to_double(sup_sq));
    report.sup_diameter.push_back(sup);
    report.inf = std::min(report.inf, sup);
  }
  return report;
}

// ---------------------------------------------------------------------------

template <class S>
Approximants<S> approximant_sets(const EquationalSystem& S_, const GeometricRealization<S>& R,
                                 const coalgebra::Coalgebra& C, const Id& a, const Id& x, int N) {
  const FinCategory& cat = *S_.category;
  const Module& M = S_.module;
  Approximants<S> out;
  // K_n per (object, element) pair, built level by level.
  std::map<std::pair<int, int>, Polytope<S>> K;
  for (int o = 0; o < cat.num_objects(); ++o)
    for (int e = 0; e < static_cast<int>(C.carrier().elements(o).size()); ++e)
      K[{o, e}] = domain_of(R, cat, o);
  int a0 = cat.object_index(a);
  int x0 = C.carrier().element_index(a0, x);
  if (x0 < 0) throw InputError("unknown element " + x);
  out.sets.push_back(K.at({a0, x0}));
  auto apply_sector = [&](int m, const Polytope<S>& P) {
    const SectorMap<S>& map = sector_map_of(R, M, m);
    if (!std::holds_alternative<AffineMap<S>>(map))
      throw PreconditionError("approximant sets require an all-affine realization");
    return geometry::apply(std::get<AffineMap<S>>(map), P);
  };
  for (int n = 1; n <= N; ++n) {
    std::map<std::pair<int, int>, Polytope<S>> next;
    for (const auto& [key, unused] : K) {
      auto [o, e] = key;
      if (!C.has_structure(o, e)) {
        next[key] = K.at(key);
        continue;
      }
      std::vector<Polytope<S>> pieces;
      for (const auto& [m, y] : C.structure_class(o, e))
        pieces.push_back(apply_sector(m, K.at({M.src(m), y})));
      // Intersect: exact when one piece contains another or in dimension <= 1.
      Polytope<S> acc = pieces.front();
      for (size_t i = 1; i < pieces.size(); ++i) {
        const Polytope<S>& p = pieces[i];
        if (geometry::contains(acc, p, R.tolerance)) {
          acc = p;
        } else if (geometry::contains(p, acc, R.tolerance)) {
          // keep acc
        } else if (acc.dim() == 1) {
          // Interval intersection.
          S lo1 = acc.vertices.col(0).minCoeff(), hi1 = acc.vertices.col(0).maxCoeff();
          S lo2 = p.vertices.col(0).minCoeff(), hi2 = p.vertices.col(0).maxCoeff();
          S lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
          if (lo > hi) {
            acc.vertices.resize(0, 1);
          } else {
            acc.vertices.resize(2, 1);
            acc.vertices(0, 0) = lo;
            acc.vertices(1, 0) = hi;
          }
        } else {
          throw PreconditionError(
              "approximant intersection beyond nested/interval cases is unsupported");
        }
      }
      if (acc.num_vertices() == 0 && out.empty_at < 0) out.empty_at = n;
      next[key] = std::move(acc);
    }
    K = std::move(next);
    out.sets.push_back(K.at({a0, x0}));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

template <class S>
std::vector<Cell<S>> render_cells(const EquationalSystem& S_, const GeometricRealization<S>& R,
                                  const Id& a, int depth, bool top_only, long long budget) {
  const FinCategory& cat = *S_.category;
  std::vector<Cell<S>> cells;
  cells_at_depth(S_, R, a, depth, budget, cells);
  if (!top_only) return cells;
  int want = domain_of(R, cat, cat.object_index(a)).dim();
  std::vector<Cell<S>> out;
  for (auto& cell : cells)
    if (geometry::affine_rank(cell.polytope, R.tolerance) == want) out.push_back(std::move(cell));
  return out;
}

}  // namespace

template <class S>
std::string render_csv(const EquationalSystem& S_, const GeometricRealization<S>& R, const Id& a,
                       int depth, bool top_dimensional_only, long long budget) {
  std::ostringstream csv;
  csv << "depth,address,vertices\n";
  for (const auto& cell : render_cells(S_, R, a, depth, top_dimensional_only, budget)) {
    csv << depth << ",";
    for (size_t i = 0; i < cell.address.size(); ++i) csv << (i ? "." : "") << cell.address[i];
    for (int v = 0; v < cell.polytope.num_vertices(); ++v)
      for (int d = 0; d < cell.polytope.dim(); ++d) {
        if constexpr (std::is_same_v<S, Rational>)
          csv << "," << geometry::rational_to_string(cell.polytope.vertices(v, d));
        else
          csv << "," << cell.polytope.vertices(v, d);
      }
    csv << "\n";
  }
  return csv.str();
}

template <class S>
std::string render_svg(const EquationalSystem& S_, const GeometricRealization<S>& R, const Id& a,
                       int depth, long long budget) {
  const FinCategory& cat = *S_.category;
  if (domain_of(R, cat, cat.object_index(a)).dim() != 2)
    throw PreconditionError("SVG rendering is 2-D only; use CSV");
  std::vector<Cell<S>> cells = render_cells(S_, R, a, depth, true, budget);
  double min_x = 0, min_y = 0, max_x = 1, max_y = 1;
  bool first = true;
  for (const auto& cell : cells)
    for (int v = 0; v < cell.polytope.num_vertices(); ++v) {
      double x = geometry::to_double(cell.polytope.vertices(v, 0));
      double y = geometry::to_double(cell.polytope.vertices(v, 1));
      if (first || x < min_x) min_x = x;
      if (first || y < min_y) min_y = y;
      if (first || x > max_x) max_x = x;
      if (first || y > max_y) max_y = y;
      first = false;
    }
  double scale = 600.0 / std::max(max_x - min_x, max_y - min_y);
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
         "viewBox=\"0 0 640 640\">\n";
  int hue = 0;
  for (const auto& cell : cells) {
    svg << "<polygon points=\"";
    for (int v = 0; v < cell.polytope.num_vertices(); ++v) {
      double x = 20 + scale * (geometry::to_double(cell.polytope.vertices(v, 0)) - min_x);
      double y = 620 - scale * (geometry::to_double(cell.polytope.vertices(v, 1)) - min_y);
      svg << x << "," << y << " ";
    }
    svg << "\" fill=\"hsl(" << (hue % 360) << ",70%,60%)\" stroke=\"black\" "
        << "stroke-width=\"0.5\"/>\n";
    hue += 47;
  }
  svg << "</svg>\n";
  return svg.str();
}

// Explicit instantiations.
template RealizationReport check_realization<Rational>(const EquationalSystem&,
                                                       const GeometricRealization<Rational>&);
template RealizationReport check_realization<double>(const EquationalSystem&,
                                                     const GeometricRealization<double>&);
template ContractionReport contraction_factors<Rational>(const EquationalSystem&,
                                                         const GeometricRealization<Rational>&);
template ContractionReport contraction_factors<double>(const EquationalSystem&,
                                                       const GeometricRealization<double>&);
template CrudeOutcome crude_verify<Rational>(const EquationalSystem&,
                                             const GeometricRealization<Rational>&, int, double);
template CrudeOutcome crude_verify<double>(const EquationalSystem&,
                                           const GeometricRealization<double>&, int, double);
template CellTree<Rational> cell_tree<Rational>(const EquationalSystem&,
                                                const GeometricRealization<Rational>&, const Id&,
                                                int, long long);
template CellTree<double> cell_tree<double>(const EquationalSystem&,
                                            const GeometricRealization<double>&, const Id&, int,
                                            long long);
template std::optional<std::string> check_cell_nesting<Rational>(
    const CellTree<Rational>&, const GeometricRealization<Rational>&);
template std::optional<std::string> check_cell_nesting<double>(
    const CellTree<double>&, const GeometricRealization<double>&);
template DecayReport<Rational> diameter_decay<Rational>(const EquationalSystem&,
                                                        const GeometricRealization<Rational>&,
                                                        const Id&, int, long long);
template DecayReport<double> diameter_decay<double>(const EquationalSystem&,
                                                    const GeometricRealization<double>&, const Id&,
                                                    int, long long);
template Approximants<Rational> approximant_sets<Rational>(const EquationalSystem&,
                                                           const GeometricRealization<Rational>&,
                                                           const coalgebra::Coalgebra&, const Id&,
                                                           const Id&, int);
template Approximants<double> approximant_sets<double>(const EquationalSystem&,
                                                       const GeometricRealization<double>&,
                                                       const coalgebra::Coalgebra&, const Id&,
                                                       const Id&, int);
template std::string render_csv<Rational>(const EquationalSystem&,
                                          const GeometricRealization<Rational>&, const Id&, int,
                                          bool, long long);
template std::string render_csv<double>(const EquationalSystem&,
                                        const GeometricRealization<double>&, const Id&, int, bool,
                                        long long);
template std::string render_svg<Rational>(const EquationalSystem&,
                                          const GeometricRealization<Rational>&, const Id&, int,
                                          long long);
template std::string render_svg<double>(const EquationalSystem&,
                                        const GeometricRealization<double>&, const Id&, int,
                                        long long);

}  // namespace selfsim::recognition
