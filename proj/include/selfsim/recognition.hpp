#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "selfsim/coalgebra.hpp"
#include "selfsim/geometry.hpp"

namespace selfsim::recognition {

using geometry::AffineMap;
using geometry::Polytope;
using geometry::Rational;

// Non-affine sector map with a user-declared Lipschitz constant; audited by
// sampling. Only available in float mode.
struct ParametricMap {
  double lipschitz;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> fn;
};

template <class S>
using SectorMap = std::variant<AffineMap<S>, ParametricMap>;

template <class S>
struct GeometricRealization {
  std::map<Id, Polytope<S>> domains;      // per object
  std::map<Id, SectorMap<S>> sector_maps; // per sector
  std::map<Id, AffineMap<S>> arrow_maps;  // per non-identity arrow
  S tolerance;                            // 0 in rational mode

  bool all_affine() const {
    for (const auto& [id, m] : sector_maps)
      if (!std::holds_alternative<AffineMap<S>>(m)) return false;
    return true;
  }
};

using RealizationVariant =
    std::variant<GeometricRealization<Rational>, GeometricRealization<double>>;

struct RealizationIssue {
  std::string kind;  // "naturality" | "containment" | "occupancy" | "dimension" | "lipschitz"
  std::string detail;
};

struct RealizationReport {
  std::vector<RealizationIssue> issues;
  bool ok() const { return issues.empty(); }
};

// ψ-naturality on all domain vertices, containment of sector images in their
// target polytopes, and occupancy.
template <class S>
RealizationReport check_realization(const EquationalSystem& S_, const GeometricRealization<S>& R);

struct ContractionReport {
  std::map<Id, double> factor;  // per sector
  std::vector<RealizationIssue> audit_failures;
  double max_factor() const;
};

// Affine sectors: spectral norm of the linear part. Parametric sectors: the
// declared constant, cross-audited on sampled point pairs.
template <class S>
ContractionReport contraction_factors(const EquationalSystem& S_,
                                      const GeometricRealization<S>& R);

struct CrudeOutcome {
  bool certified;
  double lambda;
  std::vector<RealizationIssue> failures;
};

// λ < 1 across sectors, occupancy, domain-vertex coverage by the depth-1
// decomposition, and cell-tree nesting to `audit_depth`.
template <class S>
CrudeOutcome crude_verify(const EquationalSystem& S_, const GeometricRealization<S>& R,
                          int audit_depth = 3, double eps = 1e-9);

template <class S>
struct Cell {
  std::vector<Id> address;  // sector ids m_1 ... m_n
  Polytope<S> polytope;
};

template <class S>
struct CellTree {
  std::vector<std::vector<Cell<S>>> depths;  // index 0 .. n
};

// Cells V_{m_1...m_n} of all complexes at `a` up to the given depth
// (affine-only realizations).
template <class S>
CellTree<S> cell_tree(const EquationalSystem& S_, const GeometricRealization<S>& R, const Id& a,
                      int depth, long long budget = 1000000);

// Nesting check: every depth-(k+1) cell inside its parent.
template <class S>
std::optional<std::string> check_cell_nesting(const CellTree<S>& tree,
                                              const GeometricRealization<S>& R);

template <class S>
struct DecayReport {
  std::vector<double> sup_diameter;  // per depth 1..N
  std::vector<S> sup_sq;             // exact squared sup (rational mode)
  double inf;
};

template <class S>
DecayReport<S> diameter_decay(const EquationalSystem& S_, const GeometricRealization<S>& R,
                              const Id& a, int N, long long budget = 1000000);

template <class S>
struct Approximants {
  std::vector<Polytope<S>> sets;  // K_0 ... K_N
  int empty_at = -1;              // stage at which an intersection came out empty
};

// K_0(x) = J(a); K_{n+1}(x) = ∩_{ξ(x) = m⊗y} ψ_m K_n(y).
template <class S>
Approximants<S> approximant_sets(const EquationalSystem& S_, const GeometricRealization<S>& R,
                                 const coalgebra::Coalgebra& C, const Id& a, const Id& x, int N);

// One row per top-dimensional depth-n cell, addresses in lexicographic
// order: depth,address,v0x,v0y,...
template <class S>
std::string render_csv(const EquationalSystem& S_, const GeometricRealization<S>& R, const Id& a,
                       int depth, bool top_dimensional_only = true, long long budget = 1000000);

// Depth-colored polygons; 2-D affine realizations only.
template <class S>
std::string render_svg(const EquationalSystem& S_, const GeometricRealization<S>& R, const Id& a,
                       int depth, long long budget = 1000000);

}  // namespace selfsim::recognition
