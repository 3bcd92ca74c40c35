#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/finmod.hpp"
#include "selfsim/discrete.hpp"
#include "selfsim/recognition.hpp"

namespace selfsim::catalog {

// Provenance-tagged expected value consumed by the acceptance suite.
struct Expectation {
  std::string key;
  std::string value;
  std::string provenance;
};

struct CatalogEntry {
  std::string name;
  EquationalSystem system;
  std::optional<recognition::RealizationVariant> realization;
  std::vector<Expectation> expected;
  std::string note;
};

// One-object system with k sectors; realization embeds into [0,1].
CatalogEntry cantor(int k);
// Walks on 0..N. rule: "original" (stay at 0) or "modified" (step right at 0).
CatalogEntry walks(const std::string& rule, int n_max);
// Interval glued from k copies of itself; k = 2 is the Freyd system.
CatalogEntry freyd(int k);
// Freyd system extended by a coequalizer object.
CatalogEntry circle();
// Sierpinski n-simplex system (n+1 half-scalings).
CatalogEntry sierpinski(int n);
// Explicit iterated function system: affine maps plus the intersection
// relation (i,j) ~ (i',j') as index quadruples.
struct IfsSpec {
  using RationalMatrix = std::vector<std::vector<geometry::Rational>>;
  using RationalVector = std::vector<geometry::Rational>;
  int dim;
  std::vector<std::pair<RationalMatrix, RationalVector>> maps;
  std::vector<std::array<int, 4>> relation;  // (i, j, i', j') with ψi(sj) = ψi'(sj')
};
CatalogEntry ifs(const IfsSpec& spec);
// Barycentric subdivision on Δ_inj truncated at dimension d (d ≤ 4).
// Rational right-angle embedding by default; embedding == "regular" uses the
// float-mode regular simplex embedding.
CatalogEntry barycentric(int d, const std::string& embedding = "rational");
// Edgewise (midpoint) subdivision on Δ_inj truncated at dimension d.
CatalogEntry edgewise(int d);
// Julia-set system of the paper's running example; data only, the
// universality statement is conjectural and not claimed here.
CatalogEntry julia();
// X1 ≅ X1, X2 ≅ X1 + X2.
CatalogEntry convergent_sequence();
// Product of two entries (systems only; no realization is synthesized).
CatalogEntry product(const CatalogEntry& a, const CatalogEntry& b);

// Builder registry for the CLI: `examples list` / `examples dump <name>`.
std::vector<std::string> list_names();
CatalogEntry build(const std::string& name);

// Discrete views for entries whose category is discrete.
discrete::DiscreteSystem as_discrete(const CatalogEntry& entry);

}  // namespace selfsim::catalog
