#pragma once

#include <optional>
#include <set>
#include <vector>

#include "selfsim/complexes.hpp"
#include "selfsim/finmod.hpp"

namespace selfsim::coalgebra {

// An M-coalgebra presented by one representative pair per element; all
// quotient-level reasoning goes through tensor certificates. Elements listed
// in `boundary` carry no structure (truncated carriers only).
class Coalgebra {
 public:
  static Coalgebra make(EquationalSystem system, SetFunctor carrier,
                        const std::map<std::pair<Id, Id>, std::pair<Id, Id>>& xi,
                        std::set<std::pair<Id, Id>> boundary = {});

  const EquationalSystem& system() const { return system_; }
  const SetFunctor& carrier() const { return carrier_; }
  const TensorResult& tensor_certificates() const { return tensor_; }

  bool has_structure(int obj, int elem) const;
  // Stored representative pair (sector index, element index at its source).
  std::pair<int, int> structure(int obj, int elem) const;
  // All representative pairs of the ξ-class of the element.
  std::vector<std::pair<int, int>> structure_class(int obj, int elem) const;

 private:
  EquationalSystem system_;
  SetFunctor carrier_;
  std::vector<std::vector<std::pair<int, int>>> xi_;
  std::set<std::pair<int, int>> boundary_;
  TensorResult tensor_;
};

// Both coalgebra invariants: carrier nondegeneracy and naturality of the
// structure map in the tensor quotient.
ValidationReport validate_coalgebra(const Coalgebra& C);

struct Resolution {
  complexes::TruncatedComplex complex;
  std::vector<int> elements;  // x_0 ... x_n, element indices at complex objects
};

// All depth-n resolutions of x, enumerating every representative pair of
// each ξ-class along the way.
std::vector<Resolution> resolutions(const Coalgebra& C, const Id& a, const Id& x, int n,
                                    long long budget = 1000000);

struct ResoConnectivity {
  bool ok;
  int num_resolutions;
  // A pair of resolutions in different blocks of the depth-n Reso category.
  std::optional<std::pair<Resolution, Resolution>> disconnected;
};

ResoConnectivity check_reso_connected(const Coalgebra& C, const Id& a, const Id& x, int n,
                                      long long budget = 1000000);

struct TerminalImage {
  int depth;
  int block;                  // block index in I_n(a)
  Id block_representative;    // least chain name of the block
  complexes::TruncatedComplex complex;  // the resolved complex that was used
};

// Image of x under the terminal map at truncation depth n: the block of any
// resolution's complex; agreement across all resolutions is asserted.
TerminalImage terminal_map(const Coalgebra& C, const Id& a, const Id& x, int n,
                           const complexes::ComponentsTower& tower, long long budget = 1000000);
TerminalImage terminal_map(const Coalgebra& C, const Id& a, const Id& x, int n,
                           long long budget = 1000000);

struct FixedPointData {
  bool is_fixed_point;
  bool occupied;
  std::string failure;  // nonempty when not a fixed point
  // ψ tables: psi[sector][y element] = preimage element, when fixed point.
  std::vector<std::vector<int>> psi;
};

// Per-object bijectivity of the structure map onto tensor classes; on
// success constructs the inverse ψ tables and verifies ψ-naturality.
FixedPointData check_fixed_point(const Coalgebra& C);

// Appendix-style representable-type coalgebra for a lasso, truncated at
// `levels`: carrier Σ_{k<=levels} A(a_k, −), with level-`levels` elements as
// the truncation boundary.
struct RepresentableCoalgebra {
  Coalgebra coalgebra;
  complexes::LassoComplex lasso;
  int levels;
  // κ of the element (level k, h: a_k → c): the complex h·(suffix of the
  // lasso after k), truncated to the given depth.
  complexes::TruncatedComplex kappa(int level, const Id& arrow, int depth) const;
};

RepresentableCoalgebra representable_coalgebra(const EquationalSystem& S,
                                               const complexes::LassoComplex& L, int levels);

// Element id used for the representable carrier: "<level>:<arrow>".
Id representable_element_id(int level, const Id& arrow);

}  // namespace selfsim::coalgebra
