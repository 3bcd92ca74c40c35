#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/fincat.hpp"

namespace selfsim {

struct Sector {
  Id id;
  Id src;  // b in m: b ⇸ a
  Id tgt;  // a
};

// A module M: A ⇸ A presented by sector lists and total action tables.
// Identity actions are forced (1m = m, m1 = m) and filled in by make.
class Module {
 public:
  static Module make(CatPtr base, std::vector<Sector> sectors,
                     const std::map<std::pair<Id, Id>, Id>& left,    // (f, m) -> fm
                     const std::map<std::pair<Id, Id>, Id>& right);  // (m, g) -> mg

  const FinCategory& base() const { return *base_; }
  CatPtr base_ptr() const { return base_; }

  int num_sectors() const { return static_cast<int>(sectors_.size()); }
  const std::vector<Sector>& sectors() const { return sectors_; }
  const Sector& sector(int m) const { return sectors_[static_cast<size_t>(m)]; }
  int sector_index(const Id& m) const;

  int src(int m) const { return sec_src_[static_cast<size_t>(m)]; }
  int tgt(int m) const { return sec_tgt_[static_cast<size_t>(m)]; }

  // fm for f: tgt(m) → a'; -1 when the entry is missing.
  int left(int f, int m) const;
  // mg for g: b' → src(m); -1 when the entry is missing.
  int right(int m, int g) const;

  // Sectors with the given target / source object.
  const std::vector<int>& sectors_into(int obj) const { return into_[static_cast<size_t>(obj)]; }
  const std::vector<int>& sectors_from(int obj) const { return from_[static_cast<size_t>(obj)]; }

  // M(b, −) as a set functor (elements named by sector ids).
  SetFunctor hom_from(const Id& b) const;
  // M(−, a) as a set functor on the opposite category.
  SetFunctor hom_into(const Id& a) const;

 private:
  CatPtr base_;
  std::vector<Sector> sectors_;
  std::vector<int> sec_src_, sec_tgt_;
  std::unordered_map<Id, int> sec_index_;
  std::unordered_map<long long, int> left_, right_;
  std::vector<std::vector<int>> into_, from_;
  long long key(int x, int y) const { return static_cast<long long>(x) * num_sectors() + y; }
  long long rkey(int m, int g) const {
    return static_cast<long long>(m) * base_->num_arrows() + g;
  }
};

ValidationReport validate_module(const Module& M);

struct SystemMetadata {
  std::string name;
  std::string provenance;
  bool truncated = false;  // finite stand-in for an infinite system
};

struct EquationalSystem {
  CatPtr category;
  Module module;
  SystemMetadata metadata;
};

// Per-object cardinality of the element category of M(−, a): the number of
// diagrams b' → b ⇸ a. Always finite here; reported for complexity estimates.
std::map<Id, long long> check_module_finite(const Module& M);

struct ModuleNdWitness {
  Id source;  // the b for which M(b, −) is degenerate
  NdReport report;
};

// ND1/ND2 in module form: M nondegenerate iff every M(b, −) is.
std::optional<ModuleNdWitness> check_module_nondegenerate(const Module& M);

// ---------------------------------------------------------------------------
// Tensor products

// Quotient classes of pairs (sector m: b ⇸ a, x ∈ X(b)) per target object a,
// with union-find certificates. Canonical representative of a class is the
// lexicographically least (sector id, element id) pair.
class TensorResult {
 public:
  struct Pair {
    int sector;
    int elem;  // index into X.elements(src(sector))
  };

  int num_pairs(int obj) const { return static_cast<int>(pairs_[static_cast<size_t>(obj)].size()); }
  const std::vector<Pair>& pairs(int obj) const { return pairs_[static_cast<size_t>(obj)]; }
  int pair_index(int obj, int sector, int elem) const;

  // Class representative pair index of a pair at `obj`.
  int class_of(int obj, int pair) const;
  int num_classes(int obj) const;
  // Representative pairs, sorted by (sector id, element id).
  std::vector<Pair> class_members(int obj, int cls) const;

  // Arrow action on classes: f · [m ⊗ x] = [fm ⊗ x].
  int apply(int arrow, int obj, int cls) const;

  // The quotient as a set functor (elements "m⊗x" named by representatives).
  const SetFunctor& as_functor() const { return functor_; }
  int class_of_functor_element(int obj, int functor_elem) const;
  int functor_element_of_class(int obj, int cls) const;

 private:
  friend TensorResult tensor(const Module&, const SetFunctor&);
  std::vector<std::vector<Pair>> pairs_;                  // per object
  std::vector<std::unordered_map<long long, int>> pidx_;  // (sector, elem) -> pair
  std::vector<std::vector<int>> class_rep_;               // per object: pair -> rep pair
  std::vector<std::vector<int>> reps_;                    // per object: sorted list of rep pairs
  std::vector<std::unordered_map<int, int>> rep_rank_;    // rep pair -> class index
  SetFunctor functor_;
};

TensorResult tensor(const Module& M, const SetFunctor& X);

// Y ⊗ X for a presheaf Y (functor on the opposite category) and functor X.
// Returns the classes as lists of (y element id, x element id) certificates.
struct PresheafTensor {
  std::vector<std::vector<std::pair<Id, Id>>> classes;  // sorted members, classes sorted by least
};

PresheafTensor tensor_presheaf(const SetFunctor& Y_on_opposite, const SetFunctor& X);

// ---------------------------------------------------------------------------

// Product of equational systems; objects/arrows/sectors are paired ids.
// Output is revalidated and re-checked for nondegeneracy.
EquationalSystem product_system(const EquationalSystem& S, const EquationalSystem& T);

}  // namespace selfsim
