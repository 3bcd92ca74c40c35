#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <variant>
#include <vector>

#include "selfsim/errors.hpp"

namespace selfsim {

using Id = std::string;

struct Arrow {
  Id id;
  Id src;
  Id tgt;
};

inline Id identity_id(const Id& object) { return "id_" + object; }

// A finite category presented by a total composition table. Identities are
// either synthesized (make) or supplied explicitly (make_raw); validation of
// the axioms is a separate operation so that broken presentations can be
// constructed and reported on.
class FinCategory {
 public:
  // Synthesizes identities "id_<object>" and all composites involving them.
  // User arrows may not use the "id_" prefix. `compose` lists (g, f, h)
  // meaning h = g∘f for non-identity composable pairs.
  static FinCategory make(std::vector<Id> objects, std::vector<Arrow> arrows,
                          const std::vector<std::tuple<Id, Id, Id>>& compose);

  // Fully explicit presentation: `arrows` includes identities, `identity`
  // maps each object to its designated identity arrow, `compose` may contain
  // any entries (missing or lawless entries are reported by validation).
  static FinCategory make_raw(std::vector<Id> objects, std::vector<Arrow> arrows,
                              const std::map<Id, Id>& identity,
                              const std::vector<std::tuple<Id, Id, Id>>& compose);

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_arrows() const { return static_cast<int>(arrows_.size()); }
  const std::vector<Id>& objects() const { return objects_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(int i) const { return arrows_[static_cast<size_t>(i)]; }

  int object_index(const Id& o) const;
  int arrow_index(const Id& a) const;
  bool has_object(const Id& o) const { return obj_index_.count(o) > 0; }

  int identity_of(int obj) const { return identity_[static_cast<size_t>(obj)]; }
  bool is_identity(int arr) const;

  int src(int arr) const { return arr_src_[static_cast<size_t>(arr)]; }
  int tgt(int arr) const { return arr_tgt_[static_cast<size_t>(arr)]; }

  // Composite g∘f, or -1 when the pair is composable but the table has no
  // entry. Asking for a non-composable pair is a logic error (-2).
  int compose(int g, int f) const;

  const std::vector<int>& arrows_from(int obj) const { return from_[static_cast<size_t>(obj)]; }
  const std::vector<int>& arrows_into(int obj) const { return into_[static_cast<size_t>(obj)]; }

 private:
  std::vector<Id> objects_;
  std::vector<Arrow> arrows_;
  std::vector<int> arr_src_, arr_tgt_;
  std::unordered_map<Id, int> obj_index_, arr_index_;
  std::vector<int> identity_;
  std::unordered_map<long long, int> compose_;
  std::vector<std::vector<int>> from_, into_;

  void index();
  long long key(int g, int f) const { return static_cast<long long>(g) * num_arrows() + f; }
};

using CatPtr = std::shared_ptr<const FinCategory>;

FinCategory opposite(const FinCategory& cat);

// Full subcategory on the listed objects.
FinCategory full_subcategory(const FinCategory& cat, const std::vector<Id>& objects);

// Product category; object and arrow ids are "(p,q)".
FinCategory product_category(const FinCategory& a, const FinCategory& b);
Id pair_id(const Id& a, const Id& b);

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Kind {
    MissingEntry,      // composable pair absent from the table
    SrcTgtMismatch,    // composite with wrong endpoints
    IdentityLaw,       // 1∘f ≠ f or f∘1 ≠ f
    Associativity,     // h∘(g∘f) ≠ (h∘g)∘f
    IdentityEndpoints  // designated identity not an endomorphism
  };
  Kind kind;
  std::string message;
  std::vector<Id> witnesses;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_category(const FinCategory& cat);

// ---------------------------------------------------------------------------
// Functors into finite sets

class SetFunctor {
 public:
  static SetFunctor make(CatPtr base,
                         const std::map<Id, std::vector<Id>>& on_objects,
                         const std::map<std::pair<Id, Id>, Id>& on_arrows);

  const FinCategory& base() const { return *base_; }
  CatPtr base_ptr() const { return base_; }

  const std::vector<Id>& elements(int obj) const { return elems_[static_cast<size_t>(obj)]; }
  int element_index(int obj, const Id& x) const;
  // Action of arrow `arr` on element index `x` of its source object; -1 when
  // the table has no entry.
  int apply(int arr, int x) const;

  // Elementwise validity: action tables total, identities act as identity,
  // actions respect composition.
  ValidationReport validate() const;

 private:
  CatPtr base_;
  std::vector<std::vector<Id>> elems_;
  std::vector<std::unordered_map<Id, int>> elem_index_;
  std::vector<std::vector<int>> action_;  // [arrow][src element] -> tgt element
  friend SetFunctor representable(CatPtr, const Id&);
  friend SetFunctor constant_functor(CatPtr, const Id&);
  friend SetFunctor sum_of_representables(CatPtr, const std::vector<Id>&);
};

// A(b,−) with elements named by arrow ids.
SetFunctor representable(CatPtr base, const Id& b);
// Constant one-element functor (element named `elem`).
SetFunctor constant_functor(CatPtr base, const Id& elem);
// Σ A(b,−) over the listed objects; elements named "<k>:<arrow>".
SetFunctor sum_of_representables(CatPtr base, const std::vector<Id>& bs);

// ---------------------------------------------------------------------------
// Components, distance

struct ComponentPartition {
  std::vector<std::vector<Id>> blocks;        // blocks sorted by representative
  std::unordered_map<Id, int> block_of;       // object id -> block index
  const Id& representative(int block) const { return blocks[static_cast<size_t>(block)].front(); }
  int num_blocks() const { return static_cast<int>(blocks.size()); }
};

ComponentPartition connected_components(const FinCategory& cat);

// Smallest number of roofs ⋅←⋅→⋅ joining the two objects; nullopt when they
// lie in different components.
std::optional<int> zigzag_distance(const FinCategory& cat, const Id& a, const Id& b);

// ---------------------------------------------------------------------------
// Category of elements

struct ElementsCategory {
  FinCategory cat;
  std::unordered_map<Id, Id> object_proj;  // elt object id -> base object id
  std::unordered_map<Id, Id> arrow_proj;   // elt arrow id  -> base arrow id
};

Id element_object_id(const Id& obj, const Id& elem);

ElementsCategory category_of_elements(const SetFunctor& X);

// ---------------------------------------------------------------------------
// Nondegeneracy and filteredness checks

struct NdSquareWitness {  // ND1 instance with no completing square
  Id f, f_prime;          // cospan f: a→c, f′: a′→c
  Id x, x_prime;          // x ∈ X(a), x′ ∈ X(a′) with fx = f′x′
};

struct NdForkWitness {  // ND2 instance with no fork
  Id f, f_prime;        // parallel pair a→c
  Id x;                 // fx = f′x
};

struct NdReport {
  std::optional<NdSquareWitness> nd1;
  std::optional<NdForkWitness> nd2;
  bool ok() const { return !nd1 && !nd2; }
};

NdReport check_functor_nondegenerate(const SetFunctor& X);

struct FilteredReport {
  // span c→a, c→b with no commutative square under it
  std::optional<std::pair<Id, Id>> span_failure;
  // parallel pair with no cofork
  std::optional<std::pair<Id, Id>> parallel_failure;
  bool ok() const { return !span_failure && !parallel_failure; }
};

// Cocone form: every span completes to a commutative square, every parallel
// pair extends to a cofork.
FilteredReport check_componentwise_filtered(const FinCategory& cat);
// Dual (cospans complete, parallel pairs extend to forks).
FilteredReport check_componentwise_cofiltered(const FinCategory& cat);

// ---------------------------------------------------------------------------
// Cauchy-completeness and representable decomposition

// Returns ids of idempotents that do not split (empty = Cauchy-complete).
std::vector<Id> split_idempotents_check(const FinCategory& cat);

struct Decomposition {
  std::map<Id, int> multiplicity;  // base object -> number of copies of A(b,−)
};

struct DecomposeFailure {
  std::string reason;
  std::optional<NdReport> nd;           // set when nondegeneracy failed
  std::optional<Id> component_witness;  // elt component with no initial object
};

using DecomposeResult = std::variant<Decomposition, DecomposeFailure>;

// Requires the base to be finite Cauchy-complete (checked; PreconditionError).
DecomposeResult decompose_into_representables(const SetFunctor& X);

// For each block of the partition: the unique object with exactly one arrow
// to every object of the block, ties broken lexicographically.
std::map<Id, std::optional<Id>> initial_object_per_component(const FinCategory& cat);

}  // namespace selfsim
