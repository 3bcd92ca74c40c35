#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/finmod.hpp"

namespace selfsim::complexes {

// Length-n prefix of a complex: sectors m_1 ... m_n listed target-first
// (m_1 is attached to the base object).
struct TruncatedComplex {
  int base_object;           // object index of a_0
  std::vector<int> sectors;  // module sector indices m_1 ... m_n

  int depth() const { return static_cast<int>(sectors.size()); }
  // a_i: base_object for i = 0, src(m_i) for i >= 1.
  int object_at(const Module& M, int i) const;
  bool valid(const Module& M) const;
  Id name(const Module& M) const;
};

// Finitely presented eventually periodic complex: prefix then repeating
// cycle, both target-first.
struct LassoComplex {
  Id base_object;
  std::vector<Id> prefix;
  std::vector<Id> cycle;
};

void validate_lasso(const Module& M, const LassoComplex& L);
// Sector (index) at position i >= 1 of the unrolled complex.
int lasso_sector_at(const Module& M, const LassoComplex& L, int i);
TruncatedComplex unroll(const Module& M, const LassoComplex& L, int n);

// Arrow chain f_0 ... f_n with f_0 the identity; square at level i is
// f_{i-1} m_i = m'_i f_i.
struct LadderMorphism {
  std::vector<int> arrows;
};

bool verify_ladder(const Module& M, const TruncatedComplex& from, const TruncatedComplex& to,
                   const LadderMorphism& ladder);
bool ladder_exists(const Module& M, const TruncatedComplex& from, const TruncatedComplex& to);
std::vector<LadderMorphism> enumerate_ladders(const Module& M, const TruncatedComplex& from,
                                              const TruncatedComplex& to, long long budget);

// ---------------------------------------------------------------------------

// All depth-n complexes at `a`.
std::vector<TruncatedComplex> enumerate_complexes(const EquationalSystem& S, const Id& a, int n,
                                                  long long budget);

// I_n(a) as an explicit finite category: objects are complexes, arrows are
// ladder morphisms, composition is componentwise.
struct TruncatedComplexCategory {
  FinCategory cat;
  std::vector<TruncatedComplex> chains;         // by object index of cat
  std::unordered_map<Id, int> chain_of_object;  // object id -> chains index
};

TruncatedComplexCategory truncated_complex_category(const EquationalSystem& S, const Id& a,
                                                    int n, long long budget = 1000000);

// Components of I_r(a) for r = 0..n plus the block maps induced by the
// projections pr_r (drop the leftmost n-r sectors).
struct ComponentsTower {
  std::vector<std::vector<TruncatedComplex>> chains;  // per depth r
  std::vector<ComponentPartition> levels;             // partition of chain names at depth r
  // Block of the depth-r truncation of a depth-n chain name.
  int project_block(const EquationalSystem& S, const TruncatedComplex& chain, int r) const;
};

ComponentsTower truncated_components(const EquationalSystem& S, const Id& a, int n,
                                     long long budget = 1000000);

// Block of one complex in I_n(a) without enumerating all complexes: a lazy
// BFS over span-roofs. Returns the sorted names of the block only if asked.
struct BlockQuery {
  bool certain;  // frontier exhausted within budget
  bool same_block;
  int distance;  // roof count when same_block, else last explored radius
};

BlockQuery same_block_query(const EquationalSystem& S, const TruncatedComplex& x,
                            const TruncatedComplex& y, int distance_bound, long long node_budget);

// ---------------------------------------------------------------------------

// d_r between the unrollings for r = 1..N. Entries: exact distance when
// <= bound; bound+1 when the bounded search gave out; kInfiniteDistance when
// the two complexes provably lie in different blocks.
inline constexpr int kInfiniteDistance = 1 << 28;

struct DistanceProfile {
  int bound;
  std::vector<int> d;
  std::vector<bool> exact;  // entry is a proven exact distance (or proven infinite)
};

DistanceProfile distance_profile(const EquationalSystem& S, const Id& a, const LassoComplex& L,
                                 const LassoComplex& L2, int N, int bound = 16,
                                 long long node_budget = 1000000);

// ---------------------------------------------------------------------------

// Eventually periodic ladder: arrows f_0 ... f_R then the cycle repeating.
struct PeriodicLadder {
  std::vector<Id> prefix_arrows;  // f_0 ... f_R (f_0 identity)
  std::vector<Id> cycle_arrows;   // f_{R+1} ... f_{R+L}
  int arrow_at(const FinCategory& cat, int i) const;
};

struct SpanCertificate {
  LassoComplex apex;
  PeriodicLadder left;   // apex -> L
  PeriodicLadder right;  // apex -> L2
};

struct EqualityVerdict {
  enum class Tag { Equal, DistinctAtDepth, Inconclusive };
  Tag tag;
  std::optional<SpanCertificate> certificate;  // Equal
  int distinct_depth = -1;                     // DistinctAtDepth
  DistanceProfile profile;                     // Inconclusive (and informational otherwise)
};

// Re-verifies a certificate by unrolling to depth n and checking every square.
bool verify_span_certificate(const EquationalSystem& S, const Id& a, const LassoComplex& L,
                             const LassoComplex& L2, const SpanCertificate& cert, int n);

EqualityVerdict decide_equal(const EquationalSystem& S, const Id& a, const LassoComplex& L,
                             const LassoComplex& L2, int depth_budget, int distance_bound,
                             long long node_budget = 1000000);

// ---------------------------------------------------------------------------

// Finite-horizon inverse system of nonempty levels with total maps
// maps[r]: levels[r+1] -> levels[r].
struct InverseSystemLevels {
  std::vector<std::vector<Id>> levels;
  std::vector<std::map<Id, Id>> maps;
};

// The paper's inductive value selection: given picks x_r in levels[r],
// returns a thread y with pr_r(x_n) = y_r for some n >= r, for every r.
// Tie-break: the value attaining the maximum recurrence count in the scanned
// window, least id among ties.
std::vector<Id> koenig_select(const InverseSystemLevels& sys, const std::vector<Id>& picks);

}  // namespace selfsim::complexes
