#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/finmod.hpp"

namespace selfsim::discrete {

// A discrete equational system: objects and sector sets, no arrow actions.
struct DiscreteSystem {
  std::vector<Id> objects;
  // M(b, a) listed as (b, a) -> sector ids.
  std::map<std::pair<Id, Id>, std::vector<Id>> sectors;
  bool truncated = false;
  // Objects within this backward distance of a truncation boundary get their
  // classification qualified (walks over ℕ are truncated at N).
  std::map<Id, int> boundary_distance;

  int object_index(const Id& o) const;
  long long sector_count_into(const Id& a) const;
};

// View of a discrete system as an equational system over a discrete category.
EquationalSystem to_equational_system(const DiscreteSystem& D, const std::string& name);
// Requires the category to be discrete and every sector action trivial.
DiscreteSystem from_equational_system(const EquationalSystem& S);

// Greatest fixpoint: a is live iff some sector b ⇸ a has b live.
std::vector<Id> nonempty_objects(const DiscreteSystem& D);

// a is a singleton iff it is live and every live object backward-reachable
// from a has exactly one incoming sector from live objects.
std::vector<Id> singleton_objects(const DiscreteSystem& D);

enum class SpaceKind { Empty, Singleton, Cantor, Mixed };

struct IsolatedWitness {
  // Eventually constant address: descend along `prefix` to a singleton, then
  // repeat `cycle` (the deterministic tail).
  std::vector<Id> prefix;
  std::vector<Id> cycle;
};

struct ObjectClass {
  SpaceKind kind;
  std::optional<IsolatedWitness> witness;  // for Mixed
  std::optional<int> boundary_distance;    // qualification for truncated systems
};

std::map<Id, ObjectClass> classify(const DiscreteSystem& D);

// Number of length-n sector words ending at a (transfer-matrix product).
long long stream_count(const DiscreteSystem& D, const Id& a, int n);

}  // namespace selfsim::discrete
