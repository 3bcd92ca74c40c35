#include "selfsim/discrete.hpp"

#include <functional>

#include "doctest.h"
#include "selfsim/catalog.hpp"
#include "selfsim/complexes.hpp"

using namespace selfsim;
using namespace selfsim::discrete;

namespace {

DiscreteSystem walks(const std::string& rule, int n) {
  return catalog::as_discrete(catalog::build("walks(" + rule + "," + std::to_string(n) + ")"));
}

// Brute-force oracle: count backward sector paths by explicit DFS.
long long path_count_oracle(const DiscreteSystem& D, const Id& a, int n) {
  if (n == 0) return 1;
  long long total = 0;
  for (const auto& [ba, ms] : D.sectors)
    if (ba.second == a)
      total += static_cast<long long>(ms.size()) * path_count_oracle(D, ba.first, n - 1);
  return total;
}

}  // namespace

TEST_CASE("nonempty_objects") {
  SUBCASE("Cantor is live") {
    DiscreteSystem D = catalog::as_discrete(catalog::build("cantor(2)"));
    CHECK(nonempty_objects(D) == std::vector<Id>{"*"});
  }
  SUBCASE("an object with no incoming sectors is dead") {
    DiscreteSystem D;
    D.objects = {"a", "c"};
    D.sectors[{"a", "a"}] = {"m"};
    CHECK(nonempty_objects(D) == std::vector<Id>{"a"});
  }
  SUBCASE("all walk positions are live") {
    DiscreteSystem D = walks("original", 12);
    CHECK(nonempty_objects(D).size() == 13);
  }
  SUBCASE("liveness is a fixpoint of its defining operator") {
    // A dead chain: c <- d <- e (no source for e).
    DiscreteSystem D;
    D.objects = {"c", "d", "e", "z"};
    D.sectors[{"d", "c"}] = {"m1"};
    D.sectors[{"e", "d"}] = {"m2"};
    D.sectors[{"z", "z"}] = {"loop"};
    std::vector<Id> live = nonempty_objects(D);
    CHECK(live == std::vector<Id>{"z"});
    // Applying the operator once more changes nothing.
    for (const Id& a : live) {
      bool has_live_source = false;
      for (const auto& [ba, ms] : D.sectors)
        if (ba.second == a && !ms.empty() &&
            std::find(live.begin(), live.end(), ba.first) != live.end())
          has_live_source = true;
      CHECK(has_live_source);
    }
  }
}

TEST_CASE("singleton_objects") {
  SUBCASE("original walks: position 0 is a singleton") {
    DiscreteSystem D = walks("original", 12);
    std::vector<Id> singles = singleton_objects(D);
    CHECK(std::find(singles.begin(), singles.end(), "0") != singles.end());
    CHECK(std::find(singles.begin(), singles.end(), "3") == singles.end());
  }
  SUBCASE("Cantor is not a singleton") {
    DiscreteSystem D = catalog::as_discrete(catalog::build("cantor(2)"));
    CHECK(singleton_objects(D).empty());
  }
  SUBCASE("a truncated chain system is singleton everywhere") {
    // X1 = X2, X2 = X3, X3 = X3 (truncation loop).
    DiscreteSystem D;
    D.objects = {"x1", "x2", "x3"};
    D.sectors[{"x2", "x1"}] = {"m1"};
    D.sectors[{"x3", "x2"}] = {"m2"};
    D.sectors[{"x3", "x3"}] = {"m3"};
    CHECK(singleton_objects(D).size() == 3);
  }
}

TEST_CASE("classify") {
  SUBCASE("modified walks: interior objects are Cantor") {
    DiscreteSystem D = walks("modified", 12);
    auto classes = classify(D);
    for (int n = 0; n <= 6; ++n) CHECK(classes.at(std::to_string(n)).kind == SpaceKind::Cantor);
  }
  SUBCASE("original walks: 0 Singleton, the rest Mixed with witnesses") {
    DiscreteSystem D = walks("original", 12);
    auto classes = classify(D);
    CHECK(classes.at("0").kind == SpaceKind::Singleton);
    for (int n = 1; n <= 6; ++n) {
      const ObjectClass& oc = classes.at(std::to_string(n));
      CHECK(oc.kind == SpaceKind::Mixed);
      REQUIRE(oc.witness.has_value());
      // The witness address descends to 0 and then stays: its prefix has n
      // left-steps and the cycle is the stay-at-0 loop.
      CHECK(oc.witness->prefix.size() == static_cast<size_t>(n));
      CHECK(oc.witness->cycle == std::vector<Id>{"s0"});
    }
  }
  SUBCASE("convergent sequence: X1 Singleton, X2 Mixed") {
    DiscreteSystem D = catalog::as_discrete(catalog::build("convergent_sequence"));
    auto classes = classify(D);
    CHECK(classes.at("x1").kind == SpaceKind::Singleton);
    CHECK(classes.at("x2").kind == SpaceKind::Mixed);
  }
  SUBCASE("classify never returns Cantor when a singleton is reachable") {
    DiscreteSystem D = walks("original", 8);
    auto classes = classify(D);
    for (const auto& [obj, oc] : classes) CHECK(oc.kind != SpaceKind::Cantor);
  }
  SUBCASE("dead objects are Empty") {
    DiscreteSystem D;
    D.objects = {"a", "dead"};
    D.sectors[{"a", "a"}] = {"m", "m2"};
    auto classes = classify(D);
    CHECK(classes.at("dead").kind == SpaceKind::Empty);
    CHECK(classes.at("a").kind == SpaceKind::Cantor);
  }
  SUBCASE("boundary distances are carried through for truncated systems") {
    DiscreteSystem D = walks("modified", 12);
    auto classes = classify(D);
    CHECK(classes.at("12").boundary_distance == 0);
    CHECK(classes.at("3").boundary_distance == 9);
  }
}

TEST_CASE("stream_count") {
  SUBCASE("Cantor(2): 2^n") {
    DiscreteSystem D = catalog::as_discrete(catalog::build("cantor(2)"));
    long long expected = 1;
    for (int n = 0; n <= 12; ++n) {
      CHECK(stream_count(D, "*", n) == expected);
      expected *= 2;
    }
  }
  SUBCASE("modified walks at position 5, depth 6: matches the DFS oracle") {
    DiscreteSystem D = walks("modified", 12);
    CHECK(stream_count(D, "5", 6) == path_count_oracle(D, "5", 6));
    for (int a = 0; a <= 8; ++a)
      for (int n = 0; n <= 6; ++n)
        CHECK(stream_count(D, std::to_string(a), n) ==
              path_count_oracle(D, std::to_string(a), n));
  }
  SUBCASE("product system: 6^3 = 216 words at depth 3") {
    EquationalSystem P =
        product_system(catalog::build("cantor(2)").system, catalog::build("cantor(3)").system);
    DiscreteSystem D = discrete::from_equational_system(P);
    CHECK(stream_count(D, "(*,*)", 3) == 216);
  }
}

TEST_CASE("stream_count matches truncated component counts (discrete systems never merge)") {
  for (const std::string& name : {"cantor(2)", "convergent_sequence"}) {
    catalog::CatalogEntry entry = catalog::build(name);
    DiscreteSystem D = catalog::as_discrete(entry);
    for (const Id& a : D.objects)
      for (int n = 0; n <= 5; ++n) {
        complexes::ComponentsTower tower =
            complexes::truncated_components(entry.system, a, n, 1000000);
        CHECK(stream_count(D, a, n) == tower.levels[static_cast<size_t>(n)].num_blocks());
      }
  }
}
