#include "selfsim/solvability.hpp"

#include "doctest.h"
#include "selfsim/catalog.hpp"
#include "test_util.hpp"

using namespace selfsim;
using namespace selfsim::solvability;

namespace {

CatPtr freyd_cat() {
  return std::make_shared<const FinCategory>(
      FinCategory::make({"0", "1"}, {{"sigma", "0", "1"}, {"tau", "0", "1"}}, {}));
}

}  // namespace

TEST_CASE("check_S holds for the Freyd system") {
  SolvabilityVerdict verdict = check_S(catalog::build("freyd(2)").system);
  CHECK(verdict.tag == SolvabilityVerdict::Tag::Holds);
}

TEST_CASE("check_S fails for the hom-module on 0 ⇉ 1 with witness (sigma, tau)") {
  EquationalSystem S = testutil::hom_module_system(freyd_cat(), "hom(0⇉1)");
  SolvabilityVerdict verdict = check_S(S);
  REQUIRE(verdict.tag == SolvabilityVerdict::Tag::Fails);
  REQUIRE(verdict.witness.has_value());
  const FinCategory& cat = *S.category;
  CHECK(cat.arrow(verdict.witness->f0).id == "sigma");
  CHECK(cat.arrow(verdict.witness->f0_prime).id == "tau");
  // The witness re-verifies: it survives one extension step against the
  // surviving pool and admits no square/fork.
  auto pool = survivors(S, verdict.witness->kind);
  CHECK(extends_within(S, *verdict.witness, pool));
  if (verdict.witness->kind == EndPairConfig::Kind::Cospan)
    CHECK_FALSE(cospan_completes(cat, verdict.witness->f0, verdict.witness->f0_prime));
  else
    CHECK_FALSE(parallel_forks(cat, verdict.witness->f0, verdict.witness->f0_prime));
}

TEST_CASE("the parallel pair (sigma, tau) survives in the hom-module system") {
  EquationalSystem S = testutil::hom_module_system(freyd_cat(), "hom(0⇉1)");
  const FinCategory& cat = *S.category;
  auto pool = survivors(S, EndPairConfig::Kind::Parallel);
  bool found = false;
  for (const auto& c : pool)
    if (cat.arrow(c.f0).id == "sigma" && cat.arrow(c.f0_prime).id == "tau") found = true;
  CHECK(found);
}

TEST_CASE("check_S holds for discrete systems trivially") {
  CHECK(check_S(catalog::build("cantor(2)").system).tag == SolvabilityVerdict::Tag::Holds);
  CHECK(check_S(catalog::build("convergent_sequence").system).tag ==
        SolvabilityVerdict::Tag::Holds);
}

TEST_CASE("check_S holds for the hom-module on a componentwise-cofiltered poset") {
  // The cospan-shaped poset a -> c <- b is NOT cofiltered; use the dual
  // span-shaped poset c -> a, c -> b, which is.
  auto cat = std::make_shared<const FinCategory>(
      FinCategory::make({"a", "b", "c"}, {{"f", "c", "a"}, {"g", "c", "b"}}, {}));
  REQUIRE(check_componentwise_cofiltered(*cat).ok());
  EquationalSystem S = testutil::hom_module_system(cat, "hom(span)");
  CHECK(check_S(S).tag == SolvabilityVerdict::Tag::Holds);
}

TEST_CASE("check_S fails for the hom-module on a non-cofiltered poset") {
  auto vee = std::make_shared<const FinCategory>(
      FinCategory::make({"a", "b", "c"}, {{"f", "a", "c"}, {"g", "b", "c"}}, {}));
  REQUIRE_FALSE(check_componentwise_cofiltered(*vee).ok());
  EquationalSystem S = testutil::hom_module_system(vee, "hom(vee)");
  CHECK(check_S(S).tag == SolvabilityVerdict::Tag::Fails);
}

TEST_CASE("survivors is a fixpoint of the extension operator") {
  for (const std::string& name : {"freyd(2)", "sierpinski(2)", "cantor(2)", "julia"}) {
    EquationalSystem S = catalog::build(name).system;
    for (auto kind : {EndPairConfig::Kind::Cospan, EndPairConfig::Kind::Parallel}) {
      auto pool = survivors(S, kind);
      for (const auto& c : pool) CHECK(extends_within(S, c, pool));
    }
  }
}

TEST_CASE("no survivor ends at an object with no incoming sectors") {
  // Object "a" with no sectors into it: identity cospan (id_a, id_a) cannot
  // extend and dies.
  auto cat = std::make_shared<const FinCategory>(FinCategory::make({"a", "b"}, {}, {}));
  Module M = Module::make(cat, {{"m", "b", "b"}}, {}, {});
  EquationalSystem S{cat, std::move(M), {"partial", "", false}};
  auto pool = survivors(S, EndPairConfig::Kind::Cospan);
  for (const auto& c : pool) {
    CHECK(S.category->tgt(c.f0) != S.category->object_index("a"));
  }
  CHECK_FALSE(pool.empty());  // (id_b, id_b) survives via the loop sector
}

TEST_CASE("truncated stand-ins report Unknown") {
  EquationalSystem S = catalog::build("walks(original,12)").system;
  CHECK(S.metadata.truncated);
  CHECK(check_S(S).tag == SolvabilityVerdict::Tag::Unknown);
}

TEST_CASE("catalog systems that model genuine finite systems all satisfy S") {
  for (const std::string& name :
       {"freyd(2)", "freyd(3)", "sierpinski(2)", "sierpinski(3)", "circle", "ifs", "julia",
        "cantor(2)", "cantor(3)", "convergent_sequence"}) {
    SolvabilityVerdict verdict = check_S(catalog::build(name).system);
    CHECK(verdict.tag == SolvabilityVerdict::Tag::Holds);
  }
}
