#include "selfsim/complexes.hpp"

#include "doctest.h"
#include "selfsim/catalog.hpp"

using namespace selfsim;
using namespace selfsim::complexes;

namespace {

EquationalSystem freyd2() { return catalog::build("freyd(2)").system; }
EquationalSystem cantor2() { return catalog::build("cantor(2)").system; }

LassoComplex lasso(const Id& base, std::vector<Id> prefix, std::vector<Id> cycle) {
  return LassoComplex{base, std::move(prefix), std::move(cycle)};
}

// The representations of 1/2 from the construction-example: half1 is the
// canonical one, half2/half3 the two binary expansions, half4/half5 the
// parametrized families at n = 0.
LassoComplex half1() { return lasso("1", {"1/2"}, {"id"}); }
LassoComplex half2() { return lasso("1", {"[1/2,1]"}, {"[0,1/2]"}); }
LassoComplex half3() { return lasso("1", {"[0,1/2]"}, {"[1/2,1]"}); }
LassoComplex half4() { return lasso("1", {"[0,1/2]", "1"}, {"id"}); }
LassoComplex half5() { return lasso("1", {"[1/2,1]", "0"}, {"id"}); }

LassoComplex two_thirds() { return lasso("1", {}, {"[1/2,1]", "[0,1/2]"}); }
LassoComplex one_third() { return lasso("1", {}, {"[0,1/2]", "[1/2,1]"}); }

}  // namespace

TEST_CASE("unroll") {
  EquationalSystem S = freyd2();
  const Module& M = S.module;
  SUBCASE("2/3 address unrolls to alternating digits") {
    TruncatedComplex tc = unroll(M, two_thirds(), 4);
    REQUIRE(tc.depth() == 4);
    CHECK(M.sector(tc.sectors[0]).id == "[1/2,1]");
    CHECK(M.sector(tc.sectors[1]).id == "[0,1/2]");
    CHECK(M.sector(tc.sectors[2]).id == "[1/2,1]");
    CHECK(M.sector(tc.sectors[3]).id == "[0,1/2]");
    CHECK(tc.valid(M));
  }
  SUBCASE("half-1 truncates to 1/2 then identities") {
    TruncatedComplex tc = unroll(M, half1(), 3);
    CHECK(M.sector(tc.sectors[0]).id == "1/2");
    CHECK(M.sector(tc.sectors[1]).id == "id");
    CHECK(M.sector(tc.sectors[2]).id == "id");
  }
  SUBCASE("depth zero is the empty chain") {
    CHECK(unroll(M, two_thirds(), 0).depth() == 0);
  }
  SUBCASE("broken lassos are rejected") {
    CHECK_THROWS_AS(validate_lasso(M, lasso("1", {}, {"id"})), InputError);
    CHECK_THROWS_AS(validate_lasso(M, lasso("1", {"1/2"}, {})), InputError);
  }
}

TEST_CASE("truncated_complex_category") {
  SUBCASE("Cantor(2) at depth 3: 8 objects, no nonidentity arrows") {
    TruncatedComplexCategory I3 = truncated_complex_category(cantor2(), "*", 3);
    CHECK(I3.cat.num_objects() == 8);
    for (int i = 0; i < I3.cat.num_arrows(); ++i) CHECK(I3.cat.is_identity(i));
  }
  SUBCASE("Freyd at depth 1: 5 objects, connected") {
    TruncatedComplexCategory I1 = truncated_complex_category(freyd2(), "1", 1);
    CHECK(I1.cat.num_objects() == 5);
    CHECK(connected_components(I1.cat).num_blocks() == 1);
    CHECK(validate_category(I1.cat).ok());
  }
  SUBCASE("Freyd at depth 2: 13 objects, single component") {
    TruncatedComplexCategory I2 = truncated_complex_category(freyd2(), "1", 2);
    CHECK(I2.cat.num_objects() == 13);
    CHECK(connected_components(I2.cat).num_blocks() == 1);
  }
  SUBCASE("budget is a hard error, not a silent truncation") {
    CHECK_THROWS_AS(truncated_complex_category(cantor2(), "*", 10, 100), ResourceError);
  }
}

TEST_CASE("truncated_components") {
  SUBCASE("Freyd: |I_n(1)| = 1 for n <= 6") {
    ComponentsTower tower = truncated_components(freyd2(), "1", 6);
    for (int r = 0; r <= 6; ++r) CHECK(tower.levels[static_cast<size_t>(r)].num_blocks() == 1);
  }
  SUBCASE("Cantor(2): |I_n| = 2^n for n <= 8") {
    ComponentsTower tower = truncated_components(cantor2(), "*", 8);
    long long expected = 1;
    for (int r = 0; r <= 8; ++r) {
      CHECK(tower.levels[static_cast<size_t>(r)].num_blocks() == expected);
      expected *= 2;
    }
  }
  SUBCASE("walks original at 0: one component at depth 5") {
    EquationalSystem walks = catalog::build("walks(original,12)").system;
    ComponentsTower tower = truncated_components(walks, "0", 5);
    CHECK(tower.levels[5].num_blocks() == 1);
  }
  SUBCASE("projections collapse blocks") {
    ComponentsTower tower = truncated_components(freyd2(), "1", 4);
    const Module& M = freyd2().module;
    for (const TruncatedComplex& chain : tower.chains[4])
      for (const TruncatedComplex& other : tower.chains[4]) {
        int b1 = tower.levels[4].block_of.at(chain.name(M));
        int b2 = tower.levels[4].block_of.at(other.name(M));
        if (b1 != b2) continue;
        for (int r = 0; r <= 4; ++r)
          CHECK(tower.project_block(freyd2(), chain, r) ==
                tower.project_block(freyd2(), other, r));
      }
  }
}

TEST_CASE("same_block_query agrees with explicit zigzag distances") {
  EquationalSystem S = freyd2();
  TruncatedComplexCategory I2 = truncated_complex_category(S, "1", 2);
  for (size_t i = 0; i < I2.chains.size(); i += 3)
    for (size_t j = 0; j < I2.chains.size(); j += 2) {
      auto d = zigzag_distance(I2.cat, I2.chains[i].name(S.module), I2.chains[j].name(S.module));
      BlockQuery q = same_block_query(S, I2.chains[i], I2.chains[j], 16, 100000);
      REQUIRE(q.certain);
      REQUIRE(d.has_value());  // I_2(1) is connected
      CHECK(q.same_block);
      CHECK(q.distance == *d);
    }
}

TEST_CASE("distance_profile") {
  EquationalSystem S = freyd2();
  SUBCASE("a lasso against itself is all zeros") {
    DistanceProfile profile = distance_profile(S, "1", two_thirds(), two_thirds(), 6);
    for (int d : profile.d) CHECK(d == 0);
  }
  SUBCASE("half-2 vs half-3 stays within distance 2") {
    DistanceProfile profile = distance_profile(S, "1", half2(), half3(), 8);
    for (size_t r = 0; r < profile.d.size(); ++r) {
      CHECK(profile.exact[r]);
      CHECK(profile.d[r] <= 2);
    }
  }
  SUBCASE("2/3 vs 1/3 exceeds distance 3 by depth 12") {
    DistanceProfile profile = distance_profile(S, "1", two_thirds(), one_third(), 12, 5, 2000000);
    CHECK(profile.d.back() > 3);
  }
}

TEST_CASE("decide_equal") {
  EquationalSystem S = freyd2();
  SUBCASE("half-2 equals half-3 with a verified certificate") {
    EqualityVerdict verdict = decide_equal(S, "1", half2(), half3(), 10, 5);
    REQUIRE(verdict.tag == EqualityVerdict::Tag::Equal);
    REQUIRE(verdict.certificate.has_value());
    CHECK(verify_span_certificate(S, "1", half2(), half3(), *verdict.certificate, 12));
  }
  SUBCASE("half-1 equals half-2, half-4, half-5") {
    for (const LassoComplex& other : {half2(), half4(), half5()}) {
      EqualityVerdict verdict = decide_equal(S, "1", half1(), other, 10, 5);
      CHECK(verdict.tag == EqualityVerdict::Tag::Equal);
    }
  }
  SUBCASE("an Equal certificate keeps every distance at most 2") {
    EqualityVerdict verdict = decide_equal(S, "1", half2(), half3(), 10, 5);
    REQUIRE(verdict.tag == EqualityVerdict::Tag::Equal);
    DistanceProfile profile = distance_profile(S, "1", half2(), half3(), 8);
    for (int d : profile.d) CHECK(d <= 2);
  }
  SUBCASE("distinct Cantor words separate at the first disagreement") {
    EquationalSystem C = cantor2();
    LassoComplex w1 = lasso("*", {"0", "0", "1"}, {"0"});
    LassoComplex w2 = lasso("*", {"0", "0", "0"}, {"0"});
    EqualityVerdict verdict = decide_equal(C, "*", w1, w2, 10, 5);
    REQUIRE(verdict.tag == EqualityVerdict::Tag::DistinctAtDepth);
    CHECK(verdict.distinct_depth == 3);
  }
  SUBCASE("2/3 vs 1/3: inconclusive with a growing profile") {
    EqualityVerdict verdict = decide_equal(S, "1", two_thirds(), one_third(), 12, 5, 2000000);
    REQUIRE(verdict.tag == EqualityVerdict::Tag::Inconclusive);
    CHECK(verdict.profile.d.back() > 3);
  }
  SUBCASE("2/3 vs a finite-dyadic lasso: inconclusive, strictly growing start") {
    LassoComplex dyadic = lasso("1", {"[0,1/2]", "[1/2,1]", "[1/2,1]", "[1/2,1]"}, {"[0,1/2]"});
    EqualityVerdict verdict = decide_equal(S, "1", two_thirds(), dyadic, 12, 5, 2000000);
    REQUIRE(verdict.tag == EqualityVerdict::Tag::Inconclusive);
    CHECK(verdict.profile.d.back() > 3);
  }
}

TEST_CASE("double-complex coherence on the Freyd system") {
  // Column: half-2. Rows: row_0 = half-1 and row_n = the zero address for
  // n >= 1. Each hypothesis instance [row_n] = [m_{n+1}·row_{n+1}] receives
  // an Equal verdict, and so does the conclusion [row_0] = [column].
  EquationalSystem S = freyd2();
  LassoComplex column = half2();
  LassoComplex zero_addr = lasso("1", {"0"}, {"id"});          // the point 0 at object 1
  LassoComplex zero_tail = lasso("1", {"[0,1/2]", "0"}, {"id"});  // [0,1/2]·0
  // n = 0: m_1 = [1/2,1]; m_1 · row_1 = ([1/2,1]; 0; id...) must equal half-1.
  LassoComplex m1_row1 = lasso("1", {"[1/2,1]", "0"}, {"id"});
  CHECK(decide_equal(S, "1", half1(), m1_row1, 8, 5).tag == EqualityVerdict::Tag::Equal);
  // n >= 1: m_{n+1} = [0,1/2]; [0,1/2]·row = zero_tail must equal row = zero_addr.
  CHECK(decide_equal(S, "1", zero_addr, zero_tail, 8, 5).tag == EqualityVerdict::Tag::Equal);
  // Conclusion.
  CHECK(decide_equal(S, "1", half1(), column, 8, 5).tag == EqualityVerdict::Tag::Equal);
}

TEST_CASE("canonical representation at truncation: half-1 is initial among the "
          "depth-3 representations of 1/2") {
  EquationalSystem S = freyd2();
  const Module& M = S.module;
  TruncatedComplexCategory I3 = truncated_complex_category(S, "1", 3);
  std::vector<Id> half_reps;
  for (const LassoComplex& L : {half1(), half2(), half3(), half4(), half5(),
                                lasso("1", {"[0,1/2]", "[1/2,1]", "1"}, {"id"}),
                                lasso("1", {"[1/2,1]", "[0,1/2]", "0"}, {"id"})}) {
    Id name = unroll(M, L, 3).name(M);
    if (std::find(half_reps.begin(), half_reps.end(), name) == half_reps.end())
      half_reps.push_back(name);
  }
  CHECK(half_reps.size() == 7);
  FinCategory sub = full_subcategory(I3.cat, half_reps);
  auto initials = initial_object_per_component(sub);
  REQUIRE(initials.size() == 1);
  REQUIRE(initials.begin()->second.has_value());
  CHECK(*initials.begin()->second == unroll(M, half1(), 3).name(M));
  // The whole of I_3(1) is connected and therefore has no initial object:
  // the half-1 truncation has no arrow to the [0,1/2]^3 chain.
  auto global = initial_object_per_component(I3.cat);
  REQUIRE(global.size() == 1);
  CHECK_FALSE(global.begin()->second.has_value());
}

TEST_CASE("koenig_select") {
  SUBCASE("constant two-point system with alternating picks") {
    InverseSystemLevels sys;
    sys.levels.assign(10, {"0", "1"});
    sys.maps.assign(9, {{"0", "0"}, {"1", "1"}});
    std::vector<Id> picks;
    for (int n = 0; n < 10; ++n) picks.push_back(n % 2 == 0 ? "1" : "0");
    // Window scan: five 0s and five 1s at r=0; recurrence ties break to the
    // least id.
    std::vector<Id> thread = koenig_select(sys, picks);
    for (const Id& y : thread) CHECK(y == "0");
  }
  SUBCASE("singleton levels give the unique thread") {
    InverseSystemLevels sys;
    sys.levels.assign(5, {"s"});
    sys.maps.assign(4, {{"s", "s"}});
    std::vector<Id> picks(5, "s");
    std::vector<Id> thread = koenig_select(sys, picks);
    CHECK(thread == std::vector<Id>(5, "s"));
  }
  SUBCASE("growing levels with truncating projections") {
    // Levels {0..r}, pr = min(·, r), picks x_n = n: the thread has y_r = r.
    InverseSystemLevels sys;
    int depth = 6;
    for (int r = 0; r < depth; ++r) {
      std::vector<Id> level;
      for (int v = 0; v <= r; ++v) level.push_back(std::to_string(v));
      sys.levels.push_back(level);
    }
    for (int r = 0; r + 1 < depth; ++r) {
      std::map<Id, Id> pr;
      for (int v = 0; v <= r + 1; ++v) pr[std::to_string(v)] = std::to_string(std::min(v, r));
      sys.maps.push_back(pr);
    }
    std::vector<Id> picks;
    for (int n = 0; n < depth; ++n) picks.push_back(std::to_string(n));
    std::vector<Id> thread = koenig_select(sys, picks);
    for (int r = 0; r < depth; ++r) CHECK(thread[static_cast<size_t>(r)] == std::to_string(r));
  }
  SUBCASE("the output is a genuine thread") {
    InverseSystemLevels sys;
    sys.levels = {{"a", "b"}, {"a0", "a1", "b0"}, {"x", "y", "z"}};
    sys.maps = {{{"a0", "a"}, {"a1", "a"}, {"b0", "b"}},
                {{"x", "a0"}, {"y", "a1"}, {"z", "b0"}}};
    std::vector<Id> picks = {"b", "a1", "x"};
    std::vector<Id> thread = koenig_select(sys, picks);
    for (size_t r = 0; r + 1 < thread.size(); ++r)
      CHECK(sys.maps[r].at(thread[r + 1]) == thread[r]);
  }
  SUBCASE("empty level is a precondition error") {
    InverseSystemLevels sys;
    sys.levels = {{"a"}, {}};
    sys.maps = {{}};
    CHECK_THROWS_AS(koenig_select(sys, {"a", "a"}), PreconditionError);
  }
}

TEST_CASE("ladder re-verification") {
  EquationalSystem S = freyd2();
  const Module& M = S.module;
  // The paper's connecting diagram: half-1 -> half-3 with rungs sigma.
  TruncatedComplex from = unroll(M, half1(), 3);
  TruncatedComplex to = unroll(M, half3(), 3);
  std::vector<LadderMorphism> ladders = enumerate_ladders(M, from, to, 10000);
  REQUIRE_FALSE(ladders.empty());
  for (const LadderMorphism& ladder : ladders) CHECK(verify_ladder(M, from, to, ladder));
}
