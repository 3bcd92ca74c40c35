#include "selfsim/coalgebra.hpp"

#include "doctest.h"
#include "selfsim/catalog.hpp"
#include "test_util.hpp"

using namespace selfsim;
using namespace selfsim::coalgebra;

namespace {

EquationalSystem freyd2() { return catalog::build("freyd(2)").system; }

// Cantor(2) with depth-3 words and shift-with-padding structure.
Coalgebra cantor_word_coalgebra() {
  EquationalSystem S = catalog::build("cantor(2)").system;
  std::map<Id, std::vector<Id>> on_objects;
  std::map<std::pair<Id, Id>, std::pair<Id, Id>> xi;
  for (int w = 0; w < 8; ++w) {
    std::string word;
    for (int b = 2; b >= 0; --b) word += ((w >> b) & 1) ? "1" : "0";
    on_objects["*"].push_back(word);
  }
  SetFunctor X = SetFunctor::make(S.category, on_objects, {});
  for (const Id& word : on_objects["*"])
    xi[{"*", word}] = {std::string(1, word[0]), word.substr(1) + "0"};
  return Coalgebra::make(S, X, xi);
}

// Freyd coalgebra with the 2/3 – 1/3 orbit and the three endpoints.
Coalgebra freyd_orbit_coalgebra() {
  EquationalSystem S = freyd2();
  SetFunctor X = SetFunctor::make(
      S.category, {{"0", {"*"}}, {"1", {"zero", "third", "twothirds", "one"}}},
      {{{"sigma", "*"}, "zero"}, {{"tau", "*"}, "one"}});
  std::map<std::pair<Id, Id>, std::pair<Id, Id>> xi;
  xi[{"0", "*"}] = {"id", "*"};
  xi[{"1", "zero"}] = {"0", "*"};
  xi[{"1", "one"}] = {"1", "*"};
  xi[{"1", "third"}] = {"[0,1/2]", "twothirds"};
  xi[{"1", "twothirds"}] = {"[1/2,1]", "third"};
  return Coalgebra::make(S, X, xi);
}

}  // namespace

TEST_CASE("validate_coalgebra") {
  SUBCASE("the Cantor word coalgebra is valid") {
    CHECK(validate_coalgebra(cantor_word_coalgebra()).ok());
  }
  SUBCASE("the Freyd orbit coalgebra is valid") {
    CHECK(validate_coalgebra(freyd_orbit_coalgebra()).ok());
  }
  SUBCASE("a structure map violating naturality is reported with the arrow") {
    EquationalSystem S = freyd2();
    SetFunctor X = SetFunctor::make(S.category, {{"0", {"*"}}, {"1", {"zero", "one"}}},
                                    {{{"sigma", "*"}, "zero"}, {{"tau", "*"}, "one"}});
    std::map<std::pair<Id, Id>, std::pair<Id, Id>> xi;
    xi[{"0", "*"}] = {"id", "*"};
    xi[{"1", "zero"}] = {"1/2", "*"};  // should be ("0", *) for naturality at sigma
    xi[{"1", "one"}] = {"1", "*"};
    Coalgebra C = Coalgebra::make(S, X, xi);
    ValidationReport report = validate_coalgebra(C);
    REQUIRE_FALSE(report.ok());
    bool names_sigma = false;
    for (const auto& v : report.violations)
      for (const Id& w : v.witnesses)
        if (w == "sigma") names_sigma = true;
    CHECK(names_sigma);
  }
  SUBCASE("missing structure entries are construction errors") {
    EquationalSystem S = catalog::build("cantor(2)").system;
    SetFunctor X = SetFunctor::make(S.category, {{"*", {"x"}}}, {});
    CHECK_THROWS_AS(Coalgebra::make(S, X, {}), InputError);
  }
}

TEST_CASE("resolutions") {
  SUBCASE("Cantor words resolve uniquely at every depth") {
    Coalgebra C = cantor_word_coalgebra();
    for (int depth = 1; depth <= 5; ++depth)
      CHECK(resolutions(C, "*", "010", depth).size() == 1);
  }
  SUBCASE("an element whose class has three representative pairs has three "
          "depth-1 resolutions") {
    // Add the midpoint to the orbit coalgebra: its ξ-class contains
    // 1/2 ⊗ *, [0,1/2] ⊗ one and [1/2,1] ⊗ zero.
    EquationalSystem S = freyd2();
    SetFunctor X = SetFunctor::make(
        S.category, {{"0", {"*"}}, {"1", {"zero", "half", "one"}}},
        {{{"sigma", "*"}, "zero"}, {{"tau", "*"}, "one"}});
    std::map<std::pair<Id, Id>, std::pair<Id, Id>> xi;
    xi[{"0", "*"}] = {"id", "*"};
    xi[{"1", "zero"}] = {"0", "*"};
    xi[{"1", "one"}] = {"1", "*"};
    xi[{"1", "half"}] = {"1/2", "*"};
    Coalgebra C = Coalgebra::make(S, X, xi);
    REQUIRE(validate_coalgebra(C).ok());
    CHECK(resolutions(C, "1", "half", 1).size() == 3);
    CHECK(check_reso_connected(C, "1", "half", 3).ok);
  }
  SUBCASE("the 2/3 orbit resolves along its eventually periodic complexes") {
    Coalgebra C = freyd_orbit_coalgebra();
    auto all = resolutions(C, "1", "twothirds", 4);
    CHECK(all.size() == 1);  // non-dyadic points have unique representations
    const Module& M = C.system().module;
    CHECK(M.sector(all[0].complex.sectors[0]).id == "[1/2,1]");
    CHECK(M.sector(all[0].complex.sectors[1]).id == "[0,1/2]");
  }
}

TEST_CASE("check_reso_connected on catalog coalgebras") {
  CHECK(check_reso_connected(cantor_word_coalgebra(), "*", "101", 5).ok);
  Coalgebra orbit = freyd_orbit_coalgebra();
  for (const Id& x : {"zero", "third", "twothirds", "one"})
    CHECK(check_reso_connected(orbit, "1", x, 5).ok);
}

TEST_CASE("valid coalgebras on degenerate carriers still have connected Reso") {
  // Tensor-relation generators lift to Reso morphisms by naturality, so a
  // structure map that validates keeps the finite Reso categories connected
  // even when the carrier fails ND. Hom-module on the cofork category,
  // carrier with ρx = ρy = z.
  auto cat = std::make_shared<const FinCategory>(FinCategory::make(
      {"0", "1", "2"},
      {{"sigma", "0", "1"}, {"tau", "0", "1"}, {"rho", "1", "2"}, {"rs", "0", "2"}},
      {{"rho", "sigma", "rs"}, {"rho", "tau", "rs"}}));
  REQUIRE(validate_category(*cat).ok());
  EquationalSystem S = testutil::hom_module_system(cat, "hom(cofork)");
  REQUIRE(validate_module(S.module).ok());
  SetFunctor X = SetFunctor::make(S.category, {{"1", {"x", "y"}}, {"2", {"z"}}, {"0", {}}},
                                  {{{"rho", "x"}, "z"}, {{"rho", "y"}, "z"}});
  REQUIRE_FALSE(check_functor_nondegenerate(X).ok());
  std::map<std::pair<Id, Id>, std::pair<Id, Id>> xi;
  xi[{"1", "x"}] = {"s_id_1", "x"};
  xi[{"1", "y"}] = {"s_id_1", "y"};
  xi[{"2", "z"}] = {"s_rho", "x"};
  Coalgebra C = Coalgebra::make(S, X, xi);
  bool natural = true;
  for (const auto& v : validate_coalgebra(C).violations)
    if (v.message.find("natural") != std::string::npos) natural = false;
  CHECK(natural);
  ResoConnectivity result = check_reso_connected(C, "2", "z", 2);
  CHECK(result.num_resolutions > 1);
  CHECK(result.ok);
}

TEST_CASE("a deliberately degenerate instance yields a disconnection witness") {
  // V-poset a -> c <- b. The carrier merges fp = gp' = r' (ND1 fails: the
  // cospan has no completing square) and the structure map of r is pointed
  // at the class of γ⊗r' while ξ(r') is redirected to the singleton class
  // {(γ, r)} — an intentional naturality violation, without which finite
  // Reso categories stay connected. Reso_2(r) then falls apart into three
  // isolated resolutions.
  auto cat = std::make_shared<const FinCategory>(
      FinCategory::make({"a", "b", "c"}, {{"f", "a", "c"}, {"g", "b", "c"}}, {}));
  std::vector<Sector> sectors = {{"delta", "a", "a"}, {"eps", "b", "b"}, {"alpha", "a", "c"},
                                 {"beta", "b", "c"},  {"gamma", "c", "c"}};
  std::map<std::pair<Id, Id>, Id> left, right;
  left[{"f", "delta"}] = "alpha";
  left[{"g", "eps"}] = "beta";
  right[{"gamma", "f"}] = "alpha";
  right[{"gamma", "g"}] = "beta";
  Module M = Module::make(cat, sectors, left, right);
  REQUIRE(validate_module(M).ok());
  REQUIRE_FALSE(check_module_nondegenerate(M).has_value());
  EquationalSystem S{cat, std::move(M), {"vee", "", false}};
  SetFunctor X = SetFunctor::make(
      S.category, {{"a", {"p"}}, {"b", {"pp"}}, {"c", {"r", "rr"}}},
      {{{"f", "p"}, "rr"}, {{"g", "pp"}, "rr"}});
  REQUIRE_FALSE(check_functor_nondegenerate(X).ok());  // cospan (f, g) cannot complete
  std::map<std::pair<Id, Id>, std::pair<Id, Id>> xi;
  xi[{"a", "p"}] = {"delta", "p"};
  xi[{"b", "pp"}] = {"eps", "pp"};
  xi[{"c", "r"}] = {"gamma", "rr"};  // the class {γ⊗rr, α⊗p, β⊗pp}
  xi[{"c", "rr"}] = {"gamma", "r"};  // unnatural: the singleton class
  Coalgebra C = Coalgebra::make(S, X, xi);
  CHECK_FALSE(validate_coalgebra(C).ok());  // the violation is reported
  ResoConnectivity result = check_reso_connected(C, "c", "r", 2);
  CHECK(result.num_resolutions == 3);
  REQUIRE_FALSE(result.ok);
  CHECK(result.disconnected.has_value());
}

TEST_CASE("terminal_map") {
  SUBCASE("Cantor words map to their literal prefix block") {
    Coalgebra C = cantor_word_coalgebra();
    complexes::ComponentsTower tower = complexes::truncated_components(C.system(), "*", 3);
    TerminalImage image = terminal_map(C, "*", "011", 3, tower);
    CHECK(image.block_representative == "*;0;1;1");
  }
  SUBCASE("Freyd orbit elements all land in the single block of I_n(1)") {
    Coalgebra C = freyd_orbit_coalgebra();
    complexes::ComponentsTower tower = complexes::truncated_components(C.system(), "1", 4);
    REQUIRE(tower.levels[4].num_blocks() == 1);
    for (const Id& x : {"zero", "third", "twothirds", "one"}) {
      TerminalImage image = terminal_map(C, "1", x, 4, tower);
      CHECK(image.block == 0);
    }
  }
  SUBCASE("terminal_map is natural in the arrows at small depth") {
    Coalgebra C = freyd_orbit_coalgebra();
    const FinCategory& cat = *C.system().category;
    const Module& M = C.system().module;
    complexes::ComponentsTower tower0 = complexes::truncated_components(C.system(), "0", 3);
    complexes::ComponentsTower tower1 = complexes::truncated_components(C.system(), "1", 3);
    // block(f·x) = (I_n f)(block(x)) for f = sigma, tau and x = *.
    for (const Id& f : {"sigma", "tau"}) {
      int fi = cat.arrow_index(f);
      TerminalImage at0 = terminal_map(C, "0", "*", 3, tower0);
      // Push the representative complex along f.
      complexes::TruncatedComplex pushed = at0.complex;
      pushed.base_object = cat.tgt(fi);
      pushed.sectors[0] = M.left(fi, pushed.sectors[0]);
      int pushed_block = tower1.levels[3].block_of.at(pushed.name(M));
      int fx = C.carrier().apply(fi, C.carrier().element_index(cat.object_index("0"), "*"));
      Id fx_name = C.carrier().elements(cat.object_index("1"))[static_cast<size_t>(fx)];
      TerminalImage at1 = terminal_map(C, "1", fx_name, 3, tower1);
      CHECK(at1.block == pushed_block);
    }
  }
}

TEST_CASE("check_fixed_point") {
  SUBCASE("level-graded word system is a fixed point") {
    // Objects l0..l3; two sectors per level plus a loop at the deepest
    // level; carrier at level k = words of length 3-k. The structure map
    // splits off the first letter: a bijection at every level.
    std::vector<Id> objects = {"l0", "l1", "l2", "l3"};
    auto cat = std::make_shared<const FinCategory>(FinCategory::make(objects, {}, {}));
    std::vector<Sector> sectors;
    for (int k = 0; k < 3; ++k) {
      sectors.push_back({"a" + std::to_string(k), "l" + std::to_string(k + 1),
                         "l" + std::to_string(k)});
      sectors.push_back({"b" + std::to_string(k), "l" + std::to_string(k + 1),
                         "l" + std::to_string(k)});
    }
    sectors.push_back({"z", "l3", "l3"});
    Module M = Module::make(cat, sectors, {}, {});
    EquationalSystem S{cat, std::move(M), {"graded-words", "", false}};
    std::map<Id, std::vector<Id>> on_objects;
    std::function<void(int, std::string)> emit = [&](int k, std::string word) {
      if (static_cast<int>(word.size()) == 3 - k) {
        on_objects["l" + std::to_string(k)].push_back(word.empty() ? "@" : word);
        return;
      }
      emit(k, word + "a");
      emit(k, word + "b");
    };
    for (int k = 0; k <= 3; ++k) emit(k, "");
    SetFunctor X = SetFunctor::make(S.category, on_objects, {});
    std::map<std::pair<Id, Id>, std::pair<Id, Id>> xi;
    for (int k = 0; k <= 3; ++k)
      for (const Id& word : on_objects["l" + std::to_string(k)]) {
        if (k == 3) {
          xi[{"l3", word}] = {"z", "@"};
        } else {
          std::string tail = word.substr(1);
          xi[{"l" + std::to_string(k), word}] = {word.substr(0, 1) + std::to_string(k),
                                                 tail.empty() ? "@" : tail};
        }
      }
    Coalgebra C = Coalgebra::make(S, X, xi);
    REQUIRE(validate_coalgebra(C).ok());
    FixedPointData fp = check_fixed_point(C);
    CHECK(fp.is_fixed_point);
    CHECK(fp.occupied);
  }
  SUBCASE("the truncated word coalgebra is not a fixed point (injective, not surjective)") {
    FixedPointData fp = check_fixed_point(cantor_word_coalgebra());
    CHECK_FALSE(fp.is_fixed_point);
  }
  SUBCASE("the empty carrier is a vacuous fixed point, flagged unoccupied") {
    EquationalSystem S = catalog::build("cantor(2)").system;
    SetFunctor X = SetFunctor::make(S.category, {{"*", {}}}, {});
    Coalgebra C = Coalgebra::make(S, X, {});
    FixedPointData fp = check_fixed_point(C);
    CHECK(fp.is_fixed_point);
    CHECK_FALSE(fp.occupied);
  }
}

TEST_CASE("representable_coalgebra") {
  SUBCASE("Cantor word lasso at N = 4 has five identity columns") {
    EquationalSystem S = catalog::build("cantor(2)").system;
    complexes::LassoComplex L{"*", {"1", "0"}, {"1"}};
    RepresentableCoalgebra H = representable_coalgebra(S, L, 4);
    CHECK(H.coalgebra.carrier().elements(0).size() == 5);
  }
  SUBCASE("Freyd half-lasso at N = 3: kappa of 1_1 is the half-1 truncation") {
    EquationalSystem S = freyd2();
    complexes::LassoComplex half1{"1", {"1/2"}, {"id"}};
    RepresentableCoalgebra H = representable_coalgebra(S, half1, 3);
    complexes::TruncatedComplex k = H.kappa(0, "id_1", 3);
    CHECK(k.name(S.module) == complexes::unroll(S.module, half1, 3).name(S.module));
    // Carrier occupied wherever complexes exist: representables are nonempty
    // at their own object.
    CHECK_FALSE(H.coalgebra.carrier().elements(S.category->object_index("1")).empty());
  }
  SUBCASE("resolutions through the representable coalgebra follow the lasso") {
    EquationalSystem S = freyd2();
    complexes::LassoComplex half1{"1", {"1/2"}, {"id"}};
    RepresentableCoalgebra H = representable_coalgebra(S, half1, 4);
    Id top = representable_element_id(0, "id_1");
    auto all = resolutions(H.coalgebra, "1", top, 3);
    REQUIRE_FALSE(all.empty());
    bool found = false;
    for (const auto& r : all)
      if (r.complex.name(S.module) ==
          complexes::unroll(S.module, half1, 3).name(S.module))
        found = true;
    CHECK(found);
  }
}
