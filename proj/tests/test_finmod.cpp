#include "selfsim/finmod.hpp"

#include <random>

#include "doctest.h"
#include "selfsim/catalog.hpp"

using namespace selfsim;

namespace {

EquationalSystem freyd2() { return catalog::build("freyd(2)").system; }

// Independent oracle: brute-force closure of the generating relation
// (mg, x) ~ (m, gx) by repeated scanning, no union-find.
std::vector<std::vector<int>> tensor_oracle(const Module& M, const SetFunctor& X, int obj) {
  const FinCategory& cat = M.base();
  struct P {
    int sector, elem;
  };
  std::vector<P> pairs;
  for (int m : M.sectors_into(obj))
    for (int x = 0; x < static_cast<int>(X.elements(M.src(m)).size()); ++x)
      pairs.push_back({m, x});
  auto index_of = [&](int m, int x) {
    for (int i = 0; i < static_cast<int>(pairs.size()); ++i)
      if (pairs[static_cast<size_t>(i)].sector == m && pairs[static_cast<size_t>(i)].elem == x)
        return i;
    return -1;
  };
  std::vector<int> cls(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) cls[i] = static_cast<int>(i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int m : M.sectors_into(obj)) {
      int b = M.src(m);
      for (int g : cat.arrows_into(b)) {
        int mg = M.right(m, g);
        for (int x = 0; x < static_cast<int>(X.elements(cat.src(g)).size()); ++x) {
          int i = index_of(mg, x);
          int j = index_of(m, X.apply(g, x));
          int lo = std::min(cls[static_cast<size_t>(i)], cls[static_cast<size_t>(j)]);
          int hi = std::max(cls[static_cast<size_t>(i)], cls[static_cast<size_t>(j)]);
          if (lo != hi) {
            for (auto& c : cls)
              if (c == hi) c = lo;
            changed = true;
          }
        }
      }
    }
  }
  std::map<int, std::vector<int>> groups;
  for (size_t i = 0; i < pairs.size(); ++i) groups[cls[i]].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(members);
  return out;
}

// Compare oracle partition with tensor() classes via pairwise same-class
// relations.
void check_tensor_against_oracle(const Module& M, const SetFunctor& X) {
  TensorResult T = tensor(M, X);
  const FinCategory& cat = M.base();
  for (int obj = 0; obj < cat.num_objects(); ++obj) {
    auto oracle = tensor_oracle(M, X, obj);
    int oracle_classes = static_cast<int>(oracle.size());
    CHECK(T.num_classes(obj) == oracle_classes);
    // Rebuild the pair list in the oracle's order.
    struct P {
      int sector, elem;
    };
    std::vector<P> pairs;
    for (int m : M.sectors_into(obj))
      for (int x = 0; x < static_cast<int>(X.elements(M.src(m)).size()); ++x)
        pairs.push_back({m, x});
    std::vector<int> oracle_class_of(pairs.size());
    for (int c = 0; c < oracle_classes; ++c)
      for (int i : oracle[static_cast<size_t>(c)]) oracle_class_of[static_cast<size_t>(i)] = c;
    for (size_t i = 0; i < pairs.size(); ++i)
      for (size_t j = 0; j < pairs.size(); ++j) {
        bool same_oracle = oracle_class_of[i] == oracle_class_of[j];
        int ci = T.class_of(obj, T.pair_index(obj, pairs[i].sector, pairs[i].elem));
        int cj = T.class_of(obj, T.pair_index(obj, pairs[j].sector, pairs[j].elem));
        CHECK(same_oracle == (ci == cj));
      }
  }
}

}  // namespace

TEST_CASE("validate_module accepts the Freyd module") {
  EquationalSystem S = freyd2();
  CHECK(validate_module(S.module).ok());
}

TEST_CASE("redirected Freyd action cannot violate the axioms on 0 ⇉ 1") {
  // [0,1/2]·sigma redirected to 1/2. The category 0 ⇉ 1 has no composable
  // nonidentity pairs, so none of the five axiom families constrains the
  // nonidentity action entries: the corrupted table is a different (valid)
  // module, not an axiom violation.
  auto cat = std::make_shared<const FinCategory>(
      FinCategory::make({"0", "1"}, {{"sigma", "0", "1"}, {"tau", "0", "1"}}, {}));
  std::vector<Sector> sectors = {{"id", "0", "0"},      {"0", "0", "1"},   {"1/2", "0", "1"},
                                 {"1", "0", "1"},       {"[0,1/2]", "1", "1"},
                                 {"[1/2,1]", "1", "1"}};
  std::map<std::pair<Id, Id>, Id> left, right;
  left[{"sigma", "id"}] = "0";
  left[{"tau", "id"}] = "1";
  right[{"[0,1/2]", "sigma"}] = "1/2";  // corrupted (the Freyd table has 0)
  right[{"[0,1/2]", "tau"}] = "1/2";
  right[{"[1/2,1]", "sigma"}] = "1/2";
  right[{"[1/2,1]", "tau"}] = "1";
  Module M = Module::make(cat, sectors, left, right);
  CHECK(validate_module(M).ok());
}

TEST_CASE("validate_module catches a genuine (fm)g != f(mg) violation") {
  auto cat = std::make_shared<const FinCategory>(FinCategory::make(
      {"bp", "b", "a", "ap"}, {{"g", "bp", "b"}, {"f", "a", "ap"}}, {}));
  std::vector<Sector> sectors = {{"m", "b", "a"},   {"mg", "bp", "a"},  {"fm", "b", "ap"},
                                 {"s1", "bp", "ap"}, {"s2", "bp", "ap"}};
  std::map<std::pair<Id, Id>, Id> left, right;
  left[{"f", "m"}] = "fm";
  left[{"f", "mg"}] = "s2";
  right[{"m", "g"}] = "mg";
  right[{"fm", "g"}] = "s1";  // (fm)g = s1 but f(mg) = s2
  Module M = Module::make(cat, sectors, left, right);
  ValidationReport report = validate_module(M);
  REQUIRE_FALSE(report.ok());
  bool found = false;
  for (const auto& v : report.violations)
    if (v.message.find("(fm)g") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("validate_module reports missing action entries") {
  auto cat = std::make_shared<const FinCategory>(
      FinCategory::make({"0", "1"}, {{"sigma", "0", "1"}}, {}));
  std::vector<Sector> sectors = {{"m", "0", "0"}};
  // sigma acts on m: entry required but absent.
  Module M = Module::make(cat, sectors, {}, {});
  ValidationReport report = validate_module(M);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().kind == Violation::Kind::MissingEntry);
}

TEST_CASE("hom-module of a finite category validates") {
  auto cat = std::make_shared<const FinCategory>(
      FinCategory::make({"0", "1"}, {{"sigma", "0", "1"}, {"tau", "0", "1"}}, {}));
  std::vector<Sector> sectors;
  std::map<std::pair<Id, Id>, Id> left, right;
  for (const Arrow& a : cat->arrows()) sectors.push_back({"s_" + a.id, a.src, a.tgt});
  for (const Arrow& f : cat->arrows())
    for (const Arrow& m : cat->arrows()) {
      if (f.src == m.tgt && !(f.id.rfind("id_", 0) == 0)) {
        int h = cat->compose(cat->arrow_index(f.id), cat->arrow_index(m.id));
        left[{f.id, "s_" + m.id}] = "s_" + cat->arrow(h).id;
      }
      if (f.tgt == m.src && !(f.id.rfind("id_", 0) == 0)) {
        int h = cat->compose(cat->arrow_index(m.id), cat->arrow_index(f.id));
        right[{"s_" + m.id, f.id}] = "s_" + cat->arrow(h).id;
      }
    }
  Module M = Module::make(cat, sectors, left, right);
  CHECK(validate_module(M).ok());
}

TEST_CASE("check_module_finite counts diagrams b' -> b ⇸ a") {
  EquationalSystem S = freyd2();
  auto counts = check_module_finite(S.module);
  CHECK(counts.at("1") == 9);  // 3 sectors from 0 (1 arrow in) + 2 from 1 (3 arrows in)
  CHECK(counts.at("0") == 1);
  EquationalSystem cantor = catalog::build("cantor(2)").system;
  CHECK(check_module_finite(cantor.module).at("*") == 2);
  // Empty module.
  auto cat = std::make_shared<const FinCategory>(FinCategory::make({"a"}, {}, {}));
  Module empty = Module::make(cat, {}, {}, {});
  CHECK(check_module_finite(empty).at("a") == 0);
}

TEST_CASE("check_module_nondegenerate") {
  SUBCASE("Freyd module is nondegenerate") {
    CHECK_FALSE(check_module_nondegenerate(freyd2().module).has_value());
  }
  SUBCASE("Sierpinski(2) module is nondegenerate") {
    CHECK_FALSE(
        check_module_nondegenerate(catalog::build("sierpinski(2)").system.module).has_value());
  }
  SUBCASE("one sector hit by both arrows fails ND2") {
    auto cat = std::make_shared<const FinCategory>(
        FinCategory::make({"0", "1"}, {{"sigma", "0", "1"}, {"tau", "0", "1"}}, {}));
    // Sectors: m: 0 ⇸ 0 and w: 0 ⇸ 1 with sigma·m = tau·m = w.
    std::vector<Sector> sectors = {{"m", "0", "0"}, {"w", "0", "1"}};
    std::map<std::pair<Id, Id>, Id> left, right;
    left[{"sigma", "m"}] = "w";
    left[{"tau", "m"}] = "w";
    Module M = Module::make(cat, sectors, left, right);
    REQUIRE(validate_module(M).ok());
    auto witness = check_module_nondegenerate(M);
    REQUIRE(witness.has_value());
    CHECK(witness->source == "0");
  }
}

TEST_CASE("tensor: Freyd module against the two-point functor") {
  EquationalSystem S = freyd2();
  SetFunctor X = SetFunctor::make(S.category, {{"0", {"*"}}, {"1", {"u", "v"}}},
                                  {{{"sigma", "*"}, "u"}, {{"tau", "*"}, "v"}});
  REQUIRE(X.validate().ok());
  TensorResult T = tensor(S.module, X);
  const FinCategory& cat = *S.category;
  CHECK(T.num_classes(cat.object_index("1")) == 3);
  CHECK(T.num_classes(cat.object_index("0")) == 1);
  check_tensor_against_oracle(S.module, X);
  // The middle class merges 1/2 ⊗ *, [0,1/2] ⊗ v and [1/2,1] ⊗ u.
  int obj = cat.object_index("1");
  const Module& M = S.module;
  int middle = T.class_of(obj, T.pair_index(obj, M.sector_index("1/2"), 0));
  CHECK(T.class_of(obj, T.pair_index(obj, M.sector_index("[0,1/2]"), 1)) == middle);
  CHECK(T.class_of(obj, T.pair_index(obj, M.sector_index("[1/2,1]"), 0)) == middle);
}

TEST_CASE("tensor over a discrete base multiplies cardinalities") {
  EquationalSystem S = catalog::build("cantor(3)").system;
  SetFunctor X = SetFunctor::make(S.category, {{"*", {"a", "b"}}}, {});
  TensorResult T = tensor(S.module, X);
  CHECK(T.num_classes(0) == 6);  // 3 sectors × 2 elements, no merging
  check_tensor_against_oracle(S.module, X);
}

TEST_CASE("tensor with a representable recovers the hom functor") {
  EquationalSystem S = freyd2();
  for (const Id& b : S.category->objects()) {
    SetFunctor X = representable(S.category, b);
    TensorResult T = tensor(S.module, X);
    SetFunctor H = S.module.hom_from(b);
    for (int o = 0; o < S.category->num_objects(); ++o)
      CHECK(T.num_classes(o) == static_cast<int>(H.elements(o).size()));
  }
}

TEST_CASE("tensor_presheaf") {
  EquationalSystem S = freyd2();
  SetFunctor X = SetFunctor::make(S.category, {{"0", {"*"}}, {"1", {"u", "v"}}},
                                  {{{"sigma", "*"}, "u"}, {{"tau", "*"}, "v"}});
  SUBCASE("Y = M(-, a) recovers tensor(M, X) at a") {
    SetFunctor Y = S.module.hom_into("1");
    PresheafTensor P = tensor_presheaf(Y, X);
    TensorResult T = tensor(S.module, X);
    CHECK(static_cast<int>(P.classes.size()) == T.num_classes(S.category->object_index("1")));
  }
  SUBCASE("constant presheaf on a discrete base is the disjoint sum") {
    EquationalSystem D = catalog::build("cantor(2)").system;
    auto op = std::make_shared<const FinCategory>(opposite(*D.category));
    SetFunctor Y = SetFunctor::make(op, {{"*", {"y"}}}, {});
    SetFunctor Z = SetFunctor::make(D.category, {{"*", {"a", "b", "c"}}}, {});
    PresheafTensor P = tensor_presheaf(Y, Z);
    CHECK(P.classes.size() == 3);
  }
  SUBCASE("density: A(-, a) ⊗ X ≅ X(a)") {
    // Presheaf A(-, a) on the opposite category with right actions by
    // precomposition.
    for (const Id& a : S.category->objects()) {
      auto op = std::make_shared<const FinCategory>(opposite(*S.category));
      SetFunctor Y = representable(op, a);  // A^op(a, -) = A(-, a)
      PresheafTensor P = tensor_presheaf(Y, X);
      int ai = S.category->object_index(a);
      CHECK(P.classes.size() == X.elements(ai).size());
    }
  }
}

TEST_CASE("product_system") {
  SUBCASE("cantor(2) × cantor(3): one object, six sectors") {
    EquationalSystem P =
        product_system(catalog::build("cantor(2)").system, catalog::build("cantor(3)").system);
    CHECK(P.category->num_objects() == 1);
    CHECK(P.module.num_sectors() == 6);
  }
  SUBCASE("freyd × freyd: four objects, 4 top sectors at (1,1)") {
    EquationalSystem P = product_system(freyd2(), freyd2());
    CHECK(P.category->num_objects() == 4);
    const Module& M = P.module;
    int count = 0;
    int obj = P.category->object_index("(1,1)");
    for (int m : M.sectors_into(obj))
      if (M.src(m) == obj) ++count;
    CHECK(count == 4);  // 2·2 top-dimensional sectors
    CHECK(validate_module(M).ok());
  }
  SUBCASE("unit law: S × terminal ≅ S up to relabeling") {
    auto cat = std::make_shared<const FinCategory>(FinCategory::make({"t"}, {}, {}));
    Module unit_module = Module::make(cat, {{"u", "t", "t"}}, {}, {});
    EquationalSystem unit{cat, std::move(unit_module), {"terminal", "unit", false}};
    EquationalSystem S = freyd2();
    EquationalSystem P = product_system(S, unit);
    CHECK(P.category->num_objects() == S.category->num_objects());
    CHECK(P.category->num_arrows() == S.category->num_arrows());
    CHECK(P.module.num_sectors() == S.module.num_sectors());
  }
}

TEST_CASE("tensor preserves nondegeneracy on random small systems") {
  // Prop "Set-theoretic endofunctor": M ⊗ X is nondegenerate when both are.
  std::mt19937 rng(20260810);
  EquationalSystem S = freyd2();
  int tested = 0;
  for (int trial = 0; trial < 60 && tested < 20; ++trial) {
    // Random functor on the Freyd category.
    int n0 = 1 + static_cast<int>(rng() % 2);
    int n1 = 1 + static_cast<int>(rng() % 4);
    std::map<Id, std::vector<Id>> on_objects;
    for (int i = 0; i < n0; ++i) on_objects["0"].push_back("a" + std::to_string(i));
    for (int i = 0; i < n1; ++i) on_objects["1"].push_back("b" + std::to_string(i));
    std::map<std::pair<Id, Id>, Id> on_arrows;
    for (int i = 0; i < n0; ++i) {
      on_arrows[{"sigma", "a" + std::to_string(i)}] = "b" + std::to_string(rng() % n1);
      on_arrows[{"tau", "a" + std::to_string(i)}] = "b" + std::to_string(rng() % n1);
    }
    SetFunctor X = SetFunctor::make(S.category, on_objects, on_arrows);
    if (!check_functor_nondegenerate(X).ok()) continue;
    ++tested;
    TensorResult T = tensor(S.module, X);
    CHECK(check_functor_nondegenerate(T.as_functor()).ok());
  }
  CHECK(tested > 0);
}

TEST_CASE("tensor oracle equivalence on randomized systems") {
  // 200 randomized (system, functor) pairs over a pool of small bases
  // (≤3 objects, ≤4 elements per fiber); union-find classes must match the
  // brute-force closure exactly.
  std::mt19937 rng(987654321);
  int done = 0;
  while (done < 200) {
    int which = static_cast<int>(rng() % 3);
    CatPtr base;
    if (which == 0)
      base = std::make_shared<const FinCategory>(FinCategory::make({"a"}, {}, {}));
    else if (which == 1)
      base = std::make_shared<const FinCategory>(
          FinCategory::make({"a", "b"}, {{"f", "a", "b"}}, {}));
    else
      base = std::make_shared<const FinCategory>(FinCategory::make(
          {"a", "b", "c"}, {{"f", "a", "b"}, {"g", "b", "c"}, {"h", "a", "c"}},
          {{{"g"}, {"f"}, {"h"}}}));
    // Random module: random sector counts, random consistent actions built
    // by rejection (validate and retry).
    std::vector<Sector> sectors;
    int sector_count = 1 + static_cast<int>(rng() % 4);
    for (int s = 0; s < sector_count; ++s) {
      Id src = base->objects()[rng() % base->objects().size()];
      Id tgt = base->objects()[rng() % base->objects().size()];
      sectors.push_back({"m" + std::to_string(s), src, tgt});
    }
    std::map<std::pair<Id, Id>, Id> left, right;
    bool feasible = true;
    for (int f = 0; f < base->num_arrows() && feasible; ++f) {
      if (base->is_identity(f)) continue;
      const Arrow& arrow = base->arrow(f);
      for (const Sector& m : sectors) {
        if (m.tgt == arrow.src) {
          std::vector<Id> candidates;
          for (const Sector& r : sectors)
            if (r.src == m.src && r.tgt == arrow.tgt) candidates.push_back(r.id);
          if (candidates.empty()) {
            feasible = false;
            break;
          }
          left[{arrow.id, m.id}] = candidates[rng() % candidates.size()];
        }
        if (m.src == arrow.tgt) {
          std::vector<Id> candidates;
          for (const Sector& r : sectors)
            if (r.tgt == m.tgt && r.src == arrow.src) candidates.push_back(r.id);
          if (candidates.empty()) {
            feasible = false;
            break;
          }
          right[{m.id, arrow.id}] = candidates[rng() % candidates.size()];
        }
      }
    }
    if (!feasible) continue;
    Module M = Module::make(base, sectors, left, right);
    if (!validate_module(M).ok()) continue;
    // Random functor.
    std::map<Id, std::vector<Id>> on_objects;
    for (const Id& o : base->objects()) {
      int k = static_cast<int>(rng() % 5);
      for (int i = 0; i < k; ++i) on_objects[o].push_back(o + std::to_string(i));
    }
    std::map<std::pair<Id, Id>, Id> on_arrows;
    bool functor_ok = true;
    for (int f = 0; f < base->num_arrows() && functor_ok; ++f) {
      if (base->is_identity(f)) continue;
      const Arrow& arrow = base->arrow(f);
      for (const Id& x : on_objects[arrow.src]) {
        const auto& targets = on_objects[arrow.tgt];
        if (targets.empty()) {
          functor_ok = false;
          break;
        }
        on_arrows[{arrow.id, x}] = targets[rng() % targets.size()];
      }
    }
    if (!functor_ok) continue;
    SetFunctor X = SetFunctor::make(base, on_objects, on_arrows);
    if (!X.validate().ok()) continue;
    check_tensor_against_oracle(M, X);
    ++done;
  }
  CHECK(done == 200);
}
