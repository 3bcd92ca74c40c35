#include "selfsim/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

namespace selfsim::catalog {

using geometry::AffineMap;
using geometry::Mat;
using geometry::Polytope;
using geometry::Rational;
using geometry::Vec;
using recognition::GeometricRealization;
using recognition::ParametricMap;

namespace {

std::string frac(int num, int den) {
  Rational q(num, den);
  q.canonicalize();
  return q.get_str();
}

template <class S>
Polytope<S> point_domain() {
  Polytope<S> p;
  p.vertices.resize(1, 0);
  return p;
}

template <class S>
Polytope<S> interval_domain() {
  Polytope<S> p;
  p.vertices.resize(2, 1);
  p.vertices(0, 0) = S(0);
  p.vertices(1, 0) = S(1);
  return p;
}

template <class S>
AffineMap<S> constant_map(const Vec<S>& value, int src_dim) {
  AffineMap<S> m;
  m.linear = Mat<S>::Zero(value.size(), src_dim);
  m.offset = value;
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

CatalogEntry cantor(int k) {
  if (k < 1 || k > 16) throw InputError("cantor(k) supports 1 <= k <= 16");
  auto cat = std::make_shared<const FinCategory>(FinCategory::make({"*"}, {}, {}));
  std::vector<Sector> sectors;
  for (int m = 0; m < k; ++m) sectors.push_back({std::to_string(m), "*", "*"});
  Module module = Module::make(cat, sectors, {}, {});
  CatalogEntry entry;
  entry.name = "cantor(" + std::to_string(k) + ")";
  entry.system = {cat, std::move(module), {entry.name, "one-object discrete system", false}};
  GeometricRealization<Rational> R;
  R.tolerance = 0;
  R.domains["*"] = interval_domain<Rational>();
  for (int m = 0; m < k; ++m) {
    AffineMap<Rational> map;
    map.linear = Mat<Rational>::Constant(1, 1, geometry::rat(1, 2 * k - 1));
    map.offset = Vec<Rational>::Constant(1, geometry::rat(2 * m, 2 * k - 1));
    R.sector_maps[std::to_string(m)] = map;
  }
  entry.realization = R;
  if (k >= 2)
    entry.expected.push_back({"classification", "Cantor", "PAPER Example rec-terminal"});
  entry.expected.push_back({"stream_count_base", std::to_string(k), "TRIVIAL word count"});
  return entry;
}

CatalogEntry walks(const std::string& rule, int n_max) {
  if (n_max < 2 || n_max > 64) throw InputError("walks requires 2 <= N <= 64");
  discrete::DiscreteSystem D;
  for (int n = 0; n <= n_max; ++n) D.objects.push_back(std::to_string(n));
  if (rule == "original") {
    D.sectors[{"0", "0"}] = {"s0"};
  } else if (rule == "modified") {
    D.sectors[{"1", "0"}] = {"r0"};
  } else {
    throw InputError("walks rule must be 'original' or 'modified'");
  }
  for (int n = 1; n <= n_max; ++n) {
    D.sectors[{std::to_string(n - 1), std::to_string(n)}] = {"l" + std::to_string(n)};
    if (n + 1 <= n_max)
      D.sectors[{std::to_string(n + 1), std::to_string(n)}] = {"r" + std::to_string(n)};
  }
  D.truncated = true;
  for (int n = 0; n <= n_max; ++n) D.boundary_distance[std::to_string(n)] = n_max - n;
  CatalogEntry entry;
  entry.name = "walks(" + rule + "," + std::to_string(n_max) + ")";
  entry.system = discrete::to_equational_system(D, entry.name);
  entry.note = "truncated stand-in for walks on the natural numbers";
  if (rule == "original")
    entry.expected.push_back({"class(0)", "Singleton", "PAPER §1: W0 is the one-point space"});
  else
    entry.expected.push_back(
        {"interior_class", "Cantor", "PAPER Example walks-newrule: homeomorphic to Cantor set"});
  return entry;
}

CatalogEntry freyd(int k) {
  if (k < 2 || k > 16) throw InputError("freyd(k) supports 2 <= k <= 16");
  auto cat = std::make_shared<const FinCategory>(
      FinCategory::make({"0", "1"}, {{"sigma", "0", "1"}, {"tau", "0", "1"}}, {}));
  std::vector<Sector> sectors;
  sectors.push_back({"id", "0", "0"});
  std::vector<Id> points, intervals;
  for (int j = 0; j <= k; ++j) points.push_back(frac(j, k));
  for (int j = 0; j < k; ++j) intervals.push_back("[" + frac(j, k) + "," + frac(j + 1, k) + "]");
  for (const Id& p : points) sectors.push_back({p, "0", "1"});
  for (const Id& i : intervals) sectors.push_back({i, "1", "1"});
  std::map<std::pair<Id, Id>, Id> left, right;
  left[{"sigma", "id"}] = points.front();
  left[{"tau", "id"}] = points.back();
  for (int j = 0; j < k; ++j) {
    right[{intervals[static_cast<size_t>(j)], "sigma"}] = points[static_cast<size_t>(j)];
    right[{intervals[static_cast<size_t>(j)], "tau"}] = points[static_cast<size_t>(j + 1)];
  }
  Module module = Module::make(cat, sectors, left, right);
  CatalogEntry entry;
  entry.name = "freyd(" + std::to_string(k) + ")";
  entry.system = {cat, std::move(module), {entry.name, "interval system", false}};
  GeometricRealization<Rational> R;
  R.tolerance = 0;
  R.domains["0"] = point_domain<Rational>();
  R.domains["1"] = interval_domain<Rational>();
  R.sector_maps["id"] = AffineMap<Rational>{Mat<Rational>::Zero(0, 0), Vec<Rational>::Zero(0)};
  for (int j = 0; j <= k; ++j)
    R.sector_maps[points[static_cast<size_t>(j)]] =
        constant_map<Rational>(Vec<Rational>::Constant(1, geometry::rat(j, k)), 0);
  for (int j = 0; j < k; ++j) {
    AffineMap<Rational> map;
    map.linear = Mat<Rational>::Constant(1, 1, geometry::rat(1, k));
    map.offset = Vec<Rational>::Constant(1, geometry::rat(j, k));
    R.sector_maps[intervals[static_cast<size_t>(j)]] = map;
  }
  R.arrow_maps["sigma"] = constant_map<Rational>(Vec<Rational>::Constant(1, Rational(0)), 0);
  R.arrow_maps["tau"] = constant_map<Rational>(Vec<Rational>::Constant(1, Rational(1)), 0);
  entry.realization = R;
  if (k == 2) {
    entry.expected.push_back({"sectors(0,0)", "1", "PAPER Eq. Freyd-SSS"});
    entry.expected.push_back({"sectors(0,1)", "3", "PAPER Eq. Freyd-SSS"});
    entry.expected.push_back({"sectors(1,0)", "0", "PAPER Eq. Freyd-SSS"});
    entry.expected.push_back({"sectors(1,1)", "2", "PAPER Eq. Freyd-SSS"});
    entry.expected.push_back({"contraction", "0.5", "PAPER Example rec-Freyd: t/2"});
    entry.expected.push_back({"components(1,n<=6)", "1", "PAPER Example construction-Freyd"});
  }
  return entry;
}

CatalogEntry circle() {
  auto cat = std::make_shared<const FinCategory>(
      FinCategory::make({"0", "1", "2"}, {{"sigma", "0", "1"}, {"tau", "0", "1"}}, {}));
  std::vector<Sector> sectors = {{"id", "0", "0"},      {"0", "0", "1"},   {"1/2", "0", "1"},
                                 {"1", "0", "1"},       {"[0,1/2]", "1", "1"},
                                 {"[1/2,1]", "1", "1"}, {"c0", "0", "2"},  {"arc", "1", "2"}};
  std::map<std::pair<Id, Id>, Id> left, right;
  left[{"sigma", "id"}] = "0";
  left[{"tau", "id"}] = "1";
  right[{"[0,1/2]", "sigma"}] = "0";
  right[{"[0,1/2]", "tau"}] = "1/2";
  right[{"[1/2,1]", "sigma"}] = "1/2";
  right[{"[1/2,1]", "tau"}] = "1";
  right[{"arc", "sigma"}] = "c0";
  right[{"arc", "tau"}] = "c0";
  Module module = Module::make(cat, sectors, left, right);
  CatalogEntry entry;
  entry.name = "circle";
  entry.system = {cat, std::move(module), {entry.name, "interval system plus coequalizer", false}};
  GeometricRealization<double> R;
  R.tolerance = 0.01;
  R.domains["0"] = point_domain<double>();
  R.domains["1"] = interval_domain<double>();
  // S^1 scaled to radius 1/8; domain is the inscribed 16-gon of the circle.
  const double radius = 0.125;
  Polytope<double> gon;
  gon.vertices.resize(16, 2);
  for (int i = 0; i < 16; ++i) {
    double t = 2.0 * std::numbers::pi * i / 16.0;
    gon.vertices(i, 0) = radius * std::cos(t);
    gon.vertices(i, 1) = radius * std::sin(t);
  }
  R.domains["2"] = gon;
  R.sector_maps["id"] = AffineMap<double>{Mat<double>::Zero(0, 0), Vec<double>::Zero(0)};
  for (const auto& [name, value] :
       std::vector<std::pair<Id, double>>{{"0", 0.0}, {"1/2", 0.5}, {"1", 1.0}})
    R.sector_maps[name] = constant_map<double>(Vec<double>::Constant(1, value), 0);
  R.sector_maps["[0,1/2]"] =
      AffineMap<double>{Mat<double>::Constant(1, 1, 0.5), Vec<double>::Zero(1)};
  R.sector_maps["[1/2,1]"] =
      AffineMap<double>{Mat<double>::Constant(1, 1, 0.5), Vec<double>::Constant(1, 0.5)};
  Vec<double> c0point(2);
  c0point << radius, 0.0;
  R.sector_maps["c0"] = constant_map<double>(c0point, 0);
  ParametricMap arc;
  arc.lipschitz = 2.0 * std::numbers::pi * radius + 1e-3;  // chordwise bound
  arc.fn = [radius](const Eigen::VectorXd& t) {
    Eigen::VectorXd out(2);
    out << radius * std::cos(2.0 * std::numbers::pi * t(0)),
        radius * std::sin(2.0 * std::numbers::pi * t(0));
    return out;
  };
  R.sector_maps["arc"] = arc;
  R.arrow_maps["sigma"] = constant_map<double>(Vec<double>::Constant(1, 0.0), 0);
  R.arrow_maps["tau"] = constant_map<double>(Vec<double>::Constant(1, 1.0), 0);
  entry.realization = R;
  entry.note = "quotient sector map is declared-Lipschitz (scaled metric)";
  return entry;
}

namespace {

Id pair_sector_name(int i, int j) {
  if (i > j) std::swap(i, j);
  return "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

}  // namespace

CatalogEntry sierpinski(int n) {
  if (n < 1 || n > 3) throw InputError("sierpinski(n) supports 1 <= n <= 3");
  std::vector<Arrow> arrows;
  for (int i = 0; i <= n; ++i) arrows.push_back({"s" + std::to_string(i), "0", "1"});
  auto cat = std::make_shared<const FinCategory>(FinCategory::make({"0", "1"}, arrows, {}));
  std::vector<Sector> sectors = {{"id", "0", "0"}};
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) sectors.push_back({pair_sector_name(i, j), "0", "1"});
  for (int i = 0; i <= n; ++i) sectors.push_back({"h" + std::to_string(i), "1", "1"});
  std::map<std::pair<Id, Id>, Id> left, right;
  for (int i = 0; i <= n; ++i) left[{"s" + std::to_string(i), "id"}] = pair_sector_name(i, i);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      right[{"h" + std::to_string(j), "s" + std::to_string(i)}] = pair_sector_name(j, i);
  Module module = Module::make(cat, sectors, left, right);
  CatalogEntry entry;
  entry.name = "sierpinski(" + std::to_string(n) + ")";
  entry.system = {cat, std::move(module), {entry.name, "Sierpinski simplex system", false}};
  GeometricRealization<Rational> R;
  R.tolerance = 0;
  R.domains["0"] = point_domain<Rational>();
  Polytope<Rational> simplex;
  simplex.vertices = Mat<Rational>::Zero(n + 1, n);
  for (int i = 1; i <= n; ++i) simplex.vertices(i, i - 1) = 1;
  R.domains["1"] = simplex;
  auto vertex = [&](int i) { return Vec<Rational>(simplex.vertices.row(i).transpose()); };
  R.sector_maps["id"] = AffineMap<Rational>{Mat<Rational>::Zero(0, 0), Vec<Rational>::Zero(0)};
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      R.sector_maps[pair_sector_name(i, j)] =
          constant_map<Rational>(((vertex(i) + vertex(j)) / Rational(2)).eval(), 0);
  for (int i = 0; i <= n; ++i) {
    AffineMap<Rational> map;
    map.linear = Mat<Rational>::Identity(n, n) / Rational(2);
    map.offset = (vertex(i) / Rational(2)).eval();
    R.sector_maps["h" + std::to_string(i)] = map;
  }
  for (int i = 0; i <= n; ++i)
    R.arrow_maps["s" + std::to_string(i)] = constant_map<Rational>(vertex(i), 0);
  entry.realization = R;
  if (n == 2) {
    entry.expected.push_back({"sectors_at_1_from_1", "3", "PAPER Example rec-Sierpinski"});
    entry.expected.push_back({"contraction", "0.5", "PAPER Example rec-Sierpinski: factor 1/2"});
  }
  return entry;
}

CatalogEntry ifs(const IfsSpec& spec) {
  int n = static_cast<int>(spec.maps.size()) - 1;
  if (n < 0) throw InputError("ifs requires at least one map");
  // Affine maps and their fixed points (I - A) s = b, solved exactly.
  std::vector<AffineMap<Rational>> maps;
  std::vector<Vec<Rational>> fixed;
  for (const auto& [a_rows, b_vals] : spec.maps) {
    AffineMap<Rational> m;
    m.linear.resize(spec.dim, spec.dim);
    m.offset.resize(spec.dim);
    for (int i = 0; i < spec.dim; ++i) {
      for (int j = 0; j < spec.dim; ++j) {
        m.linear(i, j) = a_rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
        m.linear(i, j).canonicalize();
      }
      m.offset(i) = b_vals[static_cast<size_t>(i)];
      m.offset(i).canonicalize();
    }
    if (geometry::spectral_norm(m.linear) >= 1.0)
      throw InputError("ifs map is not a contraction");
    // Gaussian elimination on (I - A) s = b.
    Mat<Rational> lhs = Mat<Rational>::Identity(spec.dim, spec.dim) - m.linear;
    Vec<Rational> rhs = m.offset;
    for (int col = 0; col < spec.dim; ++col) {
      int pivot = -1;
      for (int r = col; r < spec.dim; ++r)
        if (lhs(r, col) != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) throw InputError("ifs map has no unique fixed point");
      lhs.row(pivot).swap(lhs.row(col));
      std::swap(rhs(pivot), rhs(col));
      for (int r = 0; r < spec.dim; ++r) {
        if (r == col || lhs(r, col) == 0) continue;
        Rational factor = lhs(r, col) / lhs(col, col);
        lhs.row(r) -= factor * lhs.row(col);
        rhs(r) -= factor * rhs(col);
      }
    }
    Vec<Rational> s(spec.dim);
    for (int i = 0; i < spec.dim; ++i) s(i) = rhs(i) / lhs(i, i);
    maps.push_back(std::move(m));
    fixed.push_back(std::move(s));
  }
  for (size_t i = 0; i < fixed.size(); ++i)
    for (size_t j = i + 1; j < fixed.size(); ++j)
      if (fixed[i] == fixed[j]) throw InputError("ifs fixed points are not distinct");
  // Union-find over the pairs (i, j) from the declared relation, each
  // declared identity verified exactly.
  auto key = [&](int i, int j) { return i * (n + 1) + j; };
  std::vector<int> parent(static_cast<size_t>((n + 1) * (n + 1)));
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int v) {
    while (parent[static_cast<size_t>(v)] != v) v = parent[static_cast<size_t>(v)];
    return v;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  };
  for (const auto& [i, j, i2, j2] : spec.relation) {
    if (maps[static_cast<size_t>(i)].apply(fixed[static_cast<size_t>(j)]) !=
        maps[static_cast<size_t>(i2)].apply(fixed[static_cast<size_t>(j2)]))
      throw InputError("declared ifs relation is not satisfied by the maps");
    unite(key(i, j), key(i2, j2));
  }
  auto class_name = [&](int i, int j) { return "p" + std::to_string(find(key(i, j))); };
  std::vector<Arrow> arrows;
  for (int i = 0; i <= n; ++i) arrows.push_back({"s" + std::to_string(i), "0", "1"});
  auto cat = std::make_shared<const FinCategory>(FinCategory::make({"0", "1"}, arrows, {}));
  std::vector<Sector> sectors = {{"id", "0", "0"}};
  std::set<Id> emitted;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (emitted.insert(class_name(i, j)).second) sectors.push_back({class_name(i, j), "0", "1"});
  for (int i = 0; i <= n; ++i) sectors.push_back({"h" + std::to_string(i), "1", "1"});
  std::map<std::pair<Id, Id>, Id> left, right;
  for (int i = 0; i <= n; ++i) left[{"s" + std::to_string(i), "id"}] = class_name(i, i);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      right[{"h" + std::to_string(j), "s" + std::to_string(i)}] = class_name(j, i);
  Module module = Module::make(cat, sectors, left, right);
  CatalogEntry entry;
  entry.name = "ifs";
  entry.system = {cat, std::move(module), {entry.name, "iterated function system", false}};
  GeometricRealization<Rational> R;
  R.tolerance = 0;
  R.domains["0"] = point_domain<Rational>();
  Polytope<Rational> hull;
  hull.vertices.resize(n + 1, spec.dim);
  for (int i = 0; i <= n; ++i) hull.vertices.row(i) = fixed[static_cast<size_t>(i)].transpose();
  R.domains["1"] = hull;
  R.sector_maps["id"] = AffineMap<Rational>{Mat<Rational>::Zero(0, 0), Vec<Rational>::Zero(0)};
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      Id cname = class_name(i, j);
      if (!R.sector_maps.count(cname))
        R.sector_maps[cname] = constant_map<Rational>(
            maps[static_cast<size_t>(i)].apply(fixed[static_cast<size_t>(j)]), 0);
    }
  for (int i = 0; i <= n; ++i) R.sector_maps["h" + std::to_string(i)] = maps[static_cast<size_t>(i)];
  for (int i = 0; i <= n; ++i)
    R.arrow_maps["s" + std::to_string(i)] = constant_map<Rational>(fixed[static_cast<size_t>(i)], 0);
  entry.realization = R;
  entry.note = "overlap hypothesis assumed; relation supplied, not computed";
  return entry;
}

// ---------------------------------------------------------------------------
// Delta_inj truncated at d, with barycentric or edgewise modules.

namespace {

// Order-preserving injection [n] -> [m] encoded by its image positions.
struct Inj {
  int n, m;
  std::vector<int> image;  // size n+1, strictly increasing
};

Id inj_name(const Inj& f) {
  std::string digits;
  for (int v : f.image) digits += std::to_string(v);
  return "j" + digits + ":" + std::to_string(f.n) + ">" + std::to_string(f.m);
}

std::vector<Inj> all_injections(int d) {
  std::vector<Inj> out;
  for (int m = 0; m <= d; ++m)
    for (int n = 0; n <= m; ++n) {
      // (n+1)-subsets of {0..m}.
      std::vector<int> idx(static_cast<size_t>(n + 1));
      std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == n + 1) {
          out.push_back({n, m, idx});
          return;
        }
        for (int v = start; v <= m; ++v) {
          idx[static_cast<size_t>(pos)] = v;
          rec(pos + 1, v + 1);
        }
      };
      rec(0, 0);
    }
  return out;
}

CatPtr delta_inj_category(int d, std::map<std::string, Inj>& arrows_out) {
  std::vector<Id> objects;
  for (int m = 0; m <= d; ++m) objects.push_back("[" + std::to_string(m) + "]");
  std::vector<Arrow> arrows;
  std::vector<Inj> injections = all_injections(d);
  for (const Inj& f : injections) {
    if (f.n == f.m) continue;  // identity (image = all of [m]) only when n == m
    Id id = inj_name(f);
    arrows.push_back({id, "[" + std::to_string(f.n) + "]", "[" + std::to_string(f.m) + "]"});
    arrows_out[id] = f;
  }
  // Composition g∘f: image = g(image of f).
  std::vector<std::tuple<Id, Id, Id>> compose;
  for (const Inj& g : injections)
    for (const Inj& f : injections) {
      if (f.n == f.m || g.n == g.m) continue;
      if (f.m != g.n) continue;
      Inj h{f.n, g.m, {}};
      for (int v : f.image) h.image.push_back(g.image[static_cast<size_t>(v)]);
      if (h.n == h.m) continue;  // cannot happen for strict injections
      compose.emplace_back(inj_name(g), inj_name(f), inj_name(h));
    }
  return std::make_shared<const FinCategory>(
      FinCategory::make(std::move(objects), std::move(arrows), compose));
}

// Chains of nonempty subsets of [m]: the barycentric sectors.
struct Chain {
  int n, m;
  std::vector<std::vector<int>> sets;  // strictly increasing, sizes n+1
};

Id chain_name(const Chain& q) {
  std::string parts;
  for (size_t i = 0; i < q.sets.size(); ++i) {
    if (i) parts += ".";
    for (int v : q.sets[i]) parts += std::to_string(v);
  }
  return "q" + parts + ":" + std::to_string(q.n) + ">" + std::to_string(q.m);
}

std::vector<Chain> all_chains(int d) {
  std::vector<Chain> out;
  for (int m = 0; m <= d; ++m) {
    // All nonempty subsets of {0..m} as bitmasks, then strict chains.
    std::vector<int> masks;
    for (int mask = 1; mask < (1 << (m + 1)); ++mask) masks.push_back(mask);
    std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& chain) {
      if (!chain.empty()) {
        Chain q{static_cast<int>(chain.size()) - 1, m, {}};
        for (int mask : chain) {
          std::vector<int> set;
          for (int v = 0; v <= m; ++v)
            if (mask & (1 << v)) set.push_back(v);
          q.sets.push_back(std::move(set));
        }
        if (q.n <= d) out.push_back(std::move(q));
      }
      int last = chain.empty() ? 0 : chain.back();
      for (int mask : masks) {
        if (!chain.empty()) {
          if ((mask & last) != last || mask == last) continue;  // need strict superset
        }
        chain.push_back(mask);
        rec(chain);
        chain.pop_back();
      }
    };
    std::vector<int> chain;
    rec(chain);
  }
  return out;
}

}  // namespace

CatalogEntry barycentric(int d, const std::string& embedding) {
  if (d < 1 || d > 4) throw InputError("barycentric(d) supports 1 <= d <= 4");
  std::map<std::string, Inj> arrow_data;
  CatPtr cat = delta_inj_category(d, arrow_data);
  std::vector<Chain> chains = all_chains(d);
  std::map<Id, Chain> chain_data;
  std::vector<Sector> sectors;
  for (const Chain& q : chains) {
    Id id = chain_name(q);
    sectors.push_back(
        {id, "[" + std::to_string(q.n) + "]", "[" + std::to_string(q.m) + "]"});
    chain_data[id] = q;
  }
  std::map<std::pair<Id, Id>, Id> left, right;
  for (const auto& [fid, f] : arrow_data)
    for (const Chain& q : chains) {
      // Left: f·Q = direct images, for f: [q.m] -> [f.m].
      if (f.n == q.m) {
        Chain fq{q.n, f.m, {}};
        for (const auto& set : q.sets) {
          std::vector<int> image;
          for (int v : set) image.push_back(f.image[static_cast<size_t>(v)]);
          fq.sets.push_back(std::move(image));
        }
        left[{fid, chain_name(q)}] = chain_name(fq);
      }
      // Right: Q·g = subchain selection, for g: [g.n] -> [q.n].
      if (f.m == q.n) {
        Chain qg{f.n, q.m, {}};
        for (int v : f.image) qg.sets.push_back(q.sets[static_cast<size_t>(v)]);
        right[{chain_name(q), fid}] = chain_name(qg);
      }
    }
  Module module = Module::make(cat, sectors, left, right);
  CatalogEntry entry;
  entry.name = "barycentric(" + std::to_string(d) + ")";
  entry.system = {cat, std::move(module), {entry.name, "barycentric subdivision", true}};
  entry.note = "Delta_inj truncated at dimension " + std::to_string(d);

  auto build_realization = [&](auto scalar_tag, auto vertex_of, auto solve_affine) {
    using S = decltype(scalar_tag);
    GeometricRealization<S> R;
    R.tolerance = std::is_same_v<S, Rational> ? S(0) : S(1e-9);
    for (int m = 0; m <= d; ++m) {
      Polytope<S> P;
      P.vertices.resize(m + 1, m);
      for (int i = 0; i <= m; ++i)
        P.vertices.row(i) = vertex_of(m, i).transpose();
      R.domains["[" + std::to_string(m) + "]"] = P;
    }
    auto barycenter = [&](int m, const std::vector<int>& set) {
      Vec<S> b = Vec<S>::Zero(m);
      for (int v : set) b += vertex_of(m, v);
      b /= S(static_cast<int>(set.size()));
      return b;
    };
    for (const auto& [id, q] : chain_data) {
      std::vector<Vec<S>> images;
      for (const auto& set : q.sets) images.push_back(barycenter(q.m, set));
      R.sector_maps[id] = solve_affine(q.n, images);
    }
    for (const auto& [fid, f] : arrow_data) {
      std::vector<Vec<S>> images;
      for (int v : f.image) images.push_back(vertex_of(f.m, v));
      R.arrow_maps[fid] = solve_affine(f.n, images);
    }
    return R;
  };

  if (embedding == "rational") {
    auto vertex_of = [](int m, int i) {
      Vec<Rational> v = Vec<Rational>::Zero(m);
      if (i >= 1) v(i - 1) = 1;
      return v;
    };
    // Right-angle domains: the map sending e_j to images[j] is read off the
    // columns directly.
    auto solve_affine = [](int n, const std::vector<Vec<Rational>>& images) {
      AffineMap<Rational> map;
      int out_dim = static_cast<int>(images.front().size());
      map.offset = images.front();
      map.linear.resize(out_dim, n);
      for (int j = 1; j <= n; ++j)
        map.linear.col(j - 1) = images[static_cast<size_t>(j)] - images.front();
      return map;
    };
    entry.realization = build_realization(Rational(0), vertex_of, solve_affine);
  } else if (embedding == "regular") {
    // Regular unit-edge simplices, built incrementally in double.
    std::vector<std::vector<Eigen::VectorXd>> regular(static_cast<size_t>(d + 1));
    for (int m = 0; m <= d; ++m) {
      std::vector<Eigen::VectorXd> pts;
      pts.push_back(Eigen::VectorXd::Zero(m));
      for (int k = 1; k <= m; ++k) {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
        for (const auto& p : pts) c += p;
        c /= static_cast<double>(pts.size());
        double r2 = (c - pts.front()).squaredNorm();
        Eigen::VectorXd next = c;
        next(k - 1) += std::sqrt(1.0 - r2);
        pts.push_back(next);
      }
      regular[static_cast<size_t>(m)] = pts;
    }
    auto vertex_of = [regular](int m, int i) {
      return Vec<double>(regular[static_cast<size_t>(m)][static_cast<size_t>(i)]);
    };
    // Solve A·(u_j - u_0) = images[j] - images[0] against the regular domain
    // vertices u_j.
    auto solve_affine = [vertex_of](int n, const std::vector<Vec<double>>& images) {
      AffineMap<double> map;
      int out_dim = static_cast<int>(images.front().size());
      Eigen::MatrixXd D(n, n), im(out_dim, n);
      for (int j = 1; j <= n; ++j) {
        D.col(j - 1) = vertex_of(n, j) - vertex_of(n, 0);
        im.col(j - 1) = images[static_cast<size_t>(j)] - images.front();
      }
      map.linear = n == 0 ? Eigen::MatrixXd::Zero(out_dim, 0)
                          : Eigen::MatrixXd(im * D.inverse());
      map.offset = images.front() - map.linear * vertex_of(n, 0);
      return map;
    };
    entry.realization = build_realization(0.0, vertex_of, solve_affine);
  } else {
    throw InputError("barycentric embedding must be 'rational' or 'regular'");
  }
  if (d == 2)
    entry.expected.push_back({"sectors([2],[2])", "6", "PAPER Example rec-bary: (n+1)! copies"});
  return entry;
}

CatalogEntry edgewise(int d) {
  if (d < 1 || d > 4) throw InputError("edgewise(d) supports 1 <= d <= 4");
  std::map<std::string, Inj> arrow_data;
  CatPtr cat = delta_inj_category(d, arrow_data);
  // Sectors: order-preserving injections (p,q): [n] -> [m]x[m], p(n) <= q(0).
  struct PQ {
    int n, m;
    std::vector<std::pair<int, int>> points;  // strictly increasing in product order
  };
  auto pq_name = [](const PQ& s) {
    std::string parts;
    for (size_t i = 0; i < s.points.size(); ++i) {
      if (i) parts += ".";
      parts += std::to_string(s.points[i].first) + std::to_string(s.points[i].second);
    }
    return "e" + parts + ":" + std::to_string(s.n) + ">" + std::to_string(s.m);
  };
  std::vector<PQ> pqs;
  for (int m = 0; m <= d; ++m) {
    std::vector<std::pair<int, int>> pool;
    for (int p = 0; p <= m; ++p)
      for (int q = p; q <= m; ++q) pool.push_back({p, q});  // p(j) <= q(j) follows from p(n)<=q(0)
    std::function<void(std::vector<std::pair<int, int>>&, size_t)> rec =
        [&](std::vector<std::pair<int, int>>& acc, size_t start) {
          if (!acc.empty() && static_cast<int>(acc.size()) - 1 <= d) {
            // Condition p(n) <= q(0).
            if (acc.back().first <= acc.front().second)
              pqs.push_back({static_cast<int>(acc.size()) - 1, m, acc});
          }
          if (static_cast<int>(acc.size()) == d + 1) return;
          for (size_t k = start; k < pool.size(); ++k) {
            if (!acc.empty()) {
              auto [p0, q0] = acc.back();
              auto [p1, q1] = pool[k];
              if (!(p1 >= p0 && q1 >= q0 && (p1 > p0 || q1 > q0))) continue;
            }
            acc.push_back(pool[k]);
            rec(acc, 0);
            acc.pop_back();
          }
        };
    std::vector<std::pair<int, int>> acc;
    rec(acc, 0);
  }
  std::map<Id, PQ> pq_data;
  std::vector<Sector> sectors;
  for (const PQ& s : pqs) {
    Id id = pq_name(s);
    if (pq_data.count(id)) continue;
    sectors.push_back({id, "[" + std::to_string(s.n) + "]", "[" + std::to_string(s.m) + "]"});
    pq_data[id] = s;
  }
  std::map<std::pair<Id, Id>, Id> left, right;
  for (const auto& [fid, f] : arrow_data)
    for (const auto& [sid, s] : pq_data) {
      if (f.n == s.m) {  // left: (f∘p, f∘q)
        PQ fs{s.n, f.m, {}};
        for (auto [p, q] : s.points)
          fs.points.push_back({f.image[static_cast<size_t>(p)], f.image[static_cast<size_t>(q)]});
        left[{fid, sid}] = pq_name(fs);
      }
      if (f.m == s.n) {  // right: (p∘g, q∘g)
        PQ sg{f.n, s.m, {}};
        for (int v : f.image) sg.points.push_back(s.points[static_cast<size_t>(v)]);
        right[{sid, fid}] = pq_name(sg);
      }
    }
  Module module = Module::make(cat, sectors, left, right);
  CatalogEntry entry;
  entry.name = "edgewise(" + std::to_string(d) + ")";
  entry.system = {cat, std::move(module), {entry.name, "edgewise subdivision", true}};
  entry.note = "Delta_inj truncated at dimension " + std::to_string(d);
  GeometricRealization<Rational> R;
  R.tolerance = 0;
  auto vertex_of = [](int m, int i) {
    Vec<Rational> v = Vec<Rational>::Zero(m);
    if (i >= 1) v(i - 1) = 1;
    return v;
  };
  for (int m = 0; m <= d; ++m) {
    Polytope<Rational> P;
    P.vertices.resize(m + 1, m);
    for (int i = 0; i <= m; ++i) P.vertices.row(i) = vertex_of(m, i).transpose();
    R.domains["[" + std::to_string(m) + "]"] = P;
  }
  auto affine_from_vertex_images = [&](int n, std::vector<Vec<Rational>> images) {
    AffineMap<Rational> map;
    int out_dim = static_cast<int>(images.front().size());
    map.offset = images.front();
    map.linear.resize(out_dim, n);
    for (int j = 1; j <= n; ++j) map.linear.col(j - 1) = images[static_cast<size_t>(j)] - images.front();
    return map;
  };
  for (const auto& [sid, s] : pq_data) {
    std::vector<Vec<Rational>> images;
    for (auto [p, q] : s.points)
      images.push_back(((vertex_of(s.m, p) + vertex_of(s.m, q)) / Rational(2)).eval());
    R.sector_maps[sid] = affine_from_vertex_images(s.n, images);
  }
  for (const auto& [fid, f] : arrow_data) {
    std::vector<Vec<Rational>> images;
    for (int v : f.image) images.push_back(vertex_of(f.m, v));
    R.arrow_maps[fid] = affine_from_vertex_images(f.n, images);
  }
  entry.realization = R;
  if (d == 3)
    entry.expected.push_back({"top_sectors([3],[3])", "8", "PAPER Example rec-edgewise: 2^n"});
  if (d == 2)
    entry.expected.push_back({"top_sectors([2],[2])", "4", "PAPER Example rec-edgewise: 2^n"});
  return entry;
}

CatalogEntry julia() {
  std::vector<Arrow> arrows;
  for (int i = 1; i <= 4; ++i) arrows.push_back({"u" + std::to_string(i), "0", "2"});
  for (int i = 1; i <= 4; ++i) arrows.push_back({"v" + std::to_string(i), "0", "3"});
  auto cat = std::make_shared<const FinCategory>(
      FinCategory::make({"0", "1", "2", "3"}, arrows, {}));
  std::vector<Sector> sectors = {{"e", "0", "0"}};
  for (int i = 1; i <= 4; ++i) sectors.push_back({"h" + std::to_string(i), "0", "1"});
  sectors.push_back({"A1", "2", "1"});
  sectors.push_back({"B1", "2", "1"});
  for (int i = 1; i <= 8; ++i) sectors.push_back({"g" + std::to_string(i), "0", "2"});
  sectors.push_back({"A2", "2", "2"});
  sectors.push_back({"B2", "2", "2"});
  sectors.push_back({"C2", "3", "2"});
  for (int i = 1; i <= 8; ++i) sectors.push_back({"j" + std::to_string(i), "0", "3"});
  sectors.push_back({"D3", "3", "3"});
  sectors.push_back({"E3", "3", "3"});
  std::map<std::pair<Id, Id>, Id> left, right;
  for (int i = 1; i <= 4; ++i) {
    left[{"u" + std::to_string(i), "e"}] = "g" + std::to_string(i);
    left[{"v" + std::to_string(i), "e"}] = "j" + std::to_string(i);
    right[{"A1", "u" + std::to_string(i)}] = "h" + std::to_string(i);
    right[{"B1", "u" + std::to_string(i)}] = "h" + std::to_string(i);
    right[{"A2", "u" + std::to_string(i)}] = "g" + std::to_string(4 + i);
    right[{"B2", "u" + std::to_string(i)}] = "g" + std::to_string(4 + i);
    right[{"C2", "v" + std::to_string(i)}] = "g" + std::to_string(4 + i);
    right[{"D3", "v" + std::to_string(i)}] = "j" + std::to_string(4 + i);
    right[{"E3", "v" + std::to_string(i)}] = "j" + std::to_string(4 + i);
  }
  Module module = Module::make(cat, sectors, left, right);
  CatalogEntry entry;
  entry.name = "julia";
  entry.system = {cat, std::move(module), {entry.name, "Julia-set system", false}};
  entry.note = "conjectural universality — data only";
  entry.expected.push_back({"sectors(0,2)", "8", "PAPER Example Julia"});
  entry.expected.push_back({"sectors(1,2)", "0", "PAPER Example Julia"});
  entry.expected.push_back({"sectors(2,2)", "2", "PAPER Example Julia"});
  entry.expected.push_back({"sectors(3,2)", "1", "PAPER Example Julia"});
  return entry;
}

CatalogEntry convergent_sequence() {
  discrete::DiscreteSystem D;
  D.objects = {"x1", "x2"};
  D.sectors[{"x1", "x1"}] = {"a"};
  D.sectors[{"x1", "x2"}] = {"b"};
  D.sectors[{"x2", "x2"}] = {"c"};
  CatalogEntry entry;
  entry.name = "convergent_sequence";
  entry.system = discrete::to_equational_system(D, entry.name);
  entry.expected.push_back({"class(x1)", "Singleton", "PAPER Example rec-univ-seq"});
  entry.expected.push_back({"class(x2)", "Mixed", "PAPER Example rec-univ-seq: N ∪ {∞}"});
  return entry;
}

CatalogEntry product(const CatalogEntry& a, const CatalogEntry& b) {
  CatalogEntry entry;
  entry.system = product_system(a.system, b.system);
  entry.name = entry.system.metadata.name;
  entry.note = "product of " + a.name + " and " + b.name;
  return entry;
}

// ---------------------------------------------------------------------------

std::vector<std::string> list_names() {
  return {"cantor(2)",     "cantor(3)",   "walks(original,12)", "walks(modified,12)",
          "freyd(2)",      "freyd(3)",    "circle",             "sierpinski(2)",
          "sierpinski(3)", "ifs",         "barycentric(2)",     "barycentric(3)",
          "edgewise(2)",   "edgewise(3)", "julia",              "convergent_sequence",
          "product(cantor(2),cantor(3))", "product(freyd(2),freyd(2))"};
}

CatalogEntry build(const std::string& name) {
  auto starts = [&](const std::string& prefix) { return name.rfind(prefix, 0) == 0; };
  auto arg = [&](const std::string& prefix) {
    return name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
  };
  if (starts("cantor(")) return cantor(std::stoi(arg("cantor")));
  if (starts("walks(")) {
    std::string inner = arg("walks");
    auto comma = inner.find(',');
    if (comma == std::string::npos) throw InputError("walks(rule,N)");
    return walks(inner.substr(0, comma), std::stoi(inner.substr(comma + 1)));
  }
  if (starts("freyd(")) return freyd(std::stoi(arg("freyd")));
  if (name == "circle") return circle();
  if (starts("sierpinski(")) return sierpinski(std::stoi(arg("sierpinski")));
  if (name == "ifs") {
    IfsSpec spec;
    spec.dim = 2;
    auto half = [](int ox, int oy) {
      std::vector<std::vector<Rational>> A = {{Rational(1, 2), Rational(0)},
                                              {Rational(0), Rational(1, 2)}};
      std::vector<Rational> b = {geometry::rat(ox, 2), geometry::rat(oy, 2)};
      return std::make_pair(A, b);
    };
    spec.maps = {half(0, 0), half(1, 0), half(0, 1)};
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j)
        if (i != j) spec.relation.push_back({i, j, j, i});
    return ifs(spec);
  }
  if (starts("barycentric(")) {
    std::string inner = arg("barycentric");
    auto comma = inner.find(',');
    if (comma == std::string::npos) return barycentric(std::stoi(inner));
    return barycentric(std::stoi(inner.substr(0, comma)), inner.substr(comma + 1));
  }
  if (starts("edgewise(")) return edgewise(std::stoi(arg("edgewise")));
  if (name == "julia") return julia();
  if (name == "convergent_sequence") return convergent_sequence();
  if (starts("product(")) {
    std::string inner = arg("product");
    // Split at the top-level comma.
    int depth = 0;
    for (size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0)
        return product(build(inner.substr(0, i)), build(inner.substr(i + 1)));
    }
    throw InputError("product(a,b)");
  }
  throw InputError("unknown catalog entry: " + name);
}

discrete::DiscreteSystem as_discrete(const CatalogEntry& entry) {
  discrete::DiscreteSystem D = discrete::from_equational_system(entry.system);
  if (entry.name.rfind("walks(", 0) == 0) {
    int n_max = static_cast<int>(D.objects.size()) - 1;
    for (int n = 0; n <= n_max; ++n) D.boundary_distance[std::to_string(n)] = n_max - n;
  }
  return D;
}

}  // namespace selfsim::catalog
