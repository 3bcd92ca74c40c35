#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "selfsim/errors.hpp"

namespace Eigen {
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};
}  // namespace Eigen

namespace selfsim::geometry {

using Rational = mpq_class;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

// Canonicalizing constructor; mpq_class(n, d) alone leaves the fraction
// unreduced, which breaks equality comparisons.
inline Rational rat(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}
inline Rational rat(const mpz_class& n, const mpz_class& d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational rational_from_string(const std::string& text);
std::string rational_to_string(const Rational& q);

// Convex polytope given by its vertex list (one row per vertex).
template <class S>
struct Polytope {
  Mat<S> vertices;  // V x d
  int dim() const { return static_cast<int>(vertices.cols()); }
  int num_vertices() const { return static_cast<int>(vertices.rows()); }
};

template <class S>
struct AffineMap {
  Mat<S> linear;  // d_out x d_in
  Vec<S> offset;  // d_out
  Vec<S> apply(const Vec<S>& x) const { return (linear * x + offset).eval(); }
};

template <class S>
AffineMap<S> compose(const AffineMap<S>& outer, const AffineMap<S>& inner) {
  return {(outer.linear * inner.linear).eval(),
          (outer.linear * inner.offset + outer.offset).eval()};
}

template <class S>
Polytope<S> apply(const AffineMap<S>& map, const Polytope<S>& p) {
  Polytope<S> out;
  out.vertices.resize(p.num_vertices(), map.offset.size());
  for (int v = 0; v < p.num_vertices(); ++v)
    out.vertices.row(v) = map.apply(p.vertices.row(v).transpose()).transpose();
  return out;
}

// Feasibility of { x >= 0 : A x = b } by phase-1 simplex with Bland's rule.
// Exact for S = Rational (tol is zero there); tolerance-based for double.
template <class S>
bool lp_feasible(Mat<S> A, Vec<S> b, const S& tol) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  for (int i = 0; i < m; ++i)
    if (b(i) < S(0)) {
      A.row(i) = -A.row(i);
      b(i) = -b(i);
    }
  // Tableau [A | I | b]; artificial basis.
  Mat<S> T(m, n + m + 1);
  T.setZero();
  T.block(0, 0, m, n) = A;
  for (int i = 0; i < m; ++i) T(i, n + i) = S(1);
  T.col(n + m) = b;
  std::vector<int> basis(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = n + i;
  // Phase-1 reduced costs: minimize the sum of artificials.
  Vec<S> cost(n + m + 1);
  cost.setZero();
  for (int i = 0; i < m; ++i) cost -= T.row(i).transpose();
  for (int i = 0; i < m; ++i) cost(n + i) = S(0);
  while (true) {
    int entering = -1;
    for (int j = 0; j < n + m; ++j)
      if (cost(j) < -tol) {
        entering = j;
        break;  // Bland: least index
      }
    if (entering < 0) break;
    int leaving = -1;
    S best_ratio(0);
    for (int i = 0; i < m; ++i) {
      if (T(i, entering) <= tol) continue;
      S ratio = T(i, n + m) / T(i, entering);
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[static_cast<size_t>(i)] <
                                      basis[static_cast<size_t>(leaving)])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) return false;  // unbounded phase-1 cannot happen; bail out
    S pivot = T(leaving, entering);
    T.row(leaving) /= pivot;
    for (int i = 0; i < m; ++i)
      if (i != leaving && T(i, entering) != S(0)) T.row(i) -= T(i, entering) * T.row(leaving);
    if (cost(entering) != S(0)) cost -= cost(entering) * T.row(leaving).transpose();
    basis[static_cast<size_t>(leaving)] = entering;
  }
  // Residual objective = sum of artificial values.
  S residual(0);
  for (int i = 0; i < m; ++i)
    if (basis[static_cast<size_t>(i)] >= n) residual += T(i, n + m);
  return residual <= tol;
}

// p ∈ conv(vertices)?
template <class S>
bool contains(const Polytope<S>& poly, const Vec<S>& p, const S& tol) {
  const int nv = poly.num_vertices();
  if (nv == 0) return false;
  const int d = poly.dim();
  if (d == 0) return true;
  Mat<S> A(d + 1, nv);
  for (int v = 0; v < nv; ++v) {
    A.block(0, v, d, 1) = poly.vertices.row(v).transpose();
    A(d, v) = S(1);
  }
  Vec<S> b(d + 1);
  b.head(d) = p;
  b(d) = S(1);
  return lp_feasible<S>(A, b, tol);
}

// One polytope inside another (vertexwise check is exact for convex hulls).
template <class S>
bool contains(const Polytope<S>& outer, const Polytope<S>& inner, const S& tol) {
  for (int v = 0; v < inner.num_vertices(); ++v)
    if (!contains(outer, Vec<S>(inner.vertices.row(v).transpose()), tol)) return false;
  return true;
}

template <class S>
S squared_diameter(const Polytope<S>& p) {
  S best(0);
  for (int i = 0; i < p.num_vertices(); ++i)
    for (int j = i + 1; j < p.num_vertices(); ++j) {
      Vec<S> diff = (p.vertices.row(i) - p.vertices.row(j)).transpose();
      S d2 = diff.dot(diff);
      if (d2 > best) best = d2;
    }
  return best;
}

// Dimension of the affine hull of the vertices, by Gaussian elimination on
// the difference vectors.
template <class S>
int affine_rank(const Polytope<S>& p, const S& tol) {
  if (p.num_vertices() <= 1) return 0;
  Mat<S> D(p.num_vertices() - 1, p.dim());
  for (int v = 1; v < p.num_vertices(); ++v) D.row(v - 1) = p.vertices.row(v) - p.vertices.row(0);
  int rank = 0;
  int rows = static_cast<int>(D.rows());
  int cols = static_cast<int>(D.cols());
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (D(r, c) > tol || D(r, c) < -tol) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    D.row(pivot).swap(D.row(rank));
    for (int r = 0; r < rows; ++r)
      if (r != rank && D(r, c) != S(0)) D.row(r) -= (D(r, c) / D(rank, c)) * D.row(rank);
    ++rank;
  }
  return rank;
}

// Largest singular value of A, by power iteration on AᵀA in double.
double spectral_norm(const Mat<double>& A, double tol = 1e-12);
double spectral_norm(const Mat<Rational>& A, double tol = 1e-12);

}  // namespace selfsim::geometry
