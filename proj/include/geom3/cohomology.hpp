#pragma once

#include <vector>

#include "geom3/lie.hpp"

namespace geom3 {

/// Antisymmetric bilinear form on a Lie algebra with values in the trivial
/// one-dimensional module; omega(e_i, e_j) = matrix(i, j).  General
/// coefficient modules are intentionally not representable.
struct TwoCocycle {
  StructureConstants base;
  Mat matrix;
};

inline bool same_constants(const StructureConstants& a,
                           const StructureConstants& b, double tol = 1e-12) {
  if (a.dim() != b.dim()) return false;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        if (std::abs(a.c(i, j, k) - b.c(i, j, k)) > tol) return false;
  return true;
}

inline TwoCocycle make_cocycle(const StructureConstants& sc, const Mat& m) {
  const int n = sc.dim();
  if (m.rows() != n || m.cols() != n)
    throw DimensionError("cocycle matrix must be dim x dim");
  if (inf_norm(Mat(m + m.transpose())) >
      kAlgebraicTol * std::max(1.0, inf_norm(m)))
    throw InvalidArgumentError("cocycle matrix must be antisymmetric");
  return TwoCocycle{sc, m};
}

/// Max over basis triples of |w([x,y],z) + w([y,z],x) + w([z,x],y)|;
/// zero exactly for closed cochains.
inline double cocycle_residual(const StructureConstants& sc, const Mat& m) {
  const int n = sc.dim();
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Vec ei = Vec::Unit(n, i), ej = Vec::Unit(n, j),
                  ek = Vec::Unit(n, k);
        const double v = bracket(sc, ei, ej).dot(m * ek) +
                         bracket(sc, ej, ek).dot(m * ei) +
                         bracket(sc, ek, ei).dot(m * ej);
        r = std::max(r, std::abs(v));
      }
  return r;
}

inline double cocycle_tolerance(const StructureConstants& sc, const Mat& m) {
  return kAlgebraicTol * std::max(1.0, sc.max_abs()) *
         std::max(1.0, inf_norm(m));
}

inline bool is_closed(const TwoCocycle& w) {
  return cocycle_residual(w.base, w.matrix) <=
         cocycle_tolerance(w.base, w.matrix);
}

namespace detail {

/// Lexicographic index of the pair (i, j), i < j, in the wedge basis.
inline int pair_index(int i, int j, int n) {
  int idx = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (a == i && b == j) return idx;
      ++idx;
    }
  throw DimensionError("pair_index: bad pair");
}

inline Vec vectorize_cochain(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  Vec v(n * (n - 1) / 2);
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v(idx++) = m(i, j);
  return v;
}

inline Mat unvectorize_cochain(const Vec& v, int n) {
  Mat m = Mat::Zero(n, n);
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = v(idx);
      m(j, i) = -v(idx);
      ++idx;
    }
  return m;
}

}  // namespace detail

/// Chevalley-Eilenberg differential for trivial real coefficients, returned
/// as a matrix between the canonical wedge bases:
///   degree 1: (d phi)(x,y)   = -phi([x,y]),              C^1 -> C^2
///   degree 2: (d w)(x,y,z)   = -w([x,y],z) - w([y,z],x) - w([z,x],y),
///                                                        C^2 -> C^3
inline Mat ce_differential(const StructureConstants& sc, int degree) {
  require_lie_algebra(sc);
  const int n = sc.dim();
  if (degree == 1) {
    Mat d(n * (n - 1) / 2, n);
    int row = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        for (int l = 0; l < n; ++l) d(row, l) = -sc.c(i, j, l);
        ++row;
      }
    return d;
  }
  if (degree == 2) {
    const int pairs = n * (n - 1) / 2;
    const int triples = n * (n - 1) * (n - 2) / 6;
    Mat d = Mat::Zero(triples, pairs);
    int col = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        Mat w = Mat::Zero(n, n);
        w(p, q) = 1.0;
        w(q, p) = -1.0;
        int row = 0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
              const Vec ei = Vec::Unit(n, i), ej = Vec::Unit(n, j),
                        ek = Vec::Unit(n, k);
              d(row, col) = -(bracket(sc, ei, ej).dot(w * ek) +
                              bracket(sc, ej, ek).dot(w * ei) +
                              bracket(sc, ek, ei).dot(w * ej));
              ++row;
            }
        ++col;
      }
    return d;
  }
  throw InvalidArgumentError("ce_differential: degree must be 1 or 2");
}

struct CohomologyResult {
  int betti2 = 0;
  std::vector<TwoCocycle> representatives;
  int coboundary_rank = 0;
  int cocycle_rank = 0;
};

/// H^2(g; R): kernel of d_2 modulo image of d_1.  Representatives are
/// orthogonal to the coboundaries and scaled so the first nonzero entry of
/// the cocycle matrix (upper triangle, row-major) equals +1.
inline CohomologyResult h2(const StructureConstants& sc) {
  if (sc.dim() > 4)
    throw DimensionError("h2: dim <= 4 supported");
  const Mat d1 = ce_differential(sc, 1);
  const Mat d2 = ce_differential(sc, 2);
  const int pairs = static_cast<int>(d1.rows());

  CohomologyResult out;
  out.coboundary_rank = matrix_rank(d1);
  out.cocycle_rank = pairs - matrix_rank(d2);
  out.betti2 = out.cocycle_rank - out.coboundary_rank;

  const Mat kernel = nullspace(d2);            // pairs x cocycle_rank
  const Mat image = column_space(d1);          // pairs x coboundary_rank
  Mat compl_part = kernel;
  if (image.cols() > 0)
    compl_part -= image * (image.transpose() * kernel);
  const Mat reps = column_space(compl_part);   // pairs x betti2

  for (int c = 0; c < reps.cols(); ++c) {
    Vec v = reps.col(c);
    const double scale = inf_norm(v);
    for (int idx = 0; idx < v.size(); ++idx)
      if (std::abs(v(idx)) > kRankTol * scale) {
        v /= v(idx);
        break;
      }
    out.representatives.push_back(
        TwoCocycle{sc, detail::unvectorize_cochain(v, sc.dim())});
  }
  return out;
}

/// Central extension R x_w g: basis (e_0, e_1, ..., e_n) with e_0 central
/// and [e_i, e_j] = [e_i, e_j]_g + w(e_i, e_j) e_0.  Requires w closed
/// (otherwise the result would violate the Jacobi identity).
inline StructureConstants central_extension(const StructureConstants& sc,
                                            const TwoCocycle& w) {
  if (!same_constants(sc, w.base))
    throw InvalidArgumentError(
        "central_extension: cocycle was built over a different algebra");
  if (cocycle_residual(sc, w.matrix) > cocycle_tolerance(sc, w.matrix))
    throw CocycleError(
        "central_extension: cochain is not closed (residual " +
        std::to_string(cocycle_residual(sc, w.matrix)) + ")");
  const int n = sc.dim();
  StructureConstants out(n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec coeffs = Vec::Zero(n + 1);
      coeffs(0) = w.matrix(i, j);
      for (int k = 0; k < n; ++k) coeffs(k + 1) = sc.c(i, j, k);
      out.set_bracket(i + 1, j + 1, coeffs);
    }
  return out;
}

/// Weak isomorphism of the central extensions defined by two closed
/// cocycles: the classes are related by a nonzero scaling of the center
/// composed with an automorphism.  Only the betti2 <= 1 situation is
/// supported; there any two nonzero classes are weakly isomorphic and the
/// zero class stands alone.
inline bool weakly_isomorphic(const StructureConstants& sc, const TwoCocycle& a,
                              const TwoCocycle& b) {
  if (sc.dim() != 3)
    throw DimensionError("weakly_isomorphic: dim 3 required");
  for (const TwoCocycle* w : {&a, &b}) {
    if (!same_constants(sc, w->base))
      throw InvalidArgumentError("weakly_isomorphic: cocycle base mismatch");
    if (cocycle_residual(sc, w->matrix) > cocycle_tolerance(sc, w->matrix))
      throw CocycleError("weakly_isomorphic: cochain is not closed");
  }
  const CohomologyResult h = h2(sc);
  if (h.betti2 > 1)
    throw UnsupportedCaseError(
        "weakly_isomorphic: betti2 > 1 not supported (betti2 = " +
        std::to_string(h.betti2) + ")");

  const Mat image = column_space(ce_differential(sc, 1));
  const auto class_is_zero = [&](const TwoCocycle& w) {
    Vec v = detail::vectorize_cochain(w.matrix);
    if (image.cols() > 0) v -= image * (image.transpose() * v);
    return inf_norm(v) <=
           kAlgebraicTol * std::max(1.0, inf_norm(w.matrix));
  };
  return class_is_zero(a) == class_is_zero(b);
}

/// The paper-normalized generator family of H^2(e(2); R):
/// omega_lambda(e_1, e_2) = lambda, all other pairs zero.
inline TwoCocycle omega_lambda(double lambda) {
  const StructureConstants e2 = algebras::e2();
  Mat m = Mat::Zero(3, 3);
  m(0, 1) = lambda;
  m(1, 0) = -lambda;
  return TwoCocycle{e2, m};
}

}  // namespace geom3
