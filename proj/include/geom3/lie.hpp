#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "geom3/linalg.hpp"

namespace geom3 {

/// An n-dimensional algebra presented by structure constants c^k_ij,
/// i.e. [e_i, e_j] = sum_k c(i,j,k) e_k.  Antisymmetry in (i,j) is
/// enforced by the mutators; the Jacobi identity is checked separately
/// (see jacobi_residual) so that almost-Lie inputs can be diagnosed.
class StructureConstants {
 public:
  static constexpr int kMaxDim = 6;

  explicit StructureConstants(int dim) : dim_(dim) {
    if (dim < 2 || dim > kMaxDim)
      throw DimensionError("structure constants: dim must be in [2, 6], got " +
                           std::to_string(dim));
    c_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  }

  int dim() const { return dim_; }

  double c(int i, int j, int k) const { return c_[index(i, j, k)]; }

  /// Sets [e_i, e_j] = coeffs (and [e_j, e_i] = -coeffs).
  void set_bracket(int i, int j, const Vec& coeffs) {
    check_index(i);
    check_index(j);
    if (coeffs.size() != dim_)
      throw DimensionError("set_bracket: coefficient vector has wrong length");
    if (i == j) {
      if (inf_norm(coeffs) > 0.0)
        throw InvalidArgumentError("set_bracket: [e_i, e_i] must vanish");
      return;
    }
    for (int k = 0; k < dim_; ++k) {
      c_[index(i, j, k)] = coeffs(k);
      c_[index(j, i, k)] = -coeffs(k);
    }
  }

  void set_c(int i, int j, int k, double value) {
    check_index(i);
    check_index(j);
    check_index(k);
    if (i == j && value != 0.0)
      throw InvalidArgumentError("set_c: [e_i, e_i] must vanish");
    c_[index(i, j, k)] = value;
    c_[index(j, i, k)] = -value;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Largest violation of c(i,j,k) = -c(j,i,k).  Zero for values built
  /// through the mutators; nonzero only for hand-assembled JSON input.
  double antisymmetry_residual() const {
    double r = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k)
          r = std::max(r, std::abs(c(i, j, k) + c(j, i, k)));
    return r;
  }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }
  void check_index(int i) const {
    if (i < 0 || i >= dim_)
      throw DimensionError("structure constants: index out of range");
  }

  int dim_;
  std::vector<double> c_;
};

/// [x, y] evaluated through the structure constants.
inline Vec bracket(const StructureConstants& sc, const Vec& x, const Vec& y) {
  const int n = sc.dim();
  if (x.size() != n || y.size() != n)
    throw DimensionError("bracket: vector length does not match algebra dim");
  Vec z = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (y(j) == 0.0) continue;
      const double w = x(i) * y(j);
      for (int k = 0; k < n; ++k) z(k) += w * sc.c(i, j, k);
    }
  }
  return z;
}

/// Matrix of ad_x : y -> [x, y].
inline Mat ad(const StructureConstants& sc, const Vec& x) {
  const int n = sc.dim();
  Mat a = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    a.col(j) = bracket(sc, x, Vec::Unit(n, j));
  return a;
}

/// Max over basis triples of ||[e_i,[e_j,e_k]] + cyclic||_inf.
/// Zero (to tolerance) exactly when the constants define a Lie algebra.
inline double jacobi_residual(const StructureConstants& sc) {
  const int n = sc.dim();
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Vec ei = Vec::Unit(n, i), ej = Vec::Unit(n, j),
                  ek = Vec::Unit(n, k);
        const Vec cyc = bracket(sc, ei, bracket(sc, ej, ek)) +
                        bracket(sc, ej, bracket(sc, ek, ei)) +
                        bracket(sc, ek, bracket(sc, ei, ej));
        r = std::max(r, inf_norm(cyc));
      }
  return r;
}

/// Tolerance for accepting constants as a Lie algebra: absolute 1e-9 on
/// unit-scale inputs, scaled quadratically in the constants' magnitude
/// (the Jacobi expression is quadratic in c).
inline double lie_tolerance(const StructureConstants& sc) {
  const double s = std::max(1.0, sc.max_abs());
  return kAlgebraicTol * s * s;
}

inline bool is_lie_algebra(const StructureConstants& sc) {
  return sc.antisymmetry_residual() <= lie_tolerance(sc) &&
         jacobi_residual(sc) <= lie_tolerance(sc);
}

inline void require_lie_algebra(const StructureConstants& sc) {
  if (sc.antisymmetry_residual() > lie_tolerance(sc))
    throw NotALieAlgebraError("constants are not antisymmetric (residual " +
                              std::to_string(sc.antisymmetry_residual()) + ")");
  const double jr = jacobi_residual(sc);
  if (jr > lie_tolerance(sc))
    throw NotALieAlgebraError("Jacobi identity fails (residual " +
                              std::to_string(jr) + ")");
}

struct DerivedAlgebra {
  int dim = 0;
  Mat basis;  // columns: orthonormal basis of span{[e_i, e_j]}
};

/// Orthonormal basis of the derived algebra g' = [g, g].
inline DerivedAlgebra derived_algebra(const StructureConstants& sc) {
  const int n = sc.dim();
  Mat b(n, n * (n - 1) / 2);
  int col = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) b(k, col) = sc.c(i, j, k);
      ++col;
    }
  DerivedAlgebra d;
  d.basis = column_space(b);
  d.dim = static_cast<int>(d.basis.cols());
  return d;
}

/// True iff trace(ad_{e_i}) = 0 for all i, within tolerance.
inline bool is_unimodular(const StructureConstants& sc) {
  const int n = sc.dim();
  const double tol = kAlgebraicTol * std::max(1.0, sc.max_abs()) * n;
  for (int i = 0; i < n; ++i) {
    double tr = 0.0;
    for (int j = 0; j < n; ++j) tr += sc.c(i, j, j);
    if (std::abs(tr) > tol) return false;
  }
  return true;
}

/// Killing form K_ij = trace(ad_{e_i} ad_{e_j}).
inline Mat killing_form(const StructureConstants& sc) {
  const int n = sc.dim();
  Mat k = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double t = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t += sc.c(i, a, b) * sc.c(j, b, a);
      k(i, j) = t;
    }
  return 0.5 * (k + k.transpose());  // symmetrize roundoff
}

/// Push-forward of the constants under a basis change.  Columns of t are
/// the new basis vectors expressed in the old basis.
inline StructureConstants change_basis(const StructureConstants& sc,
                                       const Mat& t) {
  const int n = sc.dim();
  if (t.rows() != n || t.cols() != n)
    throw DimensionError("change_basis: matrix must be dim x dim");
  const Mat tinv = t.inverse();
  StructureConstants out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vec bij = bracket(sc, t.col(i), t.col(j));
      out.set_bracket(i, j, tinv * bij);
    }
  return out;
}

enum class AlgebraKind { Abelian, Heisenberg, H2xR, Solvable2, SO3, SL2R };
enum class SolvableForm { RealDiag, Complex, Jordan };

inline const char* to_string(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::Abelian: return "Abelian";
    case AlgebraKind::Heisenberg: return "Heisenberg";
    case AlgebraKind::H2xR: return "H2xR";
    case AlgebraKind::Solvable2: return "Solvable2";
    case AlgebraKind::SO3: return "SO3";
    case AlgebraKind::SL2R: return "SL2R";
  }
  return "?";
}

inline const char* to_string(SolvableForm f) {
  switch (f) {
    case SolvableForm::RealDiag: return "RealDiag";
    case SolvableForm::Complex: return "Complex";
    case SolvableForm::Jordan: return "Jordan";
  }
  return "?";
}

/// Isomorphism class of a 3-dimensional Lie algebra, keyed by the dimension
/// of the derived algebra.  For the two-dimensional case the class carries
/// the canonical form of ad_{e3} restricted to g', normalized up to positive
/// scale by the eigenvalue of largest modulus:
///   RealDiag  eigenvalues {1, param} with |param| <= 1,
///   Complex   rotation + dilation, param = |Re| / |Im| of the eigenvalues,
///   Jordan    single eigenvalue, non-diagonalizable ([[1,1],[0,1]]).
/// The parameter ranges are this library's convention; sources defer the
/// canonicalization.
struct AlgebraClass {
  AlgebraKind kind = AlgebraKind::Abelian;
  bool unimodular = true;
  int derived_dim = 0;
  std::optional<SolvableForm> form;
  std::optional<double> param;
};

namespace detail {

/// Canonical form of the 2x2 matrix ad_{e3}|g' (derived dim 2 case).
inline void classify_solvable2(const Mat2& m, AlgebraClass& out) {
  out.kind = AlgebraKind::Solvable2;
  const double tr = m.trace();
  const double det = m.determinant();
  const double disc = tr * tr - 4.0 * det;
  const double scale = std::max(1.0, inf_norm(Mat(m)));
  const double tol = kAlgebraicTol * scale * scale * 10.0;
  if (disc > tol) {
    const double root = std::sqrt(disc);
    double l1 = (tr + root) / 2.0, l2 = (tr - root) / 2.0;
    if (std::abs(l2) > std::abs(l1)) std::swap(l1, l2);
    out.form = SolvableForm::RealDiag;
    out.param = l2 / l1;  // |param| <= 1
  } else if (disc < -tol) {
    const double re = tr / 2.0;
    const double im = std::sqrt(-disc) / 2.0;
    out.form = SolvableForm::Complex;
    out.param = std::abs(re) / im;
  } else {
    // repeated eigenvalue: diagonalizable only when m is a multiple of I
    const double lambda = tr / 2.0;
    const Mat2 n = m - lambda * Mat2::Identity();
    if (inf_norm(Mat(n)) <= kRankTol * scale) {
      out.form = SolvableForm::RealDiag;
      out.param = 1.0;
    } else {
      out.form = SolvableForm::Jordan;
      out.param = 1.0;
    }
  }
}

}  // namespace detail

/// Classification of a 3-dimensional Lie algebra by its derived algebra:
/// dim 0 abelian; dim 1 Heisenberg (g' central) or h2 x R; dim 2 solvable
/// with canonical ad_{e3}|g'; dim 3 so(3) (Killing negative definite) or
/// sl(2,R).
inline AlgebraClass classify_algebra(const StructureConstants& sc) {
  if (sc.dim() != 3)
    throw DimensionError("classify_algebra: dim 3 required");
  require_lie_algebra(sc);

  AlgebraClass out;
  const DerivedAlgebra der = derived_algebra(sc);
  out.derived_dim = der.dim;
  out.unimodular = is_unimodular(sc);

  switch (der.dim) {
    case 0:
      out.kind = AlgebraKind::Abelian;
      break;
    case 1: {
      // Heisenberg iff g' lies in the center.
      const Vec g = der.basis.col(0);
      const double tol = kRankTol * std::max(1.0, sc.max_abs());
      bool central = true;
      for (int i = 0; i < 3 && central; ++i)
        central = inf_norm(bracket(sc, g, Vec::Unit(3, i))) <= tol;
      out.kind = central ? AlgebraKind::Heisenberg : AlgebraKind::H2xR;
      break;
    }
    case 2: {
      // complement vector: the coordinate direction sticking out of g' most
      const Mat u = der.basis;  // 3x2
      int best = 0;
      double best_norm = -1.0;
      Vec best_v;
      for (int i = 0; i < 3; ++i) {
        Vec v = Vec::Unit(3, i) - u * (u.transpose() * Vec::Unit(3, i));
        if (v.norm() > best_norm) {
          best_norm = v.norm();
          best = i;
          best_v = v;
        }
      }
      (void)best;
      const Vec e3 = best_v / best_v.norm();
      Mat2 m;
      for (int b = 0; b < 2; ++b) {
        const Vec w = bracket(sc, e3, u.col(b));
        for (int a = 0; a < 2; ++a) m(a, b) = u.col(a).dot(w);
      }
      detail::classify_solvable2(m, out);
      break;
    }
    default: {
      const Mat k = killing_form(sc);
      Eigen::SelfAdjointEigenSolver<Mat> es(k);
      const double scale = std::max(1.0, inf_norm(k));
      out.kind = (es.eigenvalues().maxCoeff() < -kRankTol * scale)
                     ? AlgebraKind::SO3
                     : AlgebraKind::SL2R;
      break;
    }
  }
  return out;
}

/// Isomorphism test through the classification invariants.
inline bool isomorphic(const StructureConstants& a,
                       const StructureConstants& b, double param_tol = 1e-6) {
  const AlgebraClass ca = classify_algebra(a);
  const AlgebraClass cb = classify_algebra(b);
  if (ca.kind != cb.kind) return false;
  if (ca.kind == AlgebraKind::Solvable2) {
    if (ca.form != cb.form) return false;
    return std::abs(*ca.param - *cb.param) <= param_tol;
  }
  return true;
}

/// Canonical algebras used throughout the library and its tests.
namespace algebras {

inline StructureConstants abelian3() { return StructureConstants(3); }

/// [e1, e2] = e3.
inline StructureConstants heisenberg() {
  StructureConstants sc(3);
  sc.set_c(0, 1, 2, 1.0);
  return sc;
}

/// h^2 x R: [e1, e2] = e2.
inline StructureConstants h2xr() {
  StructureConstants sc(3);
  sc.set_c(0, 1, 1, 1.0);
  return sc;
}

/// Euclidean algebra e(2): [e1, e3] = -e2, [e2, e3] = e1
/// (e3 generates the rotation, e1/e2 the translations).
inline StructureConstants e2() {
  StructureConstants sc(3);
  sc.set_c(0, 2, 1, -1.0);
  sc.set_c(1, 2, 0, 1.0);
  return sc;
}

/// so(3): [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2.
inline StructureConstants so3() {
  StructureConstants sc(3);
  sc.set_c(0, 1, 2, 1.0);
  sc.set_c(1, 2, 0, 1.0);
  sc.set_c(2, 0, 1, 1.0);
  return sc;
}

/// sl(2,R) in the basis (X1, X2, X0) with X0 elliptic:
/// [e1,e2] = -2 e3, [e1,e3] = -2 e2, [e2,e3] = 2 e1.
inline StructureConstants sl2r() {
  StructureConstants sc(3);
  sc.set_c(0, 1, 2, -2.0);
  sc.set_c(0, 2, 1, -2.0);
  sc.set_c(1, 2, 0, 2.0);
  return sc;
}

/// Solvable with ad_{e3}|g' = diag(1, a): [e3,e1] = e1, [e3,e2] = a e2.
inline StructureConstants solvable_real_diag(double a) {
  StructureConstants sc(3);
  sc.set_c(2, 0, 0, 1.0);
  sc.set_c(2, 1, 1, a);
  return sc;
}

/// Solvable with ad_{e3}|g' = [[a, -b], [b, a]] (rotation + dilation).
inline StructureConstants solvable_complex(double a, double b) {
  StructureConstants sc(3);
  sc.set_c(2, 0, 0, a);
  sc.set_c(2, 0, 1, b);
  sc.set_c(2, 1, 0, -b);
  sc.set_c(2, 1, 1, a);
  return sc;
}

/// Solvable with ad_{e3}|g' = [[1,1],[0,1]] (Jordan block).
inline StructureConstants solvable_jordan() {
  StructureConstants sc(3);
  sc.set_c(2, 0, 0, 1.0);
  sc.set_c(2, 1, 0, 1.0);
  sc.set_c(2, 1, 1, 1.0);
  return sc;
}

/// nil x| R = R x_{omega_1} e(2) in the basis (e0 central, e1, e2, e3):
/// [e1,e2] = e0, [e1,e3] = -e2, [e2,e3] = e1.
inline StructureConstants nil_semidirect_r() {
  StructureConstants sc(4);
  sc.set_c(1, 2, 0, 1.0);
  sc.set_c(1, 3, 2, -1.0);
  sc.set_c(2, 3, 1, 1.0);
  return sc;
}

/// u(2) in the basis (f0 = iI central, f_a = i sigma_a):
/// [f_a, f_b] = -2 eps_abc f_c.
inline StructureConstants u2() {
  StructureConstants sc(4);
  sc.set_c(1, 2, 3, -2.0);
  sc.set_c(2, 3, 1, -2.0);
  sc.set_c(3, 1, 2, -2.0);
  return sc;
}

}  // namespace algebras

}  // namespace geom3
