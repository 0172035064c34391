#pragma once

#include <complex>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

#include "matlog/config.hpp"
#include "matlog/errors.hpp"
#include "matlog/types.hpp"

namespace matlog {

template <typename Derived>
using PlainMatrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic,
                                  Eigen::Dynamic>;

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* who) {
  if (a.rows() == 0 || a.rows() != a.cols())
    throw DimensionMismatch(std::string(who) + ": expected nonempty square matrix, got " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* who) {
  if (!a.derived().allFinite())
    throw ConfigError(std::string(who) + ": matrix has non-finite entries");
}

template <typename DerivedA, typename DerivedB>
void require_same_dim(const Eigen::MatrixBase<DerivedA>& a,
                      const Eigen::MatrixBase<DerivedB>& b, const char* who) {
  require_square(a, who);
  require_square(b, who);
  if (a.rows() != b.rows())
    throw DimensionMismatch(std::string(who) + ": dimension mismatch " +
                            std::to_string(a.rows()) + " vs " +
                            std::to_string(b.rows()));
}

// Unitary/triangular factorization a = q t q*. The diagonal of t lists the
// eigenvalues; no reordering is performed.
template <typename CScalar>
struct SchurFormT {
  using Matrix = Eigen::Matrix<CScalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix q;
  Matrix t;

  Eigen::Index dim() const { return t.rows(); }

  double unitarity_residual() const {
    return (q * q.adjoint() - Matrix::Identity(dim(), dim())).norm();
  }
  double reconstruction_residual(const Matrix& a) const {
    double na = a.norm();
    return (q * t * q.adjoint() - a).norm() / (na > 0 ? na : 1.0);
  }
};

using SchurForm = SchurFormT<Complex>;

template <typename DerivedA, typename DerivedB>
PlainMatrix<DerivedA> mat_mul(const Eigen::MatrixBase<DerivedA>& a,
                              const Eigen::MatrixBase<DerivedB>& b) {
  require_same_dim(a, b, "mat_mul");
  require_finite(a, "mat_mul");
  require_finite(b, "mat_mul");
  return a * b;
}

template <typename DerivedA, typename DerivedB>
PlainMatrix<DerivedA> commutator(const Eigen::MatrixBase<DerivedA>& a,
                                 const Eigen::MatrixBase<DerivedB>& b) {
  require_same_dim(a, b, "commutator");
  require_finite(a, "commutator");
  require_finite(b, "commutator");
  return a * b - b * a;
}

// ||ab - ba||_F / (||a||_F ||b||_F), the commutator scale used by all
// commuting/noncommuting judgments.
template <typename DerivedA, typename DerivedB>
double commutator_norm(const Eigen::MatrixBase<DerivedA>& a,
                       const Eigen::MatrixBase<DerivedB>& b) {
  double scale = a.norm() * b.norm();
  if (scale == 0.0) return 0.0;
  return commutator(a, b).norm() / scale;
}

template <typename Derived>
PlainMatrix<Derived> mat_inverse(const Eigen::MatrixBase<Derived>& a,
                                 const Config& cfg = default_config()) {
  require_square(a, "mat_inverse");
  require_finite(a, "mat_inverse");
  PlainMatrix<Derived> m = a;
  Eigen::JacobiSVD<PlainMatrix<Derived>> svd(m);
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  double floor = cfg.inverse_cond_floor * m.norm();
  if (!(smin > floor))
    throw SingularMatrix("mat_inverse: smallest singular value " +
                         std::to_string(smin) + " under conditioning floor " +
                         std::to_string(floor));
  return m.fullPivLu().inverse();
}

namespace detail {
template <typename Matrix>
bool exactly_upper_triangular(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = j + 1; i < m.rows(); ++i)
      if (m(i, j) != typename Matrix::Scalar(0)) return false;
  return true;
}
}  // namespace detail

template <typename Derived>
SchurFormT<typename Derived::Scalar> schur_decompose(
    const Eigen::MatrixBase<Derived>& a, const Config& = default_config()) {
  using CScalar = typename Derived::Scalar;
  static_assert(Eigen::NumTraits<CScalar>::IsComplex,
                "schur_decompose expects a complex scalar type");
  require_square(a, "schur_decompose");
  require_finite(a, "schur_decompose");

  using Matrix = Eigen::Matrix<CScalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix m = a;
  // Already-triangular inputs pass through unchanged; this also keeps the
  // eigenvalue order of constructed triangular families stable.
  if (detail::exactly_upper_triangular(m))
    return {Matrix::Identity(m.rows(), m.cols()), m};

  Eigen::ComplexSchur<Matrix> schur(m, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw SchurFailure("schur_decompose: QR iteration did not converge for " +
                           std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + " input",
                       ComplexMatrix(m.template cast<Complex>()));
  return {schur.matrixU(), schur.matrixT()};
}

template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> eigenvalues(
    const Eigen::MatrixBase<Derived>& a, const Config& cfg = default_config()) {
  return schur_decompose(a, cfg).t.diagonal();
}

}  // namespace matlog
