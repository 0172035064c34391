#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "matlog/config.hpp"
#include "matlog/errors.hpp"
#include "matlog/linalg.hpp"
#include "matlog/scalar_fun.hpp"
#include "matlog/types.hpp"

namespace matlog {

// Euclidean distance from a point to the branch cut ]-inf, 0].
inline double cut_distance(Complex lam) {
  return lam.real() <= 0.0 ? std::abs(lam.imag()) : std::abs(lam);
}

struct CutCheckReport {
  std::vector<Complex> eigenvalues;
  double min_cut_distance = std::numeric_limits<double>::infinity();
  bool off_cut = false;
};

inline CutCheckReport make_cut_report(const std::vector<Complex>& eigs,
                                      const Config& cfg) {
  CutCheckReport rep;
  rep.eigenvalues = eigs;
  for (Complex lam : eigs)
    rep.min_cut_distance = std::min(rep.min_cut_distance, cut_distance(lam));
  rep.off_cut = rep.min_cut_distance > cfg.cut_tol;
  return rep;
}

template <typename Derived>
CutCheckReport check_spectrum_off_cut(const Eigen::MatrixBase<Derived>& a,
                                      const Config& cfg = default_config()) {
  auto eigs = eigenvalues(a, cfg);
  std::vector<Complex> v(eigs.data(), eigs.data() + eigs.size());
  return make_cut_report(v, cfg);
}

namespace detail {

template <typename Matrix>
double one_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

// Principal square root of an upper triangular matrix via the column
// recurrence; diagonal arguments are halved, which is what pins the
// principal strip for the logarithm.
template <typename Matrix>
Matrix sqrt_triangular(const Matrix& t) {
  const Eigen::Index n = t.rows();
  Matrix r = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) r(i, i) = std::sqrt(t(i, i));
  for (Eigen::Index j = 1; j < n; ++j) {
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      typename Matrix::Scalar s = t(i, j);
      for (Eigen::Index k = i + 1; k < j; ++k) s -= r(i, k) * r(k, j);
      r(i, j) = s / (r(i, i) + r(j, j));
    }
  }
  return r;
}

}  // namespace detail

// Matrix exponential: scaling and squaring with the degree-13 diagonal Pade
// approximant, scaled so the 1-norm falls under theta_13 = 5.3719...
template <typename Derived>
PlainMatrix<Derived> mat_exp(const Eigen::MatrixBase<Derived>& a,
                             const Config& cfg = default_config()) {
  using Matrix = PlainMatrix<Derived>;
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  require_square(a, "mat_exp");
  require_finite(a, "mat_exp");

  Matrix m = a;
  const Eigen::Index n = m.rows();
  if (m.norm() > cfg.exp_norm_budget)
    throw OverflowBudget("mat_exp: ||a||_F = " + std::to_string(m.norm()) +
                         " exceeds exponent budget " +
                         std::to_string(cfg.exp_norm_budget));

  int s = 0;
  double n1 = detail::one_norm(m);
  if (n1 > cfg.exp_scaling_theta)
    s = static_cast<int>(std::ceil(std::log2(n1 / cfg.exp_scaling_theta)));
  if (s > 0) m *= Real(std::ldexp(1.0, -s));

  static const double b[14] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};

  const Matrix ident = Matrix::Identity(n, n);
  const Matrix m2 = m * m;
  const Matrix m4 = m2 * m2;
  const Matrix m6 = m2 * m4;
  Matrix u = m * (m6 * (Real(b[13]) * m6 + Real(b[11]) * m4 + Real(b[9]) * m2) +
                  Real(b[7]) * m6 + Real(b[5]) * m4 + Real(b[3]) * m2 +
                  Real(b[1]) * ident);
  Matrix v = m6 * (Real(b[12]) * m6 + Real(b[10]) * m4 + Real(b[8]) * m2) +
             Real(b[6]) * m6 + Real(b[4]) * m4 + Real(b[2]) * m2 +
             Real(b[0]) * ident;

  Matrix f = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) f = f * f;
  return f;
}

// Principal matrix logarithm by inverse scaling and squaring on the Schur
// factor: triangular square roots until ||t - I||_1 <= 0.25, then the
// degree-7 Pade approximant of log(I + z) in partial-fraction form.
template <typename CScalar>
typename SchurFormT<CScalar>::Matrix mat_log_from_schur(
    const SchurFormT<CScalar>& schur, const Config& cfg = default_config()) {
  using Matrix = typename SchurFormT<CScalar>::Matrix;
  using Real = typename Eigen::NumTraits<CScalar>::Real;
  const Eigen::Index n = schur.dim();

  double min_dist = std::numeric_limits<double>::infinity();
  Complex worst{};
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex lam(schur.t(i, i));
    double d = cut_distance(lam);
    if (d < min_dist) {
      min_dist = d;
      worst = lam;
    }
  }
  if (!(min_dist > cfg.cut_tol))
    throw EigenvalueOnCut(
        "mat_log_principal: eigenvalue " + std::to_string(worst.real()) +
            (worst.imag() < 0 ? "-" : "+") +
            std::to_string(std::abs(worst.imag())) +
            "i lies on the cut ]-inf,0] (distance " + std::to_string(min_dist) +
            ")",
        worst, min_dist);

  Matrix t = schur.t;
  const Matrix ident = Matrix::Identity(n, n);
  int k = 0;
  while (detail::one_norm(Matrix(t - ident)) > cfg.log_sqrt_target) {
    if (++k > 100)
      throw SchurFailure("mat_log_principal: triangular square-root cap hit",
                         ComplexMatrix(schur.t.template cast<Complex>()));
    t = detail::sqrt_triangular(t);
  }

  // 7-node Gauss-Legendre nodes/weights on [0,1]; equivalent to the [7/7]
  // diagonal Pade approximant of log(I + z).
  static const double gl7[7][2] = {
      {0.025446043828620737737, 0.064742483084434846635},
      {0.12923440720030278007, 0.13985269574463833395},
      {0.29707742431130141655, 0.19091502525255947248},
      {0.5, 0.20897959183673469388},
      {0.70292257568869858345, 0.19091502525255947248},
      {0.87076559279969721993, 0.13985269574463833395},
      {0.97455395617137926226, 0.064742483084434846635}};

  const Matrix z = t - ident;
  Matrix logt = Matrix::Zero(n, n);
  for (const auto& nw : gl7) {
    Matrix lhs = ident + Real(nw[0]) * z;
    logt += Real(nw[1]) *
            lhs.template triangularView<Eigen::Upper>().solve(z);
  }
  logt *= Real(std::ldexp(1.0, k));
  return schur.q * logt * schur.q.adjoint();
}

template <typename Derived>
PlainMatrix<Derived> mat_log_principal(const Eigen::MatrixBase<Derived>& a,
                                       const Config& cfg = default_config()) {
  require_square(a, "mat_log_principal");
  require_finite(a, "mat_log_principal");
  return mat_log_from_schur(schur_decompose(a, cfg), cfg);
}

namespace detail {

// Truncated phi series, valid for ||m||_1 <= 1/2.
template <typename Matrix>
Matrix phi_series(const Matrix& m) {
  using Real = typename Eigen::NumTraits<typename Matrix::Scalar>::Real;
  const Eigen::Index n = m.rows();
  Matrix sum = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  double factorial = 1.0;
  for (int k = 1; k <= 20; ++k) {
    term = term * m;
    factorial *= static_cast<double>(k + 1);
    sum += term * Real(1.0 / factorial);
  }
  return sum;
}

}  // namespace detail

// Matrix phi-function: a phi(a) = e^a - I, phi(0) = I. Solved through the
// Schur factor when the spectrum clears zero, otherwise by a scaled series
// squared back up with phi(2z) = phi(z)(e^z + I)/2.
template <typename Derived>
PlainMatrix<Derived> mat_phi(const Eigen::MatrixBase<Derived>& a,
                             const Config& cfg = default_config()) {
  using Matrix = PlainMatrix<Derived>;
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  require_square(a, "mat_phi");
  require_finite(a, "mat_phi");

  auto schur = schur_decompose(a, cfg);
  const Eigen::Index n = schur.dim();
  const Matrix ident = Matrix::Identity(n, n);

  double min_eig = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i)
    min_eig = std::min(min_eig, std::abs(Complex(schur.t(i, i))));

  Matrix x;
  if (min_eig > cfg.phi_solve_min_eig) {
    Matrix e = mat_exp(schur.t, cfg);
    x = schur.t.template triangularView<Eigen::Upper>().solve(
        Matrix(e - ident));
  } else {
    int s = 0;
    double n1 = detail::one_norm(schur.t);
    if (n1 > 0.5) s = static_cast<int>(std::ceil(std::log2(n1 / 0.5)));
    Matrix ts = schur.t * Real(std::ldexp(1.0, -s));
    Matrix phi = detail::phi_series(ts);
    Matrix e = mat_exp(ts, cfg);
    for (int k = 0; k < s; ++k) {
      phi = phi * (e + ident) * Real(0.5);
      e = e * e;
    }
    x = phi;
  }
  return schur.q * x * schur.q.adjoint();
}

// ---------------------------------------------------------------------------
// Polynomial representation via Hermite interpolation on the spectrum.

enum class NamedFunction { Log, Exp, Phi };

inline NamedFunction named_function_from(const std::string& name) {
  if (name == "log") return NamedFunction::Log;
  if (name == "exp") return NamedFunction::Exp;
  if (name == "phi") return NamedFunction::Phi;
  throw ConfigError("unknown function name: " + name +
                    " (expected log, exp or phi)");
}

namespace detail {

// j-th derivative of the named function (j = 0 is the value itself).
inline Complex named_derivative(NamedFunction f, Complex z, int j) {
  switch (f) {
    case NamedFunction::Exp:
      return std::exp(z);
    case NamedFunction::Log: {
      if (j == 0) return std::log(z);
      // (-1)^{j-1} (j-1)! / z^j
      double fact = 1.0;
      for (int i = 2; i < j; ++i) fact *= i;
      Complex zp = std::pow(z, j);
      return Complex(((j - 1) % 2 == 0) ? fact : -fact) / zp;
    }
    case NamedFunction::Phi: {
      if (std::abs(z) <= 1.0) {
        // phi^(j)(z) = sum_t z^t / (t! (t+j+1))
        Complex sum{0.0, 0.0};
        Complex zt{1.0, 0.0};
        double tfact = 1.0;
        for (int t = 0; t <= 25; ++t) {
          if (t > 0) {
            zt *= z;
            tfact *= t;
          }
          sum += zt / Complex(tfact * (t + j + 1));
        }
        return sum;
      }
      // z phi^(j)(z) + j phi^(j-1)(z) = e^z
      Complex ez = std::exp(z);
      Complex d = phi_scalar(z);
      for (int i = 1; i <= j; ++i) d = (ez - Complex(double(i)) * d) / z;
      return d;
    }
  }
  throw Error("named_derivative: unreachable");
}

}  // namespace detail

struct PolynomialRep {
  std::vector<Complex> coefficients;  // ascending degree
  ComplexMatrix base;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }

  ComplexMatrix evaluate(const ComplexMatrix& at) const {
    require_square(at, "PolynomialRep::evaluate");
    const Eigen::Index n = at.rows();
    ComplexMatrix x = ComplexMatrix::Zero(n, n);
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
      x = x * at + *it * ComplexMatrix::Identity(n, n);
    return x;
  }

  Complex evaluate(Complex at) const {
    Complex x{0.0, 0.0};
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
      x = x * at + *it;
    return x;
  }
};

// p with p(a) = f(a), built from confluent divided differences over the
// eigenvalue clusters (cluster radius merges near-coincident eigenvalues
// into one node of raised multiplicity).
inline PolynomialRep polynomial_rep(const ComplexMatrix& a, NamedFunction f,
                                    const Config& cfg = default_config()) {
  require_square(a, "polynomial_rep");
  require_finite(a, "polynomial_rep");

  auto eigvec = eigenvalues(a, cfg);
  std::vector<Complex> eigs(eigvec.data(), eigvec.data() + eigvec.size());

  if (f == NamedFunction::Log) {
    auto rep = make_cut_report(eigs, cfg);
    if (!rep.off_cut)
      throw EigenvalueOnCut("polynomial_rep: spectrum on the cut",
                            rep.eigenvalues.front(), rep.min_cut_distance);
  }

  // Single-linkage clustering at the configured radius.
  std::vector<std::vector<Complex>> clusters;
  for (Complex lam : eigs) {
    std::vector<std::size_t> hits;
    for (std::size_t c = 0; c < clusters.size(); ++c)
      for (Complex z : clusters[c])
        if (std::abs(z - lam) < cfg.cluster_radius) {
          hits.push_back(c);
          break;
        }
    if (hits.empty()) {
      clusters.push_back({lam});
    } else {
      clusters[hits.front()].push_back(lam);
      for (std::size_t h = hits.size(); h-- > 1;) {
        auto& src = clusters[hits[h]];
        auto& dst = clusters[hits.front()];
        dst.insert(dst.end(), src.begin(), src.end());
        clusters.erase(clusters.begin() + static_cast<long>(hits[h]));
      }
    }
  }

  std::vector<Complex> node;       // full sequence with repetitions
  std::vector<std::size_t> group;  // cluster id per position
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].size() >
        static_cast<std::size_t>(cfg.interpolation_multiplicity_cap))
      throw IllConditionedInterpolation(
          "polynomial_rep: eigenvalue cluster of multiplicity " +
          std::to_string(clusters[c].size()) + " exceeds cap");
    Complex mean{0.0, 0.0};
    for (Complex z : clusters[c]) mean += z;
    mean /= Complex(double(clusters[c].size()));
    for (std::size_t i = 0; i < clusters[c].size(); ++i) {
      node.push_back(mean);
      group.push_back(c);
    }
  }

  const std::size_t m = node.size();
  // dd[i][j] = f[z_i..z_j]; confluent entries use analytic derivatives.
  std::vector<std::vector<Complex>> dd(m, std::vector<Complex>(m));
  for (std::size_t i = 0; i < m; ++i)
    dd[i][i] = detail::named_derivative(f, node[i], 0);
  for (std::size_t len = 1; len < m; ++len) {
    for (std::size_t i = 0; i + len < m; ++i) {
      std::size_t j = i + len;
      if (group[i] == group[j]) {
        double fact = 1.0;
        for (std::size_t k = 2; k <= len; ++k) fact *= double(k);
        dd[i][j] = detail::named_derivative(f, node[i], static_cast<int>(len)) /
                   Complex(fact);
      } else {
        dd[i][j] = (dd[i + 1][j] - dd[i][j - 1]) / (node[j] - node[i]);
      }
    }
  }

  // Newton form -> ascending monomial coefficients.
  std::vector<Complex> poly{dd[0][m - 1]};
  for (std::size_t k = m - 1; k-- > 0;) {
    std::vector<Complex> next(poly.size() + 1, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= node[k] * poly[i];
    }
    next[0] += dd[0][k];
    poly = std::move(next);
  }
  while (poly.size() > 1 && std::abs(poly.back()) == 0.0) poly.pop_back();

  return PolynomialRep{std::move(poly), a};
}

inline PolynomialRep polynomial_rep(const ComplexMatrix& a,
                                    const std::string& f,
                                    const Config& cfg = default_config()) {
  return polynomial_rep(a, named_function_from(f), cfg);
}

}  // namespace matlog
