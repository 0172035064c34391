#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "matlog/linalg.hpp"
#include "matlog/rng.hpp"

using namespace matlog;

namespace {

ComplexMatrix random_matrix(Rng& rng, int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.unit_square();
  return m;
}

}  // namespace

TEST_CASE("mat_mul identity") {
  Rng rng(7);
  ComplexMatrix m = random_matrix(rng, 3);
  ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
  CHECK((mat_mul(i3, m) - m).norm() == 0.0);
}

TEST_CASE("mat_mul examples") {
  ComplexMatrix d1 = ComplexMatrix::Zero(2, 2);
  d1(0, 0) = 2.0;
  d1(1, 1) = 3.0;
  ComplexMatrix d2 = ComplexMatrix::Zero(2, 2);
  d2(0, 0) = 5.0;
  d2(1, 1) = 7.0;
  ComplexMatrix p = mat_mul(d1, d2);
  CHECK(p(0, 0) == Complex{10.0, 0.0});
  CHECK(p(1, 1) == Complex{21.0, 0.0});
  CHECK(p(0, 1) == Complex{0.0, 0.0});

  ComplexMatrix nilp = ComplexMatrix::Zero(2, 2);
  nilp(0, 1) = 1.0;
  CHECK(mat_mul(nilp, nilp).norm() == 0.0);

  ComplexMatrix wide(2, 2), tall(3, 3);
  CHECK_THROWS_AS((void)mat_mul(wide, tall), DimensionMismatch);
}

TEST_CASE("mat_mul associativity on random triples") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    int n = static_cast<int>(rng.uniform_int(2, 6));
    ComplexMatrix a = random_matrix(rng, n);
    ComplexMatrix b = random_matrix(rng, n);
    ComplexMatrix c = random_matrix(rng, n);
    ComplexMatrix lhs = mat_mul(mat_mul(a, b), c);
    ComplexMatrix rhs = mat_mul(a, mat_mul(b, c));
    CHECK((lhs - rhs).norm() <= 1e-12 * std::max(lhs.norm(), 1.0));
  }
}

TEST_CASE("mat_inverse examples") {
  ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK((mat_inverse(i2) - i2).norm() <= 1e-15);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  ComplexMatrix di = mat_inverse(d);
  CHECK(std::abs(di(0, 0) - Complex{0.5, 0.0}) <= 1e-15);
  CHECK(std::abs(di(1, 1) - Complex{0.25, 0.0}) <= 1e-15);

  ComplexMatrix ut(2, 2);
  ut << Complex{1, 0}, Complex{1, 0}, Complex{0, 0}, Complex{1, 0};
  ComplexMatrix uti = mat_inverse(ut);
  CHECK(std::abs(uti(0, 1) - Complex{-1.0, 0.0}) <= 1e-15);

  ComplexMatrix sing = ComplexMatrix::Zero(2, 2);
  sing(0, 0) = 1.0;
  CHECK_THROWS_AS((void)mat_inverse(sing), SingularMatrix);
}

TEST_CASE("mat_inverse residual on random matrices") {
  Rng rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    int n = static_cast<int>(rng.uniform_int(2, 8));
    ComplexMatrix a = random_matrix(rng, n);
    ComplexMatrix ai;
    try {
      ai = mat_inverse(a);
    } catch (const SingularMatrix&) {
      continue;  // legitimately rejected draw
    }
    ComplexMatrix in = ComplexMatrix::Identity(n, n);
    CHECK((a * ai - in).norm() <= 1e-10 * a.norm() * ai.norm());
  }
}

TEST_CASE("commutator examples and antisymmetry") {
  ComplexMatrix d1 = ComplexMatrix::Zero(2, 2);
  d1(0, 0) = 2.0;
  d1(1, 1) = 3.0;
  ComplexMatrix d2 = ComplexMatrix::Zero(2, 2);
  d2(0, 0) = Complex{0.0, 1.0};
  d2(1, 1) = 5.0;
  CHECK(commutator(d1, d2).norm() == 0.0);

  ComplexMatrix e = ComplexMatrix::Zero(2, 2);
  e(0, 1) = 1.0;
  ComplexMatrix f = ComplexMatrix::Zero(2, 2);
  f(1, 0) = 1.0;
  ComplexMatrix c = commutator(e, f);
  CHECK(c(0, 0) == Complex{1.0, 0.0});
  CHECK(c(1, 1) == Complex{-1.0, 0.0});
  CHECK(c(0, 1) == Complex{0.0, 0.0});

  Rng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    int n = static_cast<int>(rng.uniform_int(2, 6));
    ComplexMatrix a = random_matrix(rng, n);
    ComplexMatrix b = random_matrix(rng, n);
    ComplexMatrix ab = commutator(a, b);
    ComplexMatrix ba = commutator(b, a);
    // antisymmetry holds exactly as computed, entrywise
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(ab(i, j) == -ba(i, j));
  }
}

TEST_CASE("schur_decompose examples") {
  SUBCASE("diagonal input") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = Complex{1.0, 0.0};
    d(1, 1) = Complex{0.0, 2.0};
    d(2, 2) = Complex{-3.0, 1.0};
    SchurForm s = schur_decompose(d);
    CHECK(s.reconstruction_residual(d) <= 1e-13);
    CHECK(s.unitarity_residual() <= 1e-13);
    // diagonal of t is a permutation of the input diagonal
    std::vector<Complex> want{d(0, 0), d(1, 1), d(2, 2)};
    for (int i = 0; i < 3; ++i) {
      double best = 1e9;
      for (Complex w : want) best = std::min(best, std::abs(s.t(i, i) - w));
      CHECK(best <= 1e-12);
    }
  }

  SUBCASE("upper triangular fast path") {
    ComplexMatrix u(3, 3);
    u << Complex{1, 1}, Complex{2, 0}, Complex{3, 0},
         Complex{0, 0}, Complex{4, -1}, Complex{5, 0},
         Complex{0, 0}, Complex{0, 0}, Complex{6, 2};
    SchurForm s = schur_decompose(u);
    CHECK((s.t - u).norm() == 0.0);
    CHECK((s.q - ComplexMatrix::Identity(3, 3)).norm() == 0.0);
  }

  SUBCASE("random 4x4 residual") {
    Rng rng(99);
    ComplexMatrix a = random_matrix(rng, 4);
    SchurForm s = schur_decompose(a);
    CHECK((s.q * s.t * s.q.adjoint() - a).norm() <= 1e-12 * a.norm());
  }
}

TEST_CASE("schur invariants over random draws up to n=8") {
  Rng rng(404);
  for (int rep = 0; rep < 25; ++rep) {
    int n = static_cast<int>(rng.uniform_int(2, 8));
    ComplexMatrix a = random_matrix(rng, n);
    SchurForm s = schur_decompose(a);
    CHECK(s.reconstruction_residual(a) <= 1e-11);
    CHECK(s.unitarity_residual() <= 1e-12);
    // beneath the diagonal t is exactly zero
    for (int j = 0; j < n; ++j)
      for (int i = j + 1; i < n; ++i) CHECK(s.t(i, j) == Complex{0.0, 0.0});

    // eigenvalues of the reconstruction match diag(t), greedy nearest pairing
    ComplexMatrix recon = s.q * s.t * s.q.adjoint();
    auto eigs = eigenvalues(recon);
    std::vector<Complex> pool(eigs.data(), eigs.data() + eigs.size());
    for (int i = 0; i < n; ++i) {
      auto it = std::min_element(pool.begin(), pool.end(),
                                 [&](Complex p, Complex q) {
                                   return std::abs(p - s.t(i, i)) <
                                          std::abs(q - s.t(i, i));
                                 });
      CHECK(std::abs(*it - s.t(i, i)) <= 1e-9);
      pool.erase(it);
    }
  }
}

TEST_CASE("eigenvalues examples") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = Complex{0.0, 2.0};
  auto e1 = eigenvalues(d);
  CHECK(std::min(std::abs(e1(0) - Complex{1, 0}), std::abs(e1(1) - Complex{1, 0})) <= 1e-14);
  CHECK(std::min(std::abs(e1(0) - Complex{0, 2}), std::abs(e1(1) - Complex{0, 2})) <= 1e-14);

  ComplexMatrix nilp = ComplexMatrix::Zero(2, 2);
  nilp(0, 1) = 1.0;
  auto e2 = eigenvalues(nilp);
  CHECK(std::abs(e2(0)) <= 1e-14);
  CHECK(std::abs(e2(1)) <= 1e-14);

  // companion matrix of z^2 - (u+v) z + uv has spectrum {u, v}
  Complex u{0.3, 1.7}, v{-1.2, 0.4};
  ComplexMatrix comp(2, 2);
  comp << Complex{0, 0}, -u * v, Complex{1, 0}, u + v;
  auto e3 = eigenvalues(comp);
  double du = std::min(std::abs(e3(0) - u), std::abs(e3(1) - u));
  double dv = std::min(std::abs(e3(0) - v), std::abs(e3(1) - v));
  CHECK(du <= 1e-12);
  CHECK(dv <= 1e-12);
}

TEST_CASE("non-finite entries are rejected") {
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 0) = Complex{std::numeric_limits<double>::quiet_NaN(), 0.0};
  CHECK_THROWS_AS((void)schur_decompose(bad), ConfigError);
  CHECK_THROWS_AS((void)mat_mul(bad, bad), ConfigError);
}
