#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "decaybell/linalg.hpp"
#include "test_util.hpp"

using decaybell::Complex;
using decaybell::ComplexMatrix;
using testutil::max_abs_diff;

namespace {

ComplexMatrix diag2(Complex a, Complex b) {
  ComplexMatrix m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("kron: identity and diagonal structure") {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  CHECK(max_abs_diff(kron(i2, i2), ComplexMatrix::identity(4)) == 0.0);

  const ComplexMatrix d = diag2({2.0, 1.0}, {-3.0, 0.5});
  const ComplexMatrix k = kron(d, i2);
  ComplexMatrix expected(4, 4);
  expected(0, 0) = expected(1, 1) = Complex{2.0, 1.0};
  expected(2, 2) = expected(3, 3) = Complex{-3.0, 0.5};
  CHECK(max_abs_diff(k, expected) == 0.0);
}

TEST_CASE("kron: matches brute-force index loop and mixed-product rule") {
  auto rng = testutil::make_rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = testutil::random_matrix(3, 3, rng);
    const ComplexMatrix b = testutil::random_matrix(3, 3, rng);
    CHECK(max_abs_diff(kron(a, b), testutil::brute_force_kron(a, b)) < 1e-14);

    const ComplexMatrix c = testutil::random_matrix(3, 3, rng);
    const ComplexMatrix d = testutil::random_matrix(3, 3, rng);
    CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
  }
}

TEST_CASE("vec: row-major ordering") {
  ComplexMatrix m(2, 2, {Complex{1}, Complex{2}, Complex{3}, Complex{4}});
  const ComplexMatrix v = vec(m);
  REQUIRE(v.rows() == 4);
  REQUIRE(v.cols() == 1);
  CHECK(v(0, 0) == Complex{1});
  CHECK(v(1, 0) == Complex{2});
  CHECK(v(2, 0) == Complex{3});
  CHECK(v(3, 0) == Complex{4});

  const ComplexMatrix vi = vec(ComplexMatrix::identity(2));
  CHECK(vi(0, 0) == Complex{1});
  CHECK(vi(1, 0) == Complex{0});
  CHECK(vi(2, 0) == Complex{0});
  CHECK(vi(3, 0) == Complex{1});

  CHECK_THROWS_AS(vec(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("unvec: inverse of vec") {
  const ComplexMatrix v = ComplexMatrix::column({Complex{1}, Complex{0}, Complex{0}, Complex{1}});
  CHECK(max_abs_diff(unvec(v, 2), ComplexMatrix::identity(2)) == 0.0);

  const ComplexMatrix w = ComplexMatrix::column({Complex{1}, Complex{2}, Complex{3}, Complex{4}});
  const ComplexMatrix m = unvec(w, 2);
  CHECK(m(0, 0) == Complex{1});
  CHECK(m(0, 1) == Complex{2});
  CHECK(m(1, 0) == Complex{3});
  CHECK(m(1, 1) == Complex{4});

  auto rng = testutil::make_rng(7);
  const ComplexMatrix r = testutil::random_matrix(3, 3, rng);
  CHECK(max_abs_diff(unvec(vec(r), 3), r) == 0.0);

  CHECK_THROWS_AS(unvec(ComplexMatrix::column({Complex{1}, Complex{2}}), 2),
                  std::invalid_argument);
}

TEST_CASE("vec identity: vec(A X B) = (A kron B^T) vec(X)") {
  auto rng = testutil::make_rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = testutil::random_matrix(3, 3, rng);
    const ComplexMatrix x = testutil::random_matrix(3, 3, rng);
    const ComplexMatrix b = testutil::random_matrix(3, 3, rng);
    const ComplexMatrix lhs = vec(a * x * b);
    const ComplexMatrix rhs = kron(a, b.transpose()) * vec(x);
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("expm: trivial cases") {
  CHECK(max_abs_diff(expm(ComplexMatrix(3, 3)), ComplexMatrix::identity(3)) < 1e-15);

  const ComplexMatrix d = expm(diag2({-1.0, 0.0}, {-2.0, 0.0}));
  CHECK(std::abs(d(0, 0) - Complex{std::exp(-1.0), 0.0}) < 1e-14);
  CHECK(std::abs(d(1, 1) - Complex{std::exp(-2.0), 0.0}) < 1e-14);
  CHECK(std::abs(d(0, 1)) < 1e-15);

  ComplexMatrix nilpotent(2, 2);
  nilpotent(0, 1) = 1.0;
  const ComplexMatrix e = expm(nilpotent);
  CHECK(max_abs_diff(e, ComplexMatrix::identity(2) + nilpotent) < 1e-14);

  CHECK_THROWS_AS(expm(ComplexMatrix(2, 3)), std::invalid_argument);
  ComplexMatrix bad(2, 2);
  bad(0, 0) = Complex{std::nan(""), 0.0};
  CHECK_THROWS_AS(expm(bad), std::invalid_argument);
}

TEST_CASE("expm: matches truncated Taylor oracle on norm-bounded matrices") {
  auto rng = testutil::make_rng(33);
  for (int trial = 0; trial < 25; ++trial) {
    ComplexMatrix a = testutil::random_matrix(9, 9, rng);
    a *= Complex{1.0 / a.one_norm(), 0.0};  // scale to norm 1
    CHECK(max_abs_diff(expm(a), testutil::taylor_expm(a)) < 1e-10);
  }
}

TEST_CASE("expm: inverse and semigroup properties") {
  auto rng = testutil::make_rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix a = testutil::random_matrix(5, 5, rng);
    a *= Complex{2.0 / a.one_norm(), 0.0};
    CHECK(max_abs_diff(expm(a) * expm(-a), ComplexMatrix::identity(5)) < 1e-9);

    const double t1 = 0.37, t2 = 1.21;
    const ComplexMatrix lhs = expm(a * (t1 + t2));
    const ComplexMatrix rhs = expm(a * t1) * expm(a * t2);
    CHECK(max_abs_diff(lhs, rhs) < 1e-9);
  }
}

TEST_CASE("eig_hermitian: sorted eigenvalues on simple matrices") {
  ComplexMatrix d(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  const auto spec = eig_hermitian(d);
  REQUIRE(spec.eigenvalues.size() == 3);
  CHECK(spec.eigenvalues[0] == Catch::Approx(1.0));
  CHECK(spec.eigenvalues[1] == Catch::Approx(2.0));
  CHECK(spec.eigenvalues[2] == Catch::Approx(3.0));

  ComplexMatrix sx(2, 2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  const auto sx_spec = eig_hermitian(sx);
  CHECK(sx_spec.eigenvalues[0] == Catch::Approx(-1.0));
  CHECK(sx_spec.eigenvalues[1] == Catch::Approx(1.0));
}

TEST_CASE("eig_hermitian: residuals, orthonormality and trace identities") {
  auto rng = testutil::make_rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix m = testutil::random_hermitian(9, rng);
    const auto spec = eig_hermitian(m);

    double sum = 0.0, sum_sq = 0.0;
    for (double lambda : spec.eigenvalues) {
      sum += lambda;
      sum_sq += lambda * lambda;
    }
    CHECK(std::abs(sum - m.trace().real()) < 1e-9);
    CHECK(std::abs(sum_sq - (m * m).trace().real()) < 1e-9);

    // columns orthonormal
    const ComplexMatrix gram = spec.eigenvectors.adjoint() * spec.eigenvectors;
    CHECK(max_abs_diff(gram, ComplexMatrix::identity(9)) < 1e-10);

    // residual per pair, relative to the matrix norm
    for (std::size_t k = 0; k < 9; ++k) {
      ComplexMatrix v(9, 1);
      for (std::size_t i = 0; i < 9; ++i) v(i, 0) = spec.eigenvectors(i, k);
      const ComplexMatrix residual = m * v - v * spec.eigenvalues[k];
      CHECK(residual.frobenius_norm() <= 1e-10 * std::max(1.0, m.frobenius_norm()));
    }
  }
}

TEST_CASE("eig_hermitian: rejects junk") {
  CHECK_THROWS_AS(eig_hermitian(ComplexMatrix(2, 3)), std::invalid_argument);
  ComplexMatrix nonherm(2, 2);
  nonherm(0, 1) = Complex{1.0, 0.0};
  nonherm(1, 0) = Complex{0.5, 0.0};
  CHECK_THROWS_AS(eig_hermitian(nonherm), std::invalid_argument);
}

TEST_CASE("eig_hermitian: matches power-iteration extremes") {
  auto rng = testutil::make_rng(91);
  const ComplexMatrix m = testutil::random_hermitian(9, rng);
  const auto spec = eig_hermitian(m);
  const auto [lo, hi] = testutil::power_iteration_extremes(m, rng);
  CHECK(std::abs(spec.eigenvalues.front() - lo) < 1e-7);
  CHECK(std::abs(spec.eigenvalues.back() - hi) < 1e-7);
}
