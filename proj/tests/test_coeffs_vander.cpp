#include <cmath>

#include "doctest.h"
#include "tacnode/coeffs.hpp"
#include "tacnode/rng.hpp"
#include "tacnode/special.hpp"
#include "tacnode/vander.hpp"

using namespace tacnode;

TEST_CASE("coefficient table anchors") {
  CoeffTables t0(0.0, 8);
  CHECK(t0.c(0) == 1.0);
  CHECK(t0.a(0) == 1.0);
  CHECK(t0.c_tilde(0) == doctest::Approx(0.5).epsilon(1e-15));
  CoeffTables th(0.5, 8);
  CHECK(th.c(0) == 1.0);
  CHECK(th.a(0) == 1.0);
  CHECK(th.c(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS(coeff_tables(0.3, -1));
}

TEST_CASE("convolution inverse identity") {
  Rng rng(99);
  for (double beta : {0.0, 0.4, 1.1, 2.3}) {
    CoeffTables t(beta, 14);
    for (int m = 0; m <= 14; ++m) {
      double s = 0.0;
      for (int p = 0; p <= m; ++p) s += t.a(p) * t.c(m - p);
      CHECK(std::abs(s - (m == 0 ? 1.0 : 0.0)) < 1e-9);
    }
  }
  (void)rng;
}

TEST_CASE("mixed sum identities") {
  Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    double beta = rng.uniform(0.0, 1.5);
    double y = rng.uniform(-3.0, 3.0);
    int m = rng.uniform_int(11);
    CoeffTables t(beta, m + 1);
    double s1 = 0.0, s2 = 0.0;
    for (int p = 0; p <= m; ++p) {
      s1 += t.c(p) * p_poly(m - p, y - beta);
      s2 += t.a(p) * hermite_tilde(m - p, -y + beta);
    }
    CHECK(std::abs(s1 - hermite_tilde(m, y + beta)) < 1e-9);
    CHECK(std::abs(s2 - p_poly(m, -y - beta)) < 1e-9);
    double u = rng.uniform(-2.0, 2.0), v = rng.uniform(-2.0, 2.0);
    double s3 = 0.0;
    for (int k = 0; k <= m; ++k) s3 += hermite_tilde(k, -u) * p_poly(m - k, v);
    CHECK(std::abs(s3 - std::pow(2.0 * (v - u), m) / factorial(m)) < 1e-9);
  }
}

TEST_CASE("toeplitz matrices and the inverse pair") {
  CoeffTables t(0.7, 8);
  auto cs = c_sequence(t, 8);
  auto as = a_sequence(t, 8);
  CHECK(toeplitz_lower(cs, 1)(0, 0) == 1.0);
  for (int alpha : {2, 4, 6}) {
    Eigen::MatrixXd prod = toeplitz_lower(cs, alpha) * toeplitz_lower(as, alpha);
    CHECK((prod - Eigen::MatrixXd::Identity(alpha, alpha)).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("flipped toeplitz applies the inverse relation") {
  // C_flipped^{-1} sends (H~_{a-1}(y+b), ..., H~_0(y+b)) to
  // (P_0(y-b), ..., P_{a-1}(y-b)).
  Rng rng(5);
  for (int alpha : {1, 2, 4, 5}) {
    double beta = rng.uniform(0.0, 1.2), y = rng.uniform(-2.0, 2.0);
    CoeffTables t(beta, alpha + 1);
    Eigen::MatrixXd cf = toeplitz_flipped(c_sequence(t, alpha + 1), alpha);
    Eigen::VectorXd h(alpha), p(alpha);
    for (int i = 0; i < alpha; ++i) {
      h[i] = hermite_tilde(alpha - 1 - i, y + beta);
      p[i] = p_poly(i, y - beta);
    }
    Eigen::VectorXd lhs = cf.partialPivLu().solve(h);
    CHECK((lhs - p).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("vandermonde and the extended determinant") {
  Spectrum x2(2);
  x2 << 1.0, 0.0;
  CHECK(vandermonde(x2) == doctest::Approx(1.0));
  Rng rng(7);
  for (int n : {2, 3, 4}) {
    Spectrum x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.uniform(-2.0, 2.0);
    x = sorted_decreasing(x);
    for (Sign s : {Sign::plus, Sign::minus})
      CHECK(vandermonde_ext(x, 0, 0.8, s) ==
            doctest::Approx(vandermonde(x)).epsilon(1e-10));
  }
  Spectrum x1(1);
  x1 << 0.0;
  CHECK(vandermonde_ext(x1, 1, 0.0, Sign::plus) ==
        doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("hermite matrix determinant constant") {
  Rng rng(11);
  for (int n = 1; n <= 6; ++n) {
    Spectrum x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.uniform(-2.0, 2.0);
    double det = hermite_tilde_matrix(x).determinant();
    double expect = hermite_matrix_constant(n) * vandermonde(x);
    CHECK(std::abs(det - expect) < 1e-8 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("HP matrix identity") {
  Rng rng(13);
  for (int n = 1; n <= 6; ++n) {
    Spectrum x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.uniform(-2.0, 2.0);
      y[i] = rng.uniform(-2.0, 2.0);
    }
    Eigen::MatrixXd hp(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) hp(i, j) = p_poly(i, y[j]);
    Eigen::MatrixXd lhs = hermite_tilde_matrix(x) * hp;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double rhs = std::pow(2.0 * (y[j] - x[i]), n - 1) / factorial(n - 1);
        CHECK(std::abs(lhs(i, j) - rhs) < 1e-8);
      }
  }
}
