#include <cmath>

#include "doctest.h"
#include "tacnode/cone.hpp"
#include "tacnode/densities.hpp"
#include "tacnode/kernels.hpp"
#include "tacnode/quadrature.hpp"
#include "tacnode/rng.hpp"
#include "tacnode/special.hpp"

using namespace tacnode;

namespace {

Spectrum random_decreasing(Rng& rng, int n, double lo = -2.5, double hi = 2.5) {
  Spectrum x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo, hi);
  return sorted_decreasing(x);
}

// Paper-style delta = 1 reduction implemented independently of build_L's
// use inside the gamma routes.
double gamma_delta1_reduction(const ModelParams& params, const Spectrum& x,
                              const Spectrum& y) {
  int n = params.n;
  Eigen::MatrixXd L = build_L(params, x);
  Spectrum v = x.array() - params.beta;
  Eigen::MatrixXd m(n, n);
  double nf = factorial(n);
  for (int i = 0; i < n; ++i) {
    double rp = 1.0;  // R'(x_i - beta)
    for (int k = 0; k < n; ++k)
      if (k != i) rp *= v[i] - v[k];
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        if (y[j] < x[k]) s += L(i, k) * std::pow(x[k] - y[j], n);
      m(i, j) = (s - rp) / nf;
    }
  }
  // Under the volume-positive convention the delta = 1 reduction reads
  // Gamma = (-1)^n det[...].
  return (n % 2 == 0 ? 1.0 : -1.0) * m.determinant();
}

}  // namespace

TEST_CASE("ordered gue density normalizes") {
  Spectrum x1(1);
  x1 << 0.7;
  CHECK(gue_density(x1, 0.0) ==
        doctest::Approx(std::exp(-0.49) * kInvSqrtPi).epsilon(1e-13));
  // n = 2 mass over the ordered chamber.
  double mass = 0.0;
  const auto& gl = gauss_legendre(48);
  double L = 6.0;
  for (size_t i = 0; i < gl.nodes.size(); ++i) {
    double x = L * gl.nodes[i];
    for (size_t j = 0; j < gl.nodes.size(); ++j) {
      double half = 0.5 * (x + L);
      double mid = 0.5 * (x - L);
      double x2 = mid + half * gl.nodes[j];
      Spectrum v(2);
      v << x, x2;
      mass += L * gl.weights[i] * half * gl.weights[j] * gue_density(v, 0.3);
    }
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("coupling matrix structure") {
  Rng rng(17);
  ModelParams p0(3, 3, 0.2);
  CHECK(build_L(p0, random_decreasing(rng, 3)).isIdentity(1e-14));

  ModelParams p1(2, 1, 0.0);
  Spectrum x = random_decreasing(rng, 2);
  Eigen::MatrixXd L = build_L(p1, x);
  CHECK(std::abs(L.trace()) < 1e-10);
  CHECK(std::abs(L.row(0).sum()) < 1e-10);

  ModelParams p2(3, 2, 0.5);
  Spectrum x3 = random_decreasing(rng, 3);
  Eigen::MatrixXd L3 = build_L(p2, x3);
  CHECK(std::abs(L3.trace()) < 1e-10);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(L3);
  int rank = 0;
  for (int i = 0; i < 3; ++i)
    if (svd.singularValues()[i] > 1e-8 * svd.singularValues()[0]) ++rank;
  CHECK(rank == 2);

  Spectrum bad(3);
  bad << 1.0, 1.0, 0.0;
  CHECK_THROWS(build_L(p2, bad));
}

TEST_CASE("coupling matrix equals the Hermite-inverse form") {
  // L_ik = 2^delta sum_alpha H~_{rho-alpha}(beta - x_i) row_alpha of the
  // inverse Hermite matrix; independent of the rational-polynomial route.
  Rng rng(18);
  for (int n = 2; n <= 4; ++n)
    for (int rho = 1; rho < n; ++rho) {
      ModelParams p(n, rho, 0.3);
      Spectrum x = random_decreasing(rng, n);
      int delta = p.delta();
      Eigen::MatrixXd H = hermite_tilde_matrix(Spectrum(x.array() - p.beta));
      Eigen::MatrixXd Hinv = H.inverse();
      Eigen::MatrixXd L(n, n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          double s = 0.0;
          for (int alpha = 1; alpha <= rho; ++alpha)
            s += hermite_tilde(rho - alpha, p.beta - x[i]) * Hinv(alpha - 1, k);
          L(i, k) = std::pow(2.0, delta) * s;
        }
      CHECK((L - build_L(p, x)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("linear system for f") {
  ModelParams p1(1, 1, 0.0);
  Spectrum x1(1);
  x1 << 0.4;
  CHECK(solve_f(p1, x1, -1.0)[0] == 0.0);          // y below all x
  CHECK(solve_f(p1, x1, 0.9)[0] == doctest::Approx(-1.0));  // -1_{y>=x}

  Rng rng(23);
  ModelParams p(3, 2, 0.0);
  Spectrum x = random_decreasing(rng, 3);
  double y = rng.uniform(-2.0, 2.0);
  // Plug the full solution back into the defining system.
  Eigen::MatrixXd H = hermite_tilde_matrix(x);
  Eigen::VectorXd b(3);
  for (int i = 0; i < 3; ++i)
    b[i] = -heaviside_pow(p.rho + 2 * p.delta(), 2.0 * (y - x[i]));
  Eigen::VectorXd full = H.partialPivLu().solve(b);
  CHECK((H * full - b).cwiseAbs().maxCoeff() < 1e-9);
  Eigen::VectorXd f = solve_f(p, x, y);
  CHECK((f - full.head(2)).cwiseAbs().maxCoeff() < 1e-12);

  // Cramer form of the first components.
  for (int k = 1; k <= p.rho; ++k) {
    Eigen::MatrixXd Hk = H;
    Hk.col(k - 1) = b;
    CHECK(f[k - 1] ==
          doctest::Approx(Hk.determinant() / H.determinant()).epsilon(1e-9));
  }
}

TEST_CASE("gamma anchors") {
  ModelParams p1(1, 1, 0.0);
  Spectrum x1(1), y1(1);
  x1 << 0.5;
  y1 << -0.2;
  CHECK(two_level_gamma(p1, x1, y1) == doctest::Approx(1.0));
  y1 << 0.9;
  CHECK(two_level_gamma(p1, x1, y1) == doctest::Approx(0.0));

  ModelParams p2(2, 2, 0.0);
  Spectrum x2(2), y2(2);
  x2 << 2.0, 1.0;
  y2 << 1.5, 0.5;
  CHECK(two_level_gamma(p2, x2, y2) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("gamma delta=0 reduction") {
  Rng rng(29);
  for (int n : {2, 3}) {
    ModelParams p(n, n, 0.0);
    Spectrum x = random_decreasing(rng, n), y = random_decreasing(rng, n);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m(i, j) = x[i] > y[j]
                      ? std::pow(x[i] - y[j], n - 1) / factorial(n - 1)
                      : 0.0;
    CHECK(std::abs(two_level_gamma(p, x, y) - m.determinant()) < 1e-9);
  }
}

TEST_CASE("gamma delta=1 reduction") {
  Rng rng(31);
  for (int n : {2, 3}) {
    ModelParams p(n, n - 1, 0.0);
    for (int t = 0; t < 25; ++t) {
      Spectrum x = random_decreasing(rng, n), y = random_decreasing(rng, n);
      double g = two_level_gamma(p, x, y);
      CHECK(std::abs(g - gamma_delta1_reduction(p, x, y)) <
            1e-9 * std::max(1.0, std::abs(g)));
    }
  }
}

TEST_CASE("gamma dual routes agree") {
  Rng rng(37);
  for (int n = 1; n <= 4; ++n)
    for (int rho = 1; rho <= n; ++rho)
      for (double beta : {0.0, 0.6}) {
        ModelParams p(n, rho, beta);
        for (int t = 0; t < 50; ++t) {
          Spectrum x = random_decreasing(rng, n), y = random_decreasing(rng, n);
          double g1 = two_level_gamma(p, x, y, GammaRoute::coupling_matrix);
          double g2 = two_level_gamma(p, x, y, GammaRoute::linear_system);
          CHECK(std::abs(g1 - g2) < 1e-7 * std::max(1.0, std::abs(g1)));
        }
      }
}

TEST_CASE("gamma is beta independent and scales like a volume") {
  Rng rng(41);
  for (int n : {2, 3}) {
    for (int rho = 1; rho <= n; ++rho) {
      Spectrum x = random_decreasing(rng, n), y = random_decreasing(rng, n);
      double g0 = two_level_gamma(ModelParams(n, rho, 0.0), x, y);
      double g9 = two_level_gamma(ModelParams(n, rho, 0.9), x, y);
      CHECK(std::abs(g0 - g9) < 1e-8 * std::max(1.0, std::abs(g0)));
      double t = 1.7;
      double gt =
          two_level_gamma(ModelParams(n, rho, 0.0), Spectrum(t * x), Spectrum(t * y));
      CHECK(gt == doctest::Approx(std::pow(t, n * (n - 1)) * g0).epsilon(1e-9));
    }
  }
}

TEST_CASE("gamma is continuous across the kink points") {
  ModelParams p(3, 2, 0.0);
  Rng rng(43);
  Spectrum x = random_decreasing(rng, 3), y = random_decreasing(rng, 3);
  GammaEvaluator gamma(p, x);
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      Spectrum ylo = y, yhi = y;
      ylo[j] = x[k] - 1e-7;
      yhi[j] = x[k] + 1e-7;
      CHECK(std::abs(gamma(ylo) - gamma(yhi)) < 1e-5);
    }
  }
}

TEST_CASE("gamma near-coincident x falls back cleanly") {
  ModelParams p(3, 2, 0.0);
  Spectrum x(3), y(3);
  x << 1.0, 1.0 + 3e-7, -0.5;
  y << 0.8, 0.0, -1.0;
  Spectrum xs = sorted_decreasing(x);
  double g = two_level_gamma(p, xs, y);  // auto route
  Spectrum xwide(3);
  xwide << 1.0 + 1e-3, 1.0, -0.5;
  double gw = two_level_gamma(p, xwide, y, GammaRoute::coupling_matrix);
  CHECK(std::isfinite(g));
  CHECK(std::abs(g - gw) < 2e-2 * std::max(1.0, std::abs(gw)));
}

TEST_CASE("one-level density equals kernel determinant") {
  Rng rng(47);
  for (int rho : {1, 2, 3}) {
    for (double beta : {0.0, 0.5}) {
      ModelParams p(rho, rho, beta);
      for (int u = -2; u <= rho + 2; ++u) {
        int big = u > rho ? u : std::max(rho - u, rho);
        for (int t = 0; t < 8; ++t) {
          Spectrum z = random_decreasing(rng, big);
          std::vector<LevelPoint> pts;
          for (int i = 0; i < big; ++i) pts.push_back({u, z[i]});
          double kd = correlation_det(pts, p);
          double oc = one_level_density(p, u, z);
          CHECK(std::abs(kd - oc) < 1e-7 * std::max(1.0, std::abs(kd)));
          CHECK(oc >= 0.0);
        }
      }
    }
  }
}

TEST_CASE("one-level density reflects under the involution") {
  ModelParams p(1, 1, 0.0);
  Spectrum z(1);
  for (double t : {-1.2, 0.1, 0.8}) {
    z << t;
    Spectrum zr(1);
    zr << -t;
    CHECK(one_level_density(p, 1, z) ==
          doctest::Approx(one_level_density(p, 0, zr)).epsilon(1e-10));
  }
}

TEST_CASE("one-level densities integrate to one particle vector") {
  // u = 1 and u = 0 at n = rho = 1: single-particle densities.
  ModelParams p(1, 1, 0.0);
  for (int u : {0, 1}) {
    auto f = [&](double t) {
      Spectrum z(1);
      z << t;
      return one_level_density(p, u, z);
    };
    double mass = integrate_line(f, 8.0, 1e-9);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("joint two-level density at n = rho = 1") {
  ModelParams p(1, 1, 0.0);
  Spectrum x(1), y(1);
  for (double xs : {-0.5, 0.3, 1.4}) {
    for (double ys : {-1.0, 0.1}) {
      x << xs;
      y << ys;
      double expect = xs > ys ? std::exp(-xs * xs - ys * ys) / M_PI / 0.5 : 0.0;
      CHECK(joint_two_level_density(p, x, y) ==
            doctest::Approx(expect).epsilon(1e-10));
    }
  }
  // Mass check by 2-D quadrature.
  auto inner = [&](double xs) {
    Spectrum xv(1);
    xv << xs;
    auto f = [&](double ys) {
      Spectrum yv(1);
      yv << ys;
      return joint_two_level_density(p, xv, yv);
    };
    return integrate_with_breaks(f, -7.0, 7.0, {xs}, 24, 4);
  };
  double mass = integrate(inner, -7.0, 7.0, 24, 8);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("joint density vanishes when y sits above x (delta=0)") {
  ModelParams p(2, 2, 0.0);
  Spectrum x(2), y(2);
  x << 0.5, -0.5;
  y << 2.0, 1.0;
  CHECK(joint_two_level_density(p, x, y) == 0.0);
}

TEST_CASE("workspace caches and agrees") {
  Rng rng(53);
  ModelParams p(3, 2, 0.4);
  Spectrum x = random_decreasing(rng, 3), y = random_decreasing(rng, 3);
  TwoLevelWorkspace ws(p, x, y);
  CHECK(ws.gamma() == doctest::Approx(two_level_gamma(p, x, y)));
  CHECK(ws.joint_density() ==
        doctest::Approx(joint_two_level_density(p, x, y)));
  CHECK(ws.coupling().rows() == 3);
}

TEST_CASE("conditional cone density") {
  ModelParams p1(1, 1, 0.0);
  Spectrum x(1), y(1);
  x << 1.0;
  y << 0.0;
  DoubleConePoint empty;
  empty.params = p1;
  CHECK(conditional_cone_density(p1, x, y, empty) == 1.0);

  ModelParams p2(2, 2, 0.0);
  Spectrum x2(2), y2(2);
  x2 << 2.0, 1.0;
  y2 << 1.5, 0.5;
  DoubleConePoint point;
  point.params = p2;
  Spectrum z(2);
  z << 1.7, 0.8;
  point.mixed_levels.push_back(z);
  double g = two_level_gamma(p2, x2, y2);
  CHECK(conditional_cone_density(p2, x2, y2, point) ==
        doctest::Approx(1.0 / g).epsilon(1e-12));
  // Violating the mixed chain kills the density.
  z << 0.8, 0.2;  // top entry below y2 top
  point.mixed_levels[0] = z;
  CHECK(conditional_cone_density(p2, x2, y2, point) == 0.0);
}
