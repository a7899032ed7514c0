#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "tacnode/cone.hpp"
#include "tacnode/densities.hpp"
#include "tacnode/rng.hpp"

using namespace tacnode;

namespace {

Spectrum vec(std::initializer_list<double> v) {
  Spectrum x(static_cast<int>(v.size()));
  int i = 0;
  for (double t : v) x[i++] = t;
  return x;
}

// Brute-force enumeration of vertex-disjoint up-right path families from
// (y_i, level 0) to (x_i, level rho); oracle for the binomial determinant.
long long enumerate_path_families(const std::vector<long long>& x,
                                  const std::vector<long long>& y, int rho) {
  size_t k = x.size();
  // Each path is a weakly increasing run vector r_0 <= ... <= r_{rho-1}
  // with r_{-1} = y_i and r_{rho-1} = x_i.
  std::vector<std::vector<std::vector<long long>>> paths(k);
  for (size_t i = 0; i < k; ++i) {
    if (x[i] < y[i]) return 0;
    std::vector<long long> run(static_cast<size_t>(rho), 0);
    std::function<void(int, long long)> gen = [&](int level, long long at) {
      if (level == rho - 1) {
        run[static_cast<size_t>(level)] = x[i];
        if (x[i] >= at) paths[i].push_back(run);
        return;
      }
      for (long long r = at; r <= x[i]; ++r) {
        run[static_cast<size_t>(level)] = r;
        gen(level + 1, r);
      }
    };
    gen(0, y[i]);
  }
  // Vertex sets and pairwise disjointness.
  auto vertices = [&](size_t i, const std::vector<long long>& run) {
    std::vector<std::pair<long long, int>> vs;
    long long prev = y[i];
    for (int level = 0; level < rho; ++level) {
      for (long long p = prev; p <= run[static_cast<size_t>(level)]; ++p)
        vs.emplace_back(p, level);
      prev = run[static_cast<size_t>(level)];
    }
    vs.emplace_back(x[i], rho);
    return vs;
  };
  std::vector<size_t> choice(k, 0);
  long long families = 0;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == k) {
      std::vector<std::pair<long long, int>> all;
      for (size_t j = 0; j < k; ++j) {
        auto vs = vertices(j, paths[j][choice[j]]);
        all.insert(all.end(), vs.begin(), vs.end());
      }
      std::sort(all.begin(), all.end());
      if (std::adjacent_find(all.begin(), all.end()) == all.end()) ++families;
      return;
    }
    for (choice[i] = 0; choice[i] < paths[i].size(); ++choice[i]) rec(i + 1);
  };
  rec(0);
  return families;
}

}  // namespace

TEST_CASE("interlacing predicates") {
  CHECK(interlaces(vec({3.0, 1.0}), vec({2.0})));
  CHECK(interlaces(vec({3.0, 1.0}), vec({3.0})));  // weak boundary
  CHECK_FALSE(interlaces(vec({3.0, 1.0}), vec({0.5})));
  CHECK(mixed_leq(vec({1.5, 0.5}), vec({1.7, 0.8})));
  CHECK_FALSE(mixed_leq(vec({1.7, 0.8}), vec({1.5, 0.5})));
}

TEST_CASE("double cone membership") {
  ModelParams p(2, 2, 0.0);
  Spectrum x = vec({2.0, 1.0}), y = vec({1.5, 0.5});
  DoubleConePoint point;
  point.params = p;
  point.mixed_levels.push_back(vec({1.7, 0.8}));
  CHECK(in_double_cone(point, x, y));
  CHECK(point.coordinate_count() == 2);  // n(n-1)
  // Boundary equalities stay inside (weak inequalities).
  point.mixed_levels[0] = vec({1.5, 0.5});
  CHECK(in_double_cone(point, x, y));
  // Infeasible: y entirely above x at delta = 0 admits no member.
  Spectrum yhigh = vec({4.0, 3.0});
  point.mixed_levels[0] = vec({3.0, 2.5});
  CHECK_FALSE(in_double_cone(point, x, yhigh));
}

TEST_CASE("mc volume anchors") {
  Rng rng(3);
  ModelParams p1(1, 1, 0.0);
  auto est = mc_volume(p1, vec({1.0}), vec({0.0}), 10, rng);
  CHECK(est.value == 1.0);
  CHECK(est.stderr_ == 0.0);
  auto est0 = mc_volume(p1, vec({0.0}), vec({1.0}), 10, rng);
  CHECK(est0.value == 0.0);
  CHECK_THROWS(mc_volume(p1, vec({1.0}), vec({0.0}), 0, rng));

  ModelParams p2(2, 2, 0.0);
  auto est2 = mc_volume(p2, vec({2.0, 1.0}), vec({1.5, 0.5}), 200000, rng);
  CHECK(std::abs(est2.value - 0.25) <= 3.0 * est2.stderr_);

  ModelParams p21(2, 1, 0.0);
  Spectrum x = vec({1.3, -0.2}), y = vec({0.9, -1.4});
  auto est3 = mc_volume(p21, x, y, 200000, rng);
  double gamma = two_level_gamma(p21, x, y);
  CHECK(std::abs(est3.value - gamma) <= 3.0 * est3.stderr_);
}

TEST_CASE("prop 7.1: gamma equals the cone volume") {
  Rng rng(5150);
  for (int n = 1; n <= 3; ++n)
    for (int rho = 1; rho <= n; ++rho) {
      ModelParams p(n, rho, 0.0);
      int found = 0;
      while (found < 4) {
        Spectrum x(n), y(n);
        for (int i = 0; i < n; ++i) {
          x[i] = rng.uniform(-1.5, 1.5);
          y[i] = x[i] - rng.uniform(0.0, 1.5);
        }
        x = sorted_decreasing(x);
        y = sorted_decreasing(y);
        double gamma = two_level_gamma(p, x, y);
        if (gamma < 1e-3) continue;
        ++found;
        auto est = mc_volume(p, x, y, 300000, rng);
        CHECK(std::abs(est.value - gamma) <=
              3.5 * std::max(est.stderr_, 1e-12));
      }
    }
}

TEST_CASE("volume monotone under widening") {
  Rng rng(61);
  ModelParams p(3, 2, 0.0);
  Spectrum x = vec({2.0, 1.0, 0.0}), y = vec({1.2, 0.3, -1.0});
  double base = two_level_gamma(p, x, y);
  Spectrum xup = x;
  xup[0] += 0.5;
  CHECK(two_level_gamma(p, xup, y) >= base - 1e-12);
  Spectrum ydown = y;
  ydown[2] -= 0.7;
  CHECK(two_level_gamma(p, x, ydown) >= base - 1e-12);
}

TEST_CASE("single cone volume") {
  CHECK(single_cone_volume(vec({1.0, 0.0})) == doctest::Approx(1.0));
  CHECK(single_cone_volume(vec({2.0, 1.0, 0.0})) == doctest::Approx(1.0));
  CHECK(single_cone_volume(vec({1.0, 1.0})) == 0.0);
}

TEST_CASE("induction identity residuals") {
  ModelParams p1(1, 1, 0.0);
  CHECK(induction_step_check(p1, vec({1.1, -0.4}), vec({0.6, -1.3})) < 1e-6);
  CHECK(induction_step_check(p1, vec({0.9, 0.2}), vec({1.0, 0.1})) < 1e-6);

  ModelParams p2(2, 2, 0.0);
  CHECK(induction_step_check(p2, vec({1.4, 0.3, -0.8}), vec({0.9, -0.2, -1.5})) <
        1e-5);
  ModelParams p21(2, 1, 0.0);
  CHECK(induction_step_check(p21, vec({1.2, 0.1, -0.9}), vec({0.8, -0.4, -1.6})) <
        1e-5);

  // Infeasible boxes: both sides vanish.
  CHECK(induction_step_check(p1, vec({-2.0, -3.0}), vec({3.0, 2.0})) == 0.0);
  ModelParams p4(4, 1, 0.0);
  CHECK_THROWS(induction_step_check(p4, Spectrum::Zero(5), Spectrum::Zero(5)));
}

TEST_CASE("lattice path determinant matches enumeration") {
  CHECK(lattice_path_count({3}, {0}, 1) == 1);
  CHECK(lattice_path_count({2, 0}, {1, -1}, 2) ==
        enumerate_path_families({2, 0}, {1, -1}, 2));
  CHECK(lattice_path_count({4, 1}, {2, 0}, 2) ==
        enumerate_path_families({4, 1}, {2, 0}, 2));
  CHECK(lattice_path_count({3, 1, 0}, {2, 1, -2}, 2) ==
        enumerate_path_families({3, 1, 0}, {2, 1, -2}, 2));
  CHECK(lattice_path_count({0, -1}, {2, 1}, 2) == 0);
}

TEST_CASE("lattice path count converges to the cone volume") {
  // V_{tx, ty} / t^{rho(rho-1)} -> Gamma at rho = n, checked with
  // Richardson extrapolation over t in {10, 20, 40}.
  ModelParams p(2, 2, 0.0);
  Spectrum x = vec({1.0, 0.2}), y = vec({0.6, -0.5});
  double gamma = two_level_gamma(p, x, y);
  auto scaled = [&](long long t) {
    std::vector<long long> xi(2), yi(2);
    for (int i = 0; i < 2; ++i) {
      xi[static_cast<size_t>(i)] = std::llround(x[i] * static_cast<double>(t));
      yi[static_cast<size_t>(i)] = std::llround(y[i] * static_cast<double>(t));
    }
    return static_cast<double>(lattice_path_count(xi, yi, 2)) /
           std::pow(static_cast<double>(t), 2);
  };
  double v10 = scaled(10), v20 = scaled(20), v40 = scaled(40);
  CHECK(std::abs(v20 - gamma) < std::abs(v10 - gamma) + 1e-12);
  double richardson = 2.0 * v40 - v20;
  CHECK(std::abs(richardson - gamma) < 0.02 * std::max(1.0, std::abs(gamma)));
}
