#include "tacnode/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace tacnode {

namespace {

GaussLegendre compute_gl(int order) {
  // Newton iteration on Legendre P_n, standard Golub-Welsch-free variant.
  GaussLegendre gl;
  gl.nodes.resize(static_cast<size_t>(order));
  gl.weights.resize(static_cast<size_t>(order));
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1);
      }
      pp = order * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[static_cast<size_t>(i)] = -x;
    gl.nodes[static_cast<size_t>(order - 1 - i)] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    gl.weights[static_cast<size_t>(i)] = w;
    gl.weights[static_cast<size_t>(order - 1 - i)] = w;
  }
  return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order < 1");
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gl(order)).first;
  return it->second;
}

double integrate_panel(const std::function<double(double)>& f, double a,
                       double b, int order) {
  const auto& gl = gauss_legendre(order);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (size_t i = 0; i < gl.nodes.size(); ++i)
    s += gl.weights[i] * f(mid + half * gl.nodes[i]);
  return s * half;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int order, int panels) {
  double s = 0.0, h = (b - a) / panels;
  for (int k = 0; k < panels; ++k)
    s += integrate_panel(f, a + k * h, a + (k + 1) * h, order);
  return s;
}

double integrate_with_breaks(const std::function<double(double)>& f, double a,
                             double b, std::vector<double> breaks, int order,
                             int panels_per_piece) {
  std::vector<double> pts;
  pts.push_back(a);
  std::sort(breaks.begin(), breaks.end());
  for (double t : breaks)
    if (t > a && t < b) pts.push_back(t);
  pts.push_back(b);
  double s = 0.0;
  for (size_t k = 0; k + 1 < pts.size(); ++k)
    s += integrate(f, pts[k], pts[k + 1], order, panels_per_piece);
  return s;
}

double integrate_line(const std::function<double(double)>& f, double halfwidth,
                      double tol) {
  double prev = integrate(f, -halfwidth, halfwidth, 24, 2);
  for (int panels = 4; panels <= 64; panels *= 2) {
    double cur = integrate(f, -halfwidth, halfwidth, 24, panels);
    if (std::abs(cur - prev) < tol) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace tacnode
