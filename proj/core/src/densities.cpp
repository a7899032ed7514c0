#include "tacnode/densities.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tacnode/kernels.hpp"
#include "tacnode/special.hpp"

namespace tacnode {

namespace {

// Ascending-coefficient polynomial helpers for the coupling matrix.
std::vector<double> poly_from_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return c;
}

std::vector<double> poly_derivative(const std::vector<double>& c, int order) {
  std::vector<double> d = c;
  for (int k = 0; k < order; ++k) {
    if (d.size() <= 1) return {0.0};
    std::vector<double> next(d.size() - 1);
    for (size_t i = 1; i < d.size(); ++i) next[i - 1] = d[i] * static_cast<double>(i);
    d = next;
  }
  return d;
}

double poly_eval(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (size_t i = c.size(); i-- > 0;) v = v * t + c[i];
  return v;
}

double overlap_constant(const ModelParams& params, int d) {
  double c = 1.0;
  for (int l = 1; l <= d - 1; ++l) c *= std::pow(2.0, l) / factorial(l);
  return c / fredholm_det(params);
}

double gamma_coupling_route(const ModelParams& params, const Spectrum& x,
                            const Spectrum& y) {
  GammaEvaluator eval(params, x);
  return eval(y);
}

double gamma_linear_system_route(const ModelParams& params, const Spectrum& x,
                                 const Spectrum& y) {
  int n = params.n, rho = params.rho, delta = params.delta();
  Spectrum xs = x.array() - params.beta;
  Spectrum ys = y.array() - params.beta;
  Eigen::MatrixXd H = hermite_tilde_matrix(xs);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(H);
  Eigen::MatrixXd rhs(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rhs(i, j) = -heaviside_pow(rho + 2 * delta, 2.0 * (y[j] - x[i]));
  Eigen::MatrixXd f = lu.solve(rhs);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = p_poly(i, ys[j]);
      if (i >= delta) v += f(i - delta, j);
      m(i, j) = v;
    }
  }
  // Sign convention pinned by the Monte Carlo volume oracle: no
  // (-1)^{n-1} prefactor in either route.
  double scale = std::pow(2.0, n * (n - 1));
  return lu.determinant() * m.determinant() / scale;
}

}  // namespace

double gue_density(const Spectrum& x, double shift) {
  // The constant already normalizes the ordered (weakly decreasing) vector
  // to unit mass on the chamber.
  int n = static_cast<int>(x.size());
  double c = std::pow(2.0, 0.5 * n * n) / std::pow(2.0 * M_PI, 0.5 * n);
  for (int j = 1; j < n; ++j) c /= factorial(j);
  double d = vandermonde(x);
  double e = 0.0;
  for (int i = 0; i < n; ++i) e += (x[i] - shift) * (x[i] - shift);
  return c * d * d * std::exp(-e);
}

double one_level_density(const ModelParams& params, int u, const Spectrum& z) {
  int rho = params.rho;
  if (u > rho) {
    if (static_cast<int>(z.size()) != u)
      throw std::invalid_argument("one_level_density: level u > rho needs u points");
    Spectrum flipped(z.size());
    for (int i = 0; i < z.size(); ++i) flipped[i] = -z[z.size() - 1 - i];
    return one_level_density(params, rho - u, flipped);
  }
  int d = std::max(-u, 0);
  int p = std::max(u, 0);
  int big = std::max(rho - u, rho);
  if (static_cast<int>(z.size()) != big)
    throw std::invalid_argument("one_level_density: wrong particle count");
  Eigen::MatrixXd m1(big, big), m2(big, big);
  for (int j = 0; j < big; ++j) {
    double zj = z[j];
    int r = 0;
    for (int k = 0; k < d; ++k) m1(r++, j) = std::pow(zj, k);
    for (int k = 0; k < rho; ++k) m1(r++, j) = phi_fn(-u + k, params.beta - zj);
    double gauss = std::exp(-(zj + params.beta) * (zj + params.beta)) * kInvSqrtPi;
    r = 0;
    for (int k = 0; k < rho - u; ++k) m2(r++, j) = std::pow(zj, k) * gauss;
    for (int k = 0; k < p; ++k) m2(r++, j) = phi_fn(k, params.beta + zj);
  }
  double value = std::pow(2.0, p) * overlap_constant(params, d) *
                 m1.determinant() * m2.determinant();
  return std::abs(value);
}

Eigen::MatrixXd build_L(const ModelParams& params, const Spectrum& x) {
  int n = params.n, delta = params.delta();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("build_L: x must have n entries");
  if (delta == 0) return Eigen::MatrixXd::Identity(n, n);
  std::vector<double> v(x.data(), x.data() + n);
  for (double& t : v) t -= params.beta;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (v[static_cast<size_t>(i)] == v[static_cast<size_t>(j)])
        throw std::invalid_argument("build_L: repeated x entries");
  auto R = poly_from_roots(v);
  auto Rp = poly_derivative(R, 1);
  auto Rdp1 = poly_derivative(R, delta + 1);
  double sign = (delta % 2 == 0) ? 1.0 : -1.0;
  Eigen::MatrixXd L(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        L(i, i) = sign / (delta + 1) * poly_eval(Rdp1, v[static_cast<size_t>(i)]) /
                  poly_eval(Rp, v[static_cast<size_t>(i)]);
      } else {
        std::vector<double> others;
        for (int k = 0; k < n; ++k)
          if (k != i && k != j) others.push_back(v[static_cast<size_t>(k)]);
        auto rhat = poly_derivative(poly_from_roots(others), delta - 1);
        L(i, j) = sign * delta * poly_eval(rhat, v[static_cast<size_t>(i)]) /
                  poly_eval(Rp, v[static_cast<size_t>(j)]);
      }
    }
  }
  return L;
}

Eigen::VectorXd solve_f(const ModelParams& params, const Spectrum& x, double y) {
  int n = params.n, rho = params.rho, delta = params.delta();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("solve_f: x must have n entries");
  Eigen::MatrixXd H = hermite_tilde_matrix(x);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(H);
  if (std::abs(lu.determinant()) < 1e-300)
    throw std::runtime_error("solve_f: singular Hermite system (repeated x)");
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i)
    b[i] = -heaviside_pow(rho + 2 * delta, 2.0 * (y - x[i]));
  Eigen::VectorXd f = lu.solve(b);
  return f.head(rho);
}

GammaEvaluator::GammaEvaluator(const ModelParams& params, Spectrum x)
    : params_(params), x_(std::move(x)) {
  if (static_cast<int>(x_.size()) != params_.n)
    throw std::invalid_argument("GammaEvaluator: x must have n entries");
  L_ = build_L(params_, x_);
  norm_ = 1.0 / factorial(params_.n - 1);
}

double GammaEvaluator::operator()(const Spectrum& y) const {
  int n = params_.n, delta = params_.delta();
  double buf[16];
  auto entry = [&](int i, int j) {
    double d = y[j] - x_[i];
    double v = norm_;
    for (int p = 0; p < n - 1; ++p) v *= d;
    for (int k = 0; k < n; ++k)
      v -= L_(i, k) * heaviside_pow(n + delta, y[j] - x_[k]);
    return v;
  };
  if (n == 1) return entry(0, 0);
  if (n == 2) return entry(0, 0) * entry(1, 1) - entry(0, 1) * entry(1, 0);
  if (n <= 4) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) buf[i * n + j] = entry(i, j);
    if (n == 3)
      return buf[0] * (buf[4] * buf[8] - buf[5] * buf[7]) -
             buf[1] * (buf[3] * buf[8] - buf[5] * buf[6]) +
             buf[2] * (buf[3] * buf[7] - buf[4] * buf[6]);
    Eigen::Map<Eigen::Matrix4d> m4(buf);
    return m4.determinant();
  }
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = entry(i, j);
  return m.determinant();
}

double two_level_gamma(const ModelParams& params, const Spectrum& x,
                       const Spectrum& y, GammaRoute route) {
  if (static_cast<int>(x.size()) != params.n ||
      static_cast<int>(y.size()) != params.n)
    throw std::invalid_argument("two_level_gamma: vectors must have n entries");
  if (route == GammaRoute::auto_select) {
    double min_gap = 1e300;
    for (int i = 0; i + 1 < x.size(); ++i)
      min_gap = std::min(min_gap, std::abs(x[i] - x[i + 1]));
    route = (x.size() > 1 && min_gap < 1e-6) ? GammaRoute::linear_system
                                             : GammaRoute::coupling_matrix;
  }
  return route == GammaRoute::coupling_matrix
             ? gamma_coupling_route(params, x, y)
             : gamma_linear_system_route(params, x, y);
}

TwoLevelWorkspace::TwoLevelWorkspace(const ModelParams& params, Spectrum x,
                                     Spectrum y)
    : params_(params), x_(std::move(x)), y_(std::move(y)) {
  if (static_cast<int>(x_.size()) != params_.n ||
      static_cast<int>(y_.size()) != params_.n)
    throw std::invalid_argument("TwoLevelWorkspace: vectors must have n entries");
  double min_gap = 1e300;
  for (int i = 0; i + 1 < x_.size(); ++i)
    min_gap = std::min(min_gap, std::abs(x_[i] - x_[i + 1]));
  near_coincident_ = x_.size() > 1 && min_gap < 1e-6;
  L_ = near_coincident_ ? Eigen::MatrixXd::Identity(params_.n, params_.n)
                        : build_L(params_, x_);
}

double TwoLevelWorkspace::gamma(GammaRoute route) const {
  if (route == GammaRoute::auto_select)
    route = near_coincident_ ? GammaRoute::linear_system
                             : GammaRoute::coupling_matrix;
  return two_level_gamma(params_, x_, y_, route);
}

double TwoLevelWorkspace::joint_density() const { return joint_two_level_density(params_, x_, y_); }

double joint_two_level_density(const ModelParams& params, const Spectrum& x,
                               const Spectrum& y) {
  double gamma = two_level_gamma(params, x, y);
  if (gamma < -1e-9)
    throw std::runtime_error("joint_two_level_density: negative cone volume");
  if (gamma <= 0.0) return 0.0;
  int n = params.n;
  double vol_x = vandermonde(x), vol_y = vandermonde(y);
  for (int k = 1; k <= n - 1; ++k) {
    vol_x /= factorial(k);
    vol_y /= factorial(k);
  }
  if (vol_x <= 0.0 || vol_y <= 0.0) return 0.0;
  return gue_density(x, params.beta) * gue_density(y, -params.beta) * gamma /
         (fredholm_det(params) * vol_x * vol_y);
}

double conditional_cone_density(const ModelParams& params, const Spectrum& x,
                                const Spectrum& y, const DoubleConePoint& point) {
  if (!in_double_cone(point, x, y)) return 0.0;
  if (params.n == 1) return 1.0;  // zero-dimensional cone
  double vol = two_level_gamma(params, x, y);
  if (vol <= 0.0) return 0.0;
  return 1.0 / vol;
}

}  // namespace tacnode
