#include "tacnode/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tacnode/quadrature.hpp"
#include "tacnode/special.hpp"

namespace tacnode {

namespace {

double a_eval(const CoeffTables& t, int rho, int u, double y, int kappa) {
  double beta = t.beta();
  double v = phi_fn(kappa - rho + u, -y - beta);
  if (u >= 1) {
    auto ht = hermite_tilde_seq(u - 1, beta - y);
    for (int alpha = 0; alpha <= u - 1; ++alpha)
      v -= t.c_tilde(kappa - rho + u - alpha) * ht[static_cast<size_t>(alpha)];
  }
  return v;
}

double b_eval(const CoeffTables& t, int rho, int u, double y, int lambda) {
  double beta = t.beta();
  if (lambda >= rho) {
    if (u > 0) return 0.0;
    return hermite_tilde(rho - lambda - u - 1, y + beta);
  }
  double v = 0.0;
  for (int alpha = 1; alpha <= rho - lambda; ++alpha)
    v += t.c(rho - lambda - alpha) * psi_fn(alpha - u - 1, y - beta);
  if (u <= -1) {
    auto pp = p_poly_seq(-u - 1, y - beta);
    for (int alpha = u; alpha <= -1; ++alpha)
      v += t.c(rho - lambda - alpha - 1) * pp[static_cast<size_t>(alpha - u)];
  }
  return v;
}

int table_span(const ModelParams& params, int max_abs_u) {
  return 2 * params.rho + 3 * max_abs_u + 8;
}

}  // namespace

double minor_kernel(const LevelPoint& p1, const LevelPoint& p2, double beta) {
  double half = 0.0;
  if (p1.u > p2.u) half -= heaviside_pow(p1.u - p2.u, 2.0 * (p2.z - p1.z));
  if (p1.u >= 1) {
    auto ht = hermite_tilde_seq(p1.u - 1, beta - p1.z);
    for (int alpha = 0; alpha <= p1.u - 1; ++alpha)
      half += ht[static_cast<size_t>(p1.u - alpha - 1)] *
              phi_fn(alpha - p2.u, p2.z - beta);
  }
  return 2.0 * half;
}

double a_func(const ModelParams& params, int u, double y, int kappa) {
  int hi = std::max(params.rho - u - 1, params.rho - 1);
  if (kappa < 0 || kappa > hi)
    throw std::invalid_argument("a_func: kappa outside [0, max(rho-u-1, rho-1)]");
  CoeffTables t(params.beta, table_span(params, std::abs(u) + 1));
  return a_eval(t, params.rho, u, y, kappa);
}

double b_func(const ModelParams& params, int u, double y, int lambda) {
  CoeffTables t(params.beta, table_span(params, std::abs(u) + std::abs(lambda) + 1));
  return b_eval(t, params.rho, u, y, lambda);
}

double b_func_direct(const ModelParams& params, int u, double y, int lambda) {
  int rho = params.rho;
  double beta = params.beta;
  CoeffTables t(beta, table_span(params, std::abs(u) + std::abs(lambda) + 1));
  double v = hermite_tilde(rho - lambda - u - 1, y + beta);
  for (int alpha = 0; alpha <= rho - lambda - 1; ++alpha)
    v -= t.c(rho - lambda - alpha - 1) * phi_fn(alpha - u, y - beta);
  return v;
}

std::pair<double, double> gh_funcs(double y, int k, double beta) {
  return {phi_fn(k, y - beta), hermite_tilde(-k - 1, beta - y)};
}

KBetaBlock kbeta_block(const ModelParams& params) {
  KBetaBlock block;
  block.rho = params.rho;
  block.beta = params.beta;
  int rho = params.rho;
  CoeffTables t(params.beta, 2 * rho + 2);
  block.kernel_window = Eigen::MatrixXd::Zero(rho, rho);
  for (int lambda = 0; lambda < rho; ++lambda)
    for (int kappa = 0; kappa < rho; ++kappa) {
      double s = 0.0;
      for (int alpha = 0; alpha <= rho - 1 - kappa; ++alpha)
        s += t.c(rho - kappa - alpha - 1) * t.c_tilde(lambda - rho + alpha + 1);
      block.kernel_window(lambda, kappa) = s;
    }
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(rho, rho) - block.kernel_window;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  if (std::abs(lu.determinant()) < 1e-12)
    throw std::runtime_error("kbeta_block: 1 - K is numerically singular");
  block.resolvent = lu.inverse();
  return block;
}

double fredholm_det(const ModelParams& params) {
  int rho = params.rho;
  CoeffTables t(params.beta, rho + 1);
  Eigen::MatrixXd m(rho, rho);
  for (int i = 0; i < rho; ++i)
    for (int j = 0; j < rho; ++j)
      m(i, j) = (i >= j ? t.a(i - j) : 0.0) - t.c_tilde(i - j);
  return m.determinant();
}

TacKernel::TacKernel(const ModelParams& params, int max_abs_u)
    : params_(params),
      max_abs_u_(max_abs_u),
      tables_(params.beta, table_span(params, max_abs_u)) {
  int rho = params_.rho;
  one_minus_k_ = Eigen::MatrixXd::Identity(rho, rho);
  for (int lambda = 0; lambda < rho; ++lambda)
    for (int kappa = 0; kappa < rho; ++kappa)
      one_minus_k_(lambda, kappa) -= kwindow_entry(lambda, kappa);
  window_lu_.compute(one_minus_k_);
}

double TacKernel::kwindow_entry(int lambda, int kappa) const {
  int rho = params_.rho;
  if (kappa >= rho) return 0.0;
  double s = 0.0;
  for (int alpha = 0; alpha <= rho - 1 - kappa; ++alpha)
    s += tables_.c(rho - kappa - alpha - 1) *
         tables_.c_tilde(lambda - rho + alpha + 1);
  return s;
}

double TacKernel::a_value(int u, double y, int kappa) const {
  return a_eval(tables_, params_.rho, u, y, kappa);
}

double TacKernel::b_value(int u, double y, int lambda) const {
  return b_eval(tables_, params_.rho, u, y, lambda);
}

double TacKernel::evaluate_standard(const LevelPoint& p1,
                                    const LevelPoint& p2) const {
  int rho = params_.rho;
  int m = std::max(rho, rho - p2.u);
  // Resolvent of the m x m truncation; block-triangular with identity tail,
  // so only the rho x rho factorization is needed.
  Eigen::VectorXd aw(rho);
  for (int kappa = 0; kappa < rho; ++kappa)
    aw[kappa] = a_value(p1.u, p1.z, kappa);
  Eigen::VectorXd rw = window_lu_.solve(aw);
  double s = 0.0;
  for (int lambda = 0; lambda < m; ++lambda) {
    double r;
    if (lambda < rho) {
      r = rw[lambda];
    } else {
      r = a_value(p1.u, p1.z, lambda);
      for (int kappa = 0; kappa < rho; ++kappa)
        r += kwindow_entry(lambda, kappa) * rw[kappa];
    }
    s += r * b_value(p2.u, p2.z, lambda);
  }
  return minor_kernel(p1, p2, params_.beta) + 2.0 * s;
}

double TacKernel::operator()(const LevelPoint& p1, const LevelPoint& p2,
                             TacForm form) const {
  if (std::max(std::abs(p1.u), std::abs(p2.u)) > max_abs_u_ + params_.rho)
    throw std::invalid_argument("TacKernel: level outside cached range");
  if (form == TacForm::standard) return evaluate_standard(p1, p2);
  LevelPoint q1{params_.rho - p2.u, -p2.z};
  LevelPoint q2{params_.rho - p1.u, -p1.z};
  return evaluate_standard(q1, q2);
}

double tacnode_kernel(const LevelPoint& p1, const LevelPoint& p2,
                      const ModelParams& params, TacForm form) {
  int span = std::max(std::abs(p1.u), std::abs(p2.u)) + 1;
  TacKernel k(params, span);
  return k(p1, p2, form);
}

double correlation_det(const std::vector<LevelPoint>& points,
                       const ModelParams& params) {
  int n = static_cast<int>(points.size());
  if (n == 0) return 1.0;
  int span = 1;
  for (const auto& p : points) span = std::max(span, std::abs(p.u) + 1);
  TacKernel k(params, span);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = k(points[static_cast<size_t>(i)], points[static_cast<size_t>(j)]);
  return m.determinant();
}

double level_trace(const ModelParams& params, int u, double tol) {
  TacKernel k(params, std::abs(u) + 1);
  double spread = std::sqrt(static_cast<double>(std::max(std::abs(u), params.rho)));
  double halfwidth = std::max(8.0, 4.0 + 2.0 * spread) + params.beta;
  auto diag = [&](double z) { return k({u, z}, {u, z}); };
  return integrate_line(diag, halfwidth, tol * 0.1);
}

}  // namespace tacnode
