#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "tacnode/coeffs.hpp"
#include "tacnode/params.hpp"

namespace tacnode {

// Argument of every kernel: a level index u and a position z on that level.
struct LevelPoint {
  int u = 0;
  double z = 0.0;
};

// GUE-minor kernel evaluated at (u1, beta - z1; u2, beta - z2), finite-sum
// form. Returns the full (undoubled) kernel value.
double minor_kernel(const LevelPoint& p1, const LevelPoint& p2, double beta);

// Perturbation ingredients. a_func checks the documented kappa range
// 0 <= kappa <= max(rho - u - 1, rho - 1); b_func is total.
double a_func(const ModelParams& params, int u, double y, int kappa);
double b_func(const ModelParams& params, int u, double y, int lambda);

// Pre-simplification form of b_func (one H~ term minus a c*Phi sum); kept
// as an independent route for cross-checks.
double b_func_direct(const ModelParams& params, int u, double y, int lambda);

// g_y(kappa) = Phi_kappa(y - beta) and h_y(lambda) = H~_{-lambda-1}(beta - y).
std::pair<double, double> gh_funcs(double y, int k, double beta);

// The rho x rho window of the overlap kernel together with its resolvent.
// Columns vanish outside the window, so this block determines the full
// operator.
struct KBetaBlock {
  int rho = 0;
  double beta = 0.0;
  Eigen::MatrixXd kernel_window;  // entry (lambda, kappa)
  Eigen::MatrixXd resolvent;      // (1 - K)^{-1} on the window
};

KBetaBlock kbeta_block(const ModelParams& params);

// det(1 - K^beta) on the window, via the explicit Toeplitz determinant with
// entries a_{i-j} - ct_{i-j}.
double fredholm_det(const ModelParams& params);

enum class TacForm { standard, involution };

// Evaluator for the edge-tacnode kernel with cached coefficient tables and
// window factorization. Valid for |u| <= max_abs_u.
class TacKernel {
 public:
  explicit TacKernel(const ModelParams& params, int max_abs_u = 8);

  double operator()(const LevelPoint& p1, const LevelPoint& p2,
                    TacForm form = TacForm::standard) const;
  double a_value(int u, double y, int kappa) const;  // no range check
  double b_value(int u, double y, int lambda) const;
  const ModelParams& params() const { return params_; }
  const CoeffTables& tables() const { return tables_; }

 private:
  double evaluate_standard(const LevelPoint& p1, const LevelPoint& p2) const;
  double kwindow_entry(int lambda, int kappa) const;

  ModelParams params_;
  int max_abs_u_;
  CoeffTables tables_;
  Eigen::MatrixXd one_minus_k_;
  Eigen::PartialPivLU<Eigen::MatrixXd> window_lu_;
};

double tacnode_kernel(const LevelPoint& p1, const LevelPoint& p2,
                      const ModelParams& params,
                      TacForm form = TacForm::standard);

// det of the tacnode kernel over a point set; 1 for the empty set.
double correlation_det(const std::vector<LevelPoint>& points,
                       const ModelParams& params);

// Integral of the kernel diagonal at level u; equals the particle count of
// the level. Integration half-width chosen from the Gaussian decay.
double level_trace(const ModelParams& params, int u, double tol = 1e-7);

}  // namespace tacnode
