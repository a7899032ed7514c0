#pragma once

#include <Eigen/Dense>

#include "tacnode/interlace.hpp"
#include "tacnode/params.hpp"
#include "tacnode/vander.hpp"

namespace tacnode {

// Ordered-vector GUE spectral density with the exp(-(x-shift)^2) weight;
// integrates to 1 over the decreasing chamber.
double gue_density(const Spectrum& x, double shift);

// Density of the level-u particle vector. For u <= rho the vector has
// max(rho - u, rho) entries; levels u > rho are mapped through the
// involution (u, z) -> (rho - u, -z).
double one_level_density(const ModelParams& params, int u, const Spectrum& z);

// Rank-rho, trace-zero coupling matrix built from the polynomial
// R(t) = prod(t - x_k + beta); identity when delta = 0.
Eigen::MatrixXd build_L(const ModelParams& params, const Spectrum& x);

// Solution components f_0..f_{rho-1} of the n x n system
//   sum_lambda H~_{n-lambda-1}(-x_i) f_lambda = -H^{rho+2delta}(2(y - x_i)).
Eigen::VectorXd solve_f(const ModelParams& params, const Spectrum& x, double y);

enum class GammaRoute { auto_select, coupling_matrix, linear_system };

// Closed-form volume of the double cone between x (level n) and y (level
// rho - n). Both evaluation routes must agree; auto_select switches to the
// linear-system route near coincident x entries.
double two_level_gamma(const ModelParams& params, const Spectrum& x,
                       const Spectrum& y,
                       GammaRoute route = GammaRoute::auto_select);

// Gamma as a function of y for fixed x; caches the coupling matrix so grids
// and quadratures over y stay cheap.
class GammaEvaluator {
 public:
  GammaEvaluator(const ModelParams& params, Spectrum x);
  double operator()(const Spectrum& y) const;

 private:
  ModelParams params_;
  Spectrum x_;
  Eigen::MatrixXd L_;
  double norm_;
};

// Workspace caching the x-dependent pieces (coupling matrix, Hermite
// factorization) for repeated y evaluations. Immutable after construction.
class TwoLevelWorkspace {
 public:
  TwoLevelWorkspace(const ModelParams& params, Spectrum x, Spectrum y);

  const ModelParams& params() const { return params_; }
  const Spectrum& x() const { return x_; }
  const Spectrum& y() const { return y_; }
  const Eigen::MatrixXd& coupling() const { return L_; }

  double gamma(GammaRoute route = GammaRoute::auto_select) const;
  double joint_density() const;

 private:
  ModelParams params_;
  Spectrum x_, y_;
  Eigen::MatrixXd L_;
  bool near_coincident_ = false;
};

// Joint density of (x at level n, y at level rho - n), ordered vectors.
double joint_two_level_density(const ModelParams& params, const Spectrum& x,
                               const Spectrum& y);

// Uniform conditional law on the double cone: 1/Vol if the interior chain
// belongs to the cone, else 0.
double conditional_cone_density(const ModelParams& params, const Spectrum& x,
                                const Spectrum& y, const DoubleConePoint& point);

}  // namespace tacnode
