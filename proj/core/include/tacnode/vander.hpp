#pragma once

#include <Eigen/Dense>

#include "tacnode/params.hpp"

namespace tacnode {

// Vectors of particle positions are stored weakly decreasing throughout.
using Spectrum = Eigen::VectorXd;

bool is_weakly_decreasing(const Spectrum& x, double tol = 0.0);
Spectrum sorted_decreasing(Spectrum x);

// Vandermonde product prod_{i<j} (x_i - x_j); nonnegative on decreasing x.
double vandermonde(const Spectrum& x);

enum class Sign { plus, minus };

// Extended Vandermonde: determinant with rows 1, x, ..., x^{n-rho-1},
// Phi_{n-rho}(beta +- x), ..., Phi_{n-1}(beta +- x), evaluated on the
// columns in increasing order so that the rho = 0 case reduces exactly to
// vandermonde(x) of the decreasing input. rho = 0 is allowed here.
double vandermonde_ext(const Spectrum& x, int rho, double beta, Sign sign);
double vandermonde_ext(const Spectrum& x, const ModelParams& params, Sign sign);

// Square matrix with entries H~_{n-j}(-x_i) (rows i, columns j, 1-based in
// the formulas); its determinant is hermite_matrix_constant(n) * vandermonde(x).
Eigen::MatrixXd hermite_tilde_matrix(const Spectrum& x);

// (-2)^{n(n-1)/2} / prod_{j<n} j!
double hermite_matrix_constant(int n);

}  // namespace tacnode
