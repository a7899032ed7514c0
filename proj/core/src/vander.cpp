#include "tacnode/vander.hpp"

#include <algorithm>
#include <stdexcept>

#include "tacnode/special.hpp"

namespace tacnode {

bool is_weakly_decreasing(const Spectrum& x, double tol) {
  for (int i = 0; i + 1 < x.size(); ++i)
    if (x[i + 1] > x[i] + tol) return false;
  return true;
}

Spectrum sorted_decreasing(Spectrum x) {
  std::sort(x.data(), x.data() + x.size(), std::greater<double>());
  return x;
}

double vandermonde(const Spectrum& x) {
  double v = 1.0;
  for (int i = 0; i < x.size(); ++i)
    for (int j = i + 1; j < x.size(); ++j) v *= x[i] - x[j];
  return v;
}

double vandermonde_ext(const Spectrum& x, int rho, double beta, Sign sign) {
  int n = static_cast<int>(x.size());
  if (rho < 0 || rho > n)
    throw std::invalid_argument("vandermonde_ext: need 0 <= rho <= size(x)");
  double s = sign == Sign::plus ? 1.0 : -1.0;
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j) {
    double xc = x[n - 1 - j];  // columns in increasing order
    for (int r = 0; r < n - rho; ++r) m(r, j) = std::pow(xc, r);
    for (int r = n - rho; r < n; ++r) m(r, j) = phi_fn(r, beta + s * xc);
  }
  return m.determinant();
}

double vandermonde_ext(const Spectrum& x, const ModelParams& params, Sign sign) {
  return vandermonde_ext(x, params.rho, params.beta, sign);
}

Eigen::MatrixXd hermite_tilde_matrix(const Spectrum& x) {
  int n = static_cast<int>(x.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    auto ht = hermite_tilde_seq(n - 1, -x[i]);
    for (int j = 0; j < n; ++j) m(i, j) = ht[static_cast<size_t>(n - 1 - j)];
  }
  return m;
}

double hermite_matrix_constant(int n) {
  double c = 1.0;
  for (int k = 0; k < n * (n - 1) / 2; ++k) c *= -2.0;
  for (int j = 1; j < n; ++j) c /= factorial(j);
  return c;
}

}  // namespace tacnode
