#include "tacnode/coeffs.hpp"

#include <cmath>
#include <stdexcept>

#include "tacnode/special.hpp"

namespace tacnode {

CoeffTables::CoeffTables(double beta, int max_index)
    : beta_(beta), max_index_(max_index) {
  if (max_index < 0) throw std::invalid_argument("CoeffTables: max_index < 0");
  double s = beta * std::sqrt(2.0);
  c_.resize(static_cast<size_t>(max_index + 1));
  a_.resize(static_cast<size_t>(max_index + 1));
  ct_.resize(static_cast<size_t>(2 * max_index + 1));
  auto ht = hermite_tilde_seq(max_index, s);
  auto pp = p_poly_seq(max_index, s);
  for (int k = 0; k <= max_index; ++k) {
    double scale = std::pow(2.0, 0.5 * k);
    c_[static_cast<size_t>(k)] = scale * ht[static_cast<size_t>(k)];
    a_[static_cast<size_t>(k)] =
        scale * (k % 2 == 0 ? 1.0 : -1.0) * pp[static_cast<size_t>(k)];
  }
  for (int k = -max_index; k <= max_index; ++k) {
    ct_[static_cast<size_t>(k + max_index)] =
        std::pow(2.0, 0.5 * k) * phi_fn(k, -s);
  }
}

double CoeffTables::c(int k) const {
  if (k < 0) return 0.0;
  if (k > max_index_) throw std::out_of_range("CoeffTables::c: index too large");
  return c_[static_cast<size_t>(k)];
}

double CoeffTables::a(int k) const {
  if (k < 0) return 0.0;
  if (k > max_index_) throw std::out_of_range("CoeffTables::a: index too large");
  return a_[static_cast<size_t>(k)];
}

double CoeffTables::c_tilde(int k) const {
  if (k < -max_index_ || k > max_index_)
    throw std::out_of_range("CoeffTables::c_tilde: index out of range");
  return ct_[static_cast<size_t>(k + max_index_)];
}

CoeffTables coeff_tables(double beta, int max_index) {
  return CoeffTables(beta, max_index);
}

Eigen::MatrixXd toeplitz_lower(const std::vector<double>& coeffs, int alpha) {
  if (alpha < 1) throw std::invalid_argument("toeplitz_lower: alpha < 1");
  if (static_cast<int>(coeffs.size()) < alpha)
    throw std::invalid_argument("toeplitz_lower: not enough coefficients");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(alpha, alpha);
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = coeffs[static_cast<size_t>(i - j)];
  return m;
}

Eigen::MatrixXd toeplitz_flipped(const std::vector<double>& coeffs, int alpha) {
  Eigen::MatrixXd m = toeplitz_lower(coeffs, alpha);
  return m.colwise().reverse();
}

std::vector<double> c_sequence(const CoeffTables& t, int count) {
  std::vector<double> out(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) out[static_cast<size_t>(k)] = t.c(k);
  return out;
}

std::vector<double> a_sequence(const CoeffTables& t, int count) {
  std::vector<double> out(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) out[static_cast<size_t>(k)] = t.a(k);
  return out;
}

}  // namespace tacnode
