#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tacnode {

// Coefficient families attached to a shift beta:
//   c_k  = 2^{k/2} H~_k(beta*sqrt(2)),            k >= 0
//   a_k  = 2^{k/2} (-1)^k P_k(beta*sqrt(2)),      k >= 0  (inverse family)
//   ct_k = 2^{k/2} Phi_k(-beta*sqrt(2)),          all k in [-max_index, max_index]
// a is the convolution inverse of c: sum_{p+q=m} a_p c_q = delta_{m,0}.
// Immutable after construction and safe to share across threads.
class CoeffTables {
 public:
  CoeffTables(double beta, int max_index);

  double beta() const { return beta_; }
  int max_index() const { return max_index_; }

  // c_k and a_k vanish for k < 0; ct_k is defined for all stored k.
  double c(int k) const;
  double a(int k) const;
  double c_tilde(int k) const;

 private:
  double beta_;
  int max_index_;
  std::vector<double> c_, a_, ct_;  // ct_ offset by max_index_
};

CoeffTables coeff_tables(double beta, int max_index);

// Lower-triangular Toeplitz matrix C_alpha with entries coeffs[i-j] for
// i >= j; `coeffs` indexed from 0.
Eigen::MatrixXd toeplitz_lower(const std::vector<double>& coeffs, int alpha);

// Same matrix with its rows written in reversed order.
Eigen::MatrixXd toeplitz_flipped(const std::vector<double>& coeffs, int alpha);

std::vector<double> c_sequence(const CoeffTables& t, int count);
std::vector<double> a_sequence(const CoeffTables& t, int count);

}  // namespace tacnode
