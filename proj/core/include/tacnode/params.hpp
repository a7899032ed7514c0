#pragma once

#include <stdexcept>
#include <string>

namespace tacnode {

// Model parameters shared by every formula in the library: level/matrix
// size n, overlap size rho (1 <= rho <= n), shift beta >= 0 and the
// derived gap delta = n - rho.
struct ModelParams {
  int n = 1;
  int rho = 1;
  double beta = 0.0;

  ModelParams() = default;
  ModelParams(int n_, int rho_, double beta_) : n(n_), rho(rho_), beta(beta_) {
    validate();
  }

  int delta() const { return n - rho; }

  void validate() const {
    if (rho < 1) throw std::invalid_argument("ModelParams: rho must be >= 1");
    if (n < rho) throw std::invalid_argument("ModelParams: need n >= rho");
    if (beta < 0.0) throw std::invalid_argument("ModelParams: beta must be >= 0");
  }

  std::string describe() const {
    return "n=" + std::to_string(n) + " rho=" + std::to_string(rho) +
           " beta=" + std::to_string(beta);
  }
};

}  // namespace tacnode
