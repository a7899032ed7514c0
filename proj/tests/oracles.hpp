#pragma once

// Test-only oracles, independent of the library evaluation paths they check.

#include <cmath>
#include <functional>
#include <vector>

#include "tacnode/quadrature.hpp"
#include "tacnode/special.hpp"

namespace oracles {

// Recursive bisection to the requested absolute accuracy.
inline double adaptive(const std::function<double(double)>& f, double a,
                       double b, double tol, int depth = 0) {
  double whole = tacnode::integrate_panel(f, a, b, 15);
  double mid = 0.5 * (a + b);
  double left = tacnode::integrate_panel(f, a, mid, 15);
  double right = tacnode::integrate_panel(f, mid, b, 15);
  if (depth > 40 || std::abs(left + right - whole) < tol)
    return left + right;
  return adaptive(f, a, mid, 0.5 * tol, depth + 1) +
         adaptive(f, mid, b, 0.5 * tol, depth + 1);
}

// Defining half-line Gaussian moment: (2^m / (sqrt(pi) m!)) *
// int_0^inf xi^m exp(-(xi-eta)^2) dxi, for m >= 0.
inline double phi_integral(int m, double eta) {
  auto f = [&](double xi) {
    return std::pow(xi, m) * std::exp(-(xi - eta) * (xi - eta));
  };
  double upper = std::max(eta, 0.0) + 10.0 + 0.5 * m;
  // Tolerance scaled to the raw integral so the recursion terminates; the
  // relative accuracy carries through the 2^m / m! prefactor.
  double scale = 1.0 + std::abs(tacnode::integrate_panel(f, 0.0, upper, 15));
  double val = adaptive(f, 0.0, upper, 1e-13 * scale);
  return std::pow(2.0, m) / (tacnode::kSqrtPi * tacnode::factorial(m)) * val;
}

// Brute-force polynomial convolution check helper.
inline double convolve_at(const std::vector<double>& a,
                          const std::vector<double>& b, int m) {
  double s = 0.0;
  for (int p = 0; p <= m; ++p) s += a[static_cast<size_t>(p)] * b[static_cast<size_t>(m - p)];
  return s;
}

}  // namespace oracles
