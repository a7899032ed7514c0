#include "tacnode/special.hpp"

#include <cmath>
#include <stdexcept>

namespace tacnode {

double factorial(int m) {
  if (m < 0) throw std::invalid_argument("factorial: negative argument");
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f *= k;
  return f;
}

double hermite(int m, double x) {
  if (m < 0) return 0.0;
  double hm1 = 0.0, h = 1.0;  // H_{-1}, H_0
  for (int k = 0; k < m; ++k) {
    double next = 2.0 * x * h - 2.0 * k * hm1;
    hm1 = h;
    h = next;
  }
  return h;
}

double hermite_tilde(int m, double x) {
  if (m < 0) return 0.0;
  double hm1 = 0.0, h = 1.0;  // H~_{-1}, H~_0
  for (int k = 0; k < m; ++k) {
    // (k+1) H~_{k+1} = 2x H~_k - 2 H~_{k-1}
    double next = (2.0 * x * h - 2.0 * hm1) / (k + 1);
    hm1 = h;
    h = next;
  }
  return h;
}

std::vector<double> hermite_tilde_seq(int m, double x) {
  std::vector<double> out(static_cast<size_t>(m < 0 ? 0 : m + 1));
  double hm1 = 0.0, h = 1.0;
  for (int k = 0; k <= m; ++k) {
    out[static_cast<size_t>(k)] = h;
    double next = (2.0 * x * h - 2.0 * hm1) / (k + 1);
    hm1 = h;
    h = next;
  }
  return out;
}

double p_poly(int m, double x) {
  if (m < 0) return 0.0;
  double pm1 = 0.0, p = 1.0;  // P_{-1}, P_0
  for (int k = 0; k < m; ++k) {
    // (k+1) P_{k+1} = 2x P_k + 2 P_{k-1}
    double next = (2.0 * x * p + 2.0 * pm1) / (k + 1);
    pm1 = p;
    p = next;
  }
  return p;
}

std::vector<double> p_poly_seq(int m, double x) {
  std::vector<double> out(static_cast<size_t>(m < 0 ? 0 : m + 1));
  double pm1 = 0.0, p = 1.0;
  for (int k = 0; k <= m; ++k) {
    out[static_cast<size_t>(k)] = p;
    double next = (2.0 * x * p + 2.0 * pm1) / (k + 1);
    pm1 = p;
    p = next;
  }
  return out;
}

double q_poly(int m, double eta) {
  if (m == 0) return 1.0;
  if (m == -1) return 0.0;
  if (m <= -2) {
    int k = -m;
    return hermite(k - 2, -eta) / std::pow(2.0, k - 1);
  }
  double qm2 = 0.0, qm1 = 1.0;  // Q_{-1}, Q_0
  double q = 0.0;
  for (int k = 1; k <= m; ++k) {
    q = 2.0 * (eta * qm1 + qm2) / (k + 1);
    qm2 = qm1;
    qm1 = q;
  }
  return q;
}

std::pair<double, double> erf_pair(double y) {
  // F + G = 1 exactly; erfc keeps the small tail accurate.
  double g = 0.5 * std::erfc(y);
  double f = y >= 0.0 ? 1.0 - g : 0.5 * std::erfc(-y);
  return {f, g};
}

double phi_fn(int m, double eta) {
  double gauss = std::exp(-eta * eta) * kInvSqrtPi;
  if (m <= -1) return gauss * hermite(-m - 1, -eta) / std::pow(2.0, -m);
  auto [f, g] = erf_pair(eta);
  (void)g;
  return f * p_poly(m, eta) + gauss * q_poly(m - 1, eta);
}

double psi_fn(int m, double eta) {
  double gauss = std::exp(-eta * eta) * kInvSqrtPi;
  auto [f, g] = erf_pair(eta);
  (void)f;
  return g * p_poly(m, eta) - gauss * q_poly(m - 1, eta);
}

double heaviside_pow(int m, double z) {
  if (m < 1) throw std::invalid_argument("heaviside_pow: requires m >= 1");
  if (z < 0.0) return 0.0;
  if (m == 1) return 1.0;
  if (m <= 16) {
    static const double inv_fact[] = {
        1.0,
        1.0,
        1.0 / 2,
        1.0 / 6,
        1.0 / 24,
        1.0 / 120,
        1.0 / 720,
        1.0 / 5040,
        1.0 / 40320,
        1.0 / 362880,
        1.0 / 3628800,
        1.0 / 39916800,
        1.0 / 479001600,
        1.0 / 6227020800.0,
        1.0 / 87178291200.0,
        1.0 / 1307674368000.0};
    double p = z;
    for (int k = 1; k < m - 1; ++k) p *= z;
    return p * inv_fact[m - 1];
  }
  return std::pow(z, m - 1) / factorial(m - 1);
}

}  // namespace tacnode
