#pragma once

#include <utility>
#include <vector>

namespace tacnode {

// Physicists' Hermite polynomial H_m(x); identically 0 for m < 0.
double hermite(int m, double x);

// hermite_tilde(m, x) = H_m(x) / m!, 0 for m < 0.
double hermite_tilde(int m, double x);

// p_poly(m, x): the real-valued polynomial H_m(ix) / (m! i^m), 0 for m < 0.
// Computed by the purely real recurrence m*P_m = 2x*P_{m-1} + 2*P_{m-2}.
double p_poly(int m, double x);

// q_poly(m, eta): companion family used by the error-function expansions.
// Q_0 = 1, Q_{-1} = 0, (m+1)/2 * Q_m = eta*Q_{m-1} + Q_{m-2} for m >= 1,
// and Q_{-k} = H_{k-2}(-eta) / 2^{k-1} for k >= 2.
double q_poly(int m, double eta);

// (F, G) with F(y) the Gaussian mass to the left of y (unit total mass,
// variance 1/2 convention) and G = 1 - F.
std::pair<double, double> erf_pair(double y);

// phi_fn(m, eta): half-line Gaussian moments; for m >= 0 equals
// F(eta) P_m(eta) + F'(eta) Q_{m-1}(eta) with F' = exp(-eta^2)/sqrt(pi),
// for m <= -1 the Gaussian closed branch exp(-eta^2)/sqrt(pi) *
// H_{-m-1}(-eta) / 2^{-m}.
double phi_fn(int m, double eta);

// psi_fn(m, eta) = G(eta) P_m(eta) + G'(eta) Q_{m-1}(eta).
double psi_fn(int m, double eta);

// heaviside_pow(m, z) = 1_{z >= 0} z^{m-1} / (m-1)!, defined for m >= 1.
double heaviside_pow(int m, double z);

// Prefix sequences H~_0..H~_m resp. P_0..P_m at a fixed argument; cheaper
// than repeated scalar calls inside kernel sums.
std::vector<double> hermite_tilde_seq(int m, double x);
std::vector<double> p_poly_seq(int m, double x);

double factorial(int m);

inline constexpr double kSqrtPi = 1.7724538509055160273;
inline constexpr double kInvSqrtPi = 0.5641895835477562869;

}  // namespace tacnode
