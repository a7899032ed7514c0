#pragma once

#include <cstdint>
#include <utility>

#include "tacnode/interlace.hpp"
#include "tacnode/params.hpp"
#include "tacnode/rng.hpp"
#include "tacnode/vander.hpp"

namespace tacnode {

struct McEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// Monte Carlo volume of the double cone between x (level n) and y (level
// rho - n). Interior vectors are drawn level by level inside their
// interlacing boxes with exact box-volume bookkeeping; the final mixed
// constraint is an acceptance indicator.
McEstimate mc_volume(const ModelParams& params, const Spectrum& x,
                     const Spectrum& y, long samples, Rng& rng);

// Draw one uniform point of the sampling envelope; `weight` returns the
// product of box volumes (0 if construction failed).
DoubleConePoint sample_cone_envelope(const ModelParams& params,
                                     const Spectrum& x, const Spectrum& y,
                                     Rng& rng, double& weight);

// Vol(C_x) = vandermonde(x) / prod_{k<n} k!
double single_cone_volume(const Spectrum& x);

// Random boundary pair with a cone of real volume: x decreasing, y pushed
// below by random gaps, rejected until the closed-form volume clears the
// floor.
std::pair<Spectrum, Spectrum> random_feasible_pair(const ModelParams& params,
                                                   Rng& rng,
                                                   double min_volume = 1e-3);

// Residual of the box-integration identity: iterated integral of the
// level-n cone volume over the interlacing boxes of (z, w) against the
// closed form at level n+1. z and w are decreasing (n+1)-vectors; the
// integration runs in increasing coordinates internally.
double induction_step_check(const ModelParams& params, const Spectrum& z,
                            const Spectrum& w, int order = 12);

// Gessel-Viennot count of nonintersecting up-right path families:
// det [ binom(x_i - y_j + rho - 1, rho - 1) 1_{x_i >= y_j} ].
long long lattice_path_count(const std::vector<long long>& x,
                             const std::vector<long long>& y, int rho);

}  // namespace tacnode
