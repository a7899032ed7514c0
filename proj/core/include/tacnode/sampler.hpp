#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "tacnode/params.hpp"
#include "tacnode/rng.hpp"
#include "tacnode/vander.hpp"

namespace tacnode {

using HermitianMatrix = Eigen::MatrixXcd;

// n x n Hermitian draw whose spectrum follows the shifted GUE density used
// throughout: diagonal entries N(shift, 1/2), off-diagonal real/imaginary
// parts N(0, 1/4).
HermitianMatrix sample_shifted_gue(int n, double shift, Rng& rng);

// Spectra of the leading principal k x k minors, k = 1..n, each sorted
// decreasing. Throws if the input is not Hermitian within 1e-10 or if
// consecutive spectra fail Cauchy interlacing at 1e-9.
std::vector<Spectrum> minor_spectra(const HermitianMatrix& m);

// The rho coupling inequalities between two minor-spectrum chains.
bool coupling_ok(const std::vector<Spectrum>& x_chain,
                 const std::vector<Spectrum>& y_chain, int rho);

struct CoupledPairSample {
  ModelParams params;
  std::vector<Spectrum> x_chain;  // minors of A, levels 1..n
  std::vector<Spectrum> y_chain;  // minors of B, levels 1..n
  bool accepted = false;
  long attempts = 0;
};

// Rejection sampler: independent A in beta + GUE(n) and B in -beta + GUE(n)
// until the coupling inequalities hold. Throws when the attempt budget is
// exhausted (low acceptance probability).
CoupledPairSample sample_coupled_pair(const ModelParams& params, Rng& rng,
                                      long max_attempts = 10000000L);

struct InterlacingChain {
  ModelParams params;
  std::map<int, Spectrum> levels;  // u in [rho - n, n]
};

// Combine an accepted pair into the level chain z^(u) and assert every
// interlacing invariant.
InterlacingChain assemble_chain(const CoupledPairSample& pair);

struct Histogram {
  double lo = 0.0, hi = 0.0;
  std::vector<long> counts;
  long total = 0;       // values recorded, including out-of-range
  long samples = 0;     // accepted samples used
  double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
};

// Histogram of the level-u particle positions over `trials` accepted
// samples.
Histogram empirical_level_histogram(const ModelParams& params, int u,
                                    long trials, int bins, Rng& rng,
                                    double lo = 0.0, double hi = 0.0,
                                    long max_attempts = 10000000L);

struct RateEstimate {
  double rate = 0.0;
  double stderr_ = 0.0;
  long trials = 0;
  long accepted = 0;
};

// Empirical acceptance probability of the coupling constraint over
// independent trials, deterministically split over seeded substreams.
RateEstimate acceptance_rate(const ModelParams& params, long trials,
                             std::uint64_t master_seed, int threads = 0);

}  // namespace tacnode
