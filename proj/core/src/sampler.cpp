#include "tacnode/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "tacnode/interlace.hpp"
#include "tacnode/stats.hpp"

namespace tacnode {

HermitianMatrix sample_shifted_gue(int n, double shift, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_shifted_gue: n must be >= 1");
  HermitianMatrix m(n, n);
  const double diag_sigma = std::sqrt(0.5);
  for (int i = 0; i < n; ++i) {
    m(i, i) = shift + diag_sigma * rng.normal();
    for (int j = i + 1; j < n; ++j) {
      std::complex<double> z(0.5 * rng.normal(), 0.5 * rng.normal());
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

std::vector<Spectrum> minor_spectra(const HermitianMatrix& m) {
  int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw std::invalid_argument("minor_spectra: square input required");
  double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > 1e-10 * scale)
    throw std::invalid_argument("minor_spectra: input is not Hermitian");
  std::vector<Spectrum> out;
  out.reserve(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) {
    Spectrum v(k);
    if (k == 1) {
      v[0] = m(0, 0).real();
    } else if (k == 2) {
      // Closed form keeps the rejection loops cheap.
      double tr = m(0, 0).real() + m(1, 1).real();
      double diff = 0.5 * (m(0, 0).real() - m(1, 1).real());
      double disc = std::sqrt(diff * diff + std::norm(m(0, 1)));
      v[0] = 0.5 * tr + disc;
      v[1] = 0.5 * tr - disc;
    } else {
      Eigen::SelfAdjointEigenSolver<HermitianMatrix> es(m.topLeftCorner(k, k),
                                                        Eigen::EigenvaluesOnly);
      v = es.eigenvalues().reverse();
    }
    out.push_back(std::move(v));
  }
  for (int k = 1; k < n; ++k)
    if (!interlaces(out[static_cast<size_t>(k)], out[static_cast<size_t>(k - 1)], 1e-9))
      throw std::runtime_error("minor_spectra: Cauchy interlacing violated");
  return out;
}

bool coupling_ok(const std::vector<Spectrum>& x_chain,
                 const std::vector<Spectrum>& y_chain, int rho) {
  for (int i = 1; i <= rho; ++i) {
    double y_max = y_chain[static_cast<size_t>(i - 1)][0];
    const Spectrum& x = x_chain[static_cast<size_t>(rho - i)];
    double x_min = x[x.size() - 1];
    if (y_max > x_min) return false;
  }
  return true;
}

CoupledPairSample sample_coupled_pair(const ModelParams& params, Rng& rng,
                                      long max_attempts) {
  params.validate();
  CoupledPairSample sample;
  sample.params = params;
  for (long attempt = 1; attempt <= max_attempts; ++attempt) {
    HermitianMatrix a = sample_shifted_gue(params.n, params.beta, rng);
    HermitianMatrix b = sample_shifted_gue(params.n, -params.beta, rng);
    auto xs = minor_spectra(a);
    auto ys = minor_spectra(b);
    if (coupling_ok(xs, ys, params.rho)) {
      sample.x_chain = std::move(xs);
      sample.y_chain = std::move(ys);
      sample.accepted = true;
      sample.attempts = attempt;
      return sample;
    }
  }
  throw std::runtime_error(
      "sample_coupled_pair: attempt budget exhausted (acceptance rate too low)");
}

InterlacingChain assemble_chain(const CoupledPairSample& pair) {
  if (!pair.accepted)
    throw std::invalid_argument("assemble_chain: sample was not accepted");
  const ModelParams& p = pair.params;
  if (!coupling_ok(pair.x_chain, pair.y_chain, p.rho))
    throw std::invalid_argument("assemble_chain: coupling constraint violated");
  InterlacingChain chain;
  chain.params = p;
  for (int u = p.rho - p.n; u <= p.n; ++u) {
    if (u >= p.rho) {
      chain.levels[u] = pair.x_chain[static_cast<size_t>(u - 1)];
    } else if (u <= 0) {
      chain.levels[u] = pair.y_chain[static_cast<size_t>(p.rho - u - 1)];
    } else {
      const Spectrum& ypart = pair.y_chain[static_cast<size_t>(p.rho - u - 1)];
      const Spectrum& xpart = pair.x_chain[static_cast<size_t>(u - 1)];
      Spectrum merged(ypart.size() + xpart.size());
      merged << ypart, xpart;
      chain.levels[u] = sorted_decreasing(merged);
    }
  }
  // Dimension rule and the full interlacing pattern.
  for (int u = p.rho - p.n; u <= p.n; ++u) {
    int expect = u >= p.rho ? u : std::max(p.rho - u, p.rho);
    if (static_cast<int>(chain.levels[u].size()) != expect)
      throw std::runtime_error("assemble_chain: level size violation");
  }
  for (int u = p.rho - p.n; u < p.n; ++u) {
    const Spectrum& lo = chain.levels[u];
    const Spectrum& hi = chain.levels[u + 1];
    bool ok = true;
    if (u >= p.rho) {
      ok = interlaces(hi, lo, 1e-9);
    } else if (u < 0) {
      ok = interlaces(lo, hi, 1e-9);
    } else {
      ok = mixed_leq(lo, hi, 1e-9);
    }
    if (!ok) throw std::runtime_error("assemble_chain: interlacing violation");
  }
  return chain;
}

Histogram empirical_level_histogram(const ModelParams& params, int u,
                                    long trials, int bins, Rng& rng, double lo,
                                    double hi, long max_attempts) {
  if (trials <= 0)
    throw std::invalid_argument("empirical_level_histogram: trials must be > 0");
  if (bins < 1)
    throw std::invalid_argument("empirical_level_histogram: bins must be >= 1");
  Histogram h;
  if (lo >= hi) {
    double spread = 4.0 + params.beta + std::sqrt(static_cast<double>(params.n));
    lo = -spread;
    hi = spread;
  }
  h.lo = lo;
  h.hi = hi;
  h.counts.assign(static_cast<size_t>(bins), 0);
  for (long t = 0; t < trials; ++t) {
    CoupledPairSample s = sample_coupled_pair(params, rng, max_attempts);
    InterlacingChain chain = assemble_chain(s);
    const Spectrum& z = chain.levels.at(u);
    for (int i = 0; i < z.size(); ++i) {
      ++h.total;
      double v = z[i];
      if (v < lo || v >= hi) continue;
      int b = static_cast<int>((v - lo) / (hi - lo) * bins);
      b = std::clamp(b, 0, bins - 1);
      ++h.counts[static_cast<size_t>(b)];
    }
    ++h.samples;
  }
  return h;
}

RateEstimate acceptance_rate(const ModelParams& params, long trials,
                             std::uint64_t master_seed, int threads) {
  if (trials <= 0) throw std::invalid_argument("acceptance_rate: trials must be > 0");
  long streams = std::min<long>(256, std::max<long>(1, trials / 1000));
  std::vector<long> accepted(static_cast<size_t>(streams), 0);
  std::vector<long> counts(static_cast<size_t>(streams), 0);
  parallel_for_jobs(
      streams,
      [&](long s) {
        Rng rng = substream(master_seed, static_cast<std::uint64_t>(s));
        long lo = trials * s / streams, hi_t = trials * (s + 1) / streams;
        long acc = 0;
        for (long t = lo; t < hi_t; ++t) {
          HermitianMatrix a = sample_shifted_gue(params.n, params.beta, rng);
          HermitianMatrix b = sample_shifted_gue(params.n, -params.beta, rng);
          if (coupling_ok(minor_spectra(a), minor_spectra(b), params.rho)) ++acc;
        }
        accepted[static_cast<size_t>(s)] = acc;
        counts[static_cast<size_t>(s)] = hi_t - lo;
      },
      threads);
  RateEstimate est;
  for (long s = 0; s < streams; ++s) {
    est.accepted += accepted[static_cast<size_t>(s)];
    est.trials += counts[static_cast<size_t>(s)];
  }
  est.rate = static_cast<double>(est.accepted) / static_cast<double>(est.trials);
  est.stderr_ = std::sqrt(std::max(est.rate * (1.0 - est.rate), 1e-300) /
                          static_cast<double>(est.trials));
  return est;
}

}  // namespace tacnode
