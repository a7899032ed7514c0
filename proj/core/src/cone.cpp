#include "tacnode/cone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tacnode/densities.hpp"
#include "tacnode/quadrature.hpp"
#include "tacnode/special.hpp"

namespace tacnode {

bool interlaces(const Spectrum& longer, const Spectrum& shorter, double tol) {
  if (longer.size() != shorter.size() + 1) return false;
  for (int i = 0; i < shorter.size(); ++i) {
    if (shorter[i] > longer[i] + tol) return false;
    if (longer[i + 1] > shorter[i] + tol) return false;
  }
  return true;
}

bool mixed_leq(const Spectrum& z, const Spectrum& zp, double tol) {
  if (z.size() != zp.size()) return false;
  for (int i = 0; i < z.size(); ++i) {
    if (z[i] > zp[i] + tol) return false;
    if (i + 1 < z.size() && zp[i + 1] > z[i] + tol) return false;
  }
  return true;
}

int DoubleConePoint::coordinate_count() const {
  int c = 0;
  for (const auto& v : x_levels) c += static_cast<int>(v.size());
  for (const auto& v : y_levels) c += static_cast<int>(v.size());
  for (const auto& v : mixed_levels) c += static_cast<int>(v.size());
  return c;
}

bool in_double_cone(const DoubleConePoint& point, const Spectrum& x,
                    const Spectrum& y) {
  const ModelParams& pr = point.params;
  int n = pr.n, rho = pr.rho, delta = pr.delta();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw std::invalid_argument("in_double_cone: boundary vectors must have n entries");
  if (static_cast<int>(point.x_levels.size()) != delta ||
      static_cast<int>(point.y_levels.size()) != delta ||
      static_cast<int>(point.mixed_levels.size()) != rho - 1)
    throw std::invalid_argument("in_double_cone: wrong chain shape");
  for (int k = 0; k < delta; ++k) {
    if (static_cast<int>(point.x_levels[static_cast<size_t>(k)].size()) != rho + k ||
        static_cast<int>(point.y_levels[static_cast<size_t>(k)].size()) != rho + k)
      throw std::invalid_argument("in_double_cone: wrong level size");
  }
  for (const auto& v : point.mixed_levels)
    if (static_cast<int>(v.size()) != rho)
      throw std::invalid_argument("in_double_cone: mixed levels must have rho entries");

  auto chain_ok = [&](const std::vector<Spectrum>& levels, const Spectrum& top) {
    const Spectrum* upper = &top;
    for (size_t k = levels.size(); k-- > 0;) {
      if (!interlaces(*upper, levels[k])) return false;
      upper = &levels[k];
    }
    return true;
  };
  if (!chain_ok(point.x_levels, x)) return false;
  if (!chain_ok(point.y_levels, y)) return false;

  const Spectrum& y_rho = delta > 0 ? point.y_levels.front() : y;
  const Spectrum& x_rho = delta > 0 ? point.x_levels.front() : x;
  const Spectrum* prev = &y_rho;
  for (const auto& z : point.mixed_levels) {
    if (!mixed_leq(*prev, z)) return false;
    prev = &z;
  }
  return mixed_leq(*prev, x_rho);
}

namespace {

void shape_point(const ModelParams& params, DoubleConePoint& point) {
  int rho = params.rho, delta = params.delta();
  point.params = params;
  point.x_levels.resize(static_cast<size_t>(delta));
  point.y_levels.resize(static_cast<size_t>(delta));
  point.mixed_levels.resize(static_cast<size_t>(rho - 1));
  for (int k = 0; k < delta; ++k) {
    point.x_levels[static_cast<size_t>(k)].resize(rho + k);
    point.y_levels[static_cast<size_t>(k)].resize(rho + k);
  }
  for (auto& z : point.mixed_levels) z.resize(rho);
}

// Fill a pre-shaped point in place; returns the envelope box volume
// (0 when a mixed-level box degenerates).
double fill_envelope(const ModelParams& params, const Spectrum& x,
                     const Spectrum& y, Rng& rng, DoubleConePoint& point) {
  int rho = params.rho, delta = params.delta();
  double weight = 1.0;
  auto sample_chain = [&](const Spectrum& top, std::vector<Spectrum>& out) {
    const Spectrum* upper = &top;
    for (int size = params.n - 1; size >= rho; --size) {
      Spectrum& v = out[static_cast<size_t>(size - rho)];
      for (int i = 0; i < size; ++i) {
        double lo = (*upper)[i + 1], hi = (*upper)[i];
        weight *= hi - lo;
        v[i] = rng.uniform(lo, hi);
      }
      upper = &v;
    }
  };
  sample_chain(x, point.x_levels);
  sample_chain(y, point.y_levels);

  const Spectrum& y_rho = delta > 0 ? point.y_levels.front() : y;
  const Spectrum& x_rho = delta > 0 ? point.x_levels.front() : x;
  const Spectrum* prev = &y_rho;
  double top_cap = x_rho[0];
  for (int u = 1; u <= rho - 1; ++u) {
    Spectrum& z = point.mixed_levels[static_cast<size_t>(u - 1)];
    for (int i = 0; i < rho; ++i) {
      double lo = (*prev)[i];
      double hi = i == 0 ? top_cap : (*prev)[i - 1];
      if (hi <= lo) {
        weight = 0.0;
        hi = lo;
      }
      weight *= hi - lo;
      z[i] = rng.uniform(lo, hi);
    }
    prev = &z;
  }
  return weight;
}

}  // namespace

DoubleConePoint sample_cone_envelope(const ModelParams& params,
                                     const Spectrum& x, const Spectrum& y,
                                     Rng& rng, double& weight) {
  DoubleConePoint point;
  shape_point(params, point);
  weight = fill_envelope(params, x, y, rng, point);
  return point;
}

McEstimate mc_volume(const ModelParams& params, const Spectrum& x,
                     const Spectrum& y, long samples, Rng& rng) {
  if (samples <= 0) throw std::invalid_argument("mc_volume: samples must be > 0");
  if (static_cast<int>(x.size()) != params.n ||
      static_cast<int>(y.size()) != params.n)
    throw std::invalid_argument("mc_volume: boundary vectors must have n entries");
  double sum = 0.0, sumsq = 0.0;
  DoubleConePoint point;
  shape_point(params, point);
  for (long s = 0; s < samples; ++s) {
    double w = fill_envelope(params, x, y, rng, point);
    double v = (w > 0.0 && in_double_cone(point, x, y)) ? w : 0.0;
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / static_cast<double>(samples);
  double var = sumsq / static_cast<double>(samples) - mean * mean;
  McEstimate est;
  est.value = mean;
  est.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
  return est;
}

double single_cone_volume(const Spectrum& x) {
  double v = vandermonde(x);
  for (int k = 1; k < static_cast<int>(x.size()); ++k) v /= factorial(k);
  return v;
}

std::pair<Spectrum, Spectrum> random_feasible_pair(const ModelParams& params,
                                                   Rng& rng, double min_volume) {
  for (int attempt = 0; attempt < 2000; ++attempt) {
    Spectrum x(params.n), y(params.n);
    for (int i = 0; i < params.n; ++i) {
      x[i] = rng.uniform(-1.5, 1.5);
      y[i] = x[i] - rng.uniform(0.05, 1.5);
    }
    x = sorted_decreasing(x);
    y = sorted_decreasing(y);
    if (two_level_gamma(params, x, y) > min_volume) return {x, y};
  }
  throw std::runtime_error("random_feasible_pair: no feasible pair found");
}

namespace {

// Gauss-Legendre points of [a, b] split at the interior breakpoints.
struct AxisGrid {
  std::vector<double> points;
  std::vector<double> weights;
};

AxisGrid axis_grid(double a, double b, const std::vector<double>& breaks,
                   int order) {
  AxisGrid g;
  std::vector<double> cuts{a};
  for (double t : breaks)
    if (t > a && t < b) cuts.push_back(t);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  const auto& gl = gauss_legendre(order);
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    double half = 0.5 * (cuts[k + 1] - cuts[k]);
    if (half <= 0.0) continue;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      g.points.push_back(mid + half * gl.nodes[i]);
      g.weights.push_back(half * gl.weights[i]);
    }
  }
  return g;
}

}  // namespace

double induction_step_check(const ModelParams& params, const Spectrum& z,
                            const Spectrum& w, int order) {
  int n = params.n;
  if (n > 3) throw std::invalid_argument("induction_step_check: n > 3 is too costly");
  if (static_cast<int>(z.size()) != n + 1 || static_cast<int>(w.size()) != n + 1)
    throw std::invalid_argument("induction_step_check: need (n+1)-vectors");
  // Work in increasing coordinates; inputs are stored decreasing.
  std::vector<double> zi(z.data(), z.data() + z.size());
  std::vector<double> wi(w.data(), w.data() + w.size());
  std::reverse(zi.begin(), zi.end());
  std::reverse(wi.begin(), wi.end());

  // Outer grids over the x-boxes, split where the y-integrated volume has
  // kinks (x_k crossing a w-value).
  std::vector<AxisGrid> xg(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    xg[static_cast<size_t>(i)] = axis_grid(zi[static_cast<size_t>(i)],
                                           zi[static_cast<size_t>(i + 1)], wi, order);

  double total = 0.0;
  std::vector<size_t> ix(static_cast<size_t>(n), 0);
  Spectrum xvec(n);
  while (true) {
    double wx = 1.0;
    for (int i = 0; i < n; ++i) {
      const auto& g = xg[static_cast<size_t>(i)];
      wx *= g.weights[ix[static_cast<size_t>(i)]];
      xvec[n - 1 - i] = g.points[ix[static_cast<size_t>(i)]];
    }
    if (wx != 0.0) {
      GammaEvaluator gamma(params, xvec);
      std::vector<double> xbreaks(xvec.data(), xvec.data() + n);
      std::vector<AxisGrid> yg(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j)
        yg[static_cast<size_t>(j)] =
            axis_grid(wi[static_cast<size_t>(j)], wi[static_cast<size_t>(j + 1)],
                      xbreaks, order);
      std::vector<size_t> iy(static_cast<size_t>(n), 0);
      Spectrum yvec(n);
      double inner = 0.0;
      while (true) {
        double wy = 1.0;
        for (int j = 0; j < n; ++j) {
          const auto& g = yg[static_cast<size_t>(j)];
          wy *= g.weights[iy[static_cast<size_t>(j)]];
          yvec[n - 1 - j] = g.points[iy[static_cast<size_t>(j)]];
        }
        inner += wy * gamma(yvec);
        int axis = 0;
        for (; axis < n; ++axis) {
          if (++iy[static_cast<size_t>(axis)] <
              yg[static_cast<size_t>(axis)].points.size())
            break;
          iy[static_cast<size_t>(axis)] = 0;
        }
        if (axis == n) break;
      }
      total += wx * inner;
    }
    int axis = 0;
    for (; axis < n; ++axis) {
      if (++ix[static_cast<size_t>(axis)] <
          xg[static_cast<size_t>(axis)].points.size())
        break;
      ix[static_cast<size_t>(axis)] = 0;
    }
    if (axis == n) break;
  }

  ModelParams up(params.n + 1, params.rho, params.beta);
  double target = two_level_gamma(up, z, w);
  return std::abs(total - target) / std::max(1.0, std::abs(target));
}

long long lattice_path_count(const std::vector<long long>& x,
                             const std::vector<long long>& y, int rho) {
  size_t k = x.size();
  if (y.size() != k) throw std::invalid_argument("lattice_path_count: size mismatch");
  if (k == 0) return 1;
  auto binom = [](long long top, int r) -> __int128 {
    if (top < r || r < 0) return 0;
    __int128 v = 1;
    for (int i = 1; i <= r; ++i) v = v * (top - r + i) / i;
    return v;
  };
  // Bareiss fraction-free elimination keeps the determinant exact.
  std::vector<std::vector<__int128>> m(k, std::vector<__int128>(k, 0));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      if (x[i] >= y[j]) m[i][j] = binom(x[i] - y[j] + rho - 1, rho - 1);
  __int128 prev = 1;
  int sign = 1;
  for (size_t p = 0; p < k; ++p) {
    if (m[p][p] == 0) {
      size_t q = p + 1;
      while (q < k && m[q][p] == 0) ++q;
      if (q == k) return 0;
      std::swap(m[p], m[q]);
      sign = -sign;
    }
    for (size_t i = p + 1; i < k; ++i)
      for (size_t j = p + 1; j < k; ++j)
        m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / prev;
    prev = m[p][p];
  }
  __int128 det = sign * m[k - 1][k - 1];
  return static_cast<long long>(det);
}

}  // namespace tacnode
