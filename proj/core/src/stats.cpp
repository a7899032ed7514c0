#include "tacnode/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace tacnode {

namespace {

// Series and continued-fraction halves of the regularized incomplete gamma.
double gamma_p_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi2_pvalue(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * statistic);
}

double chi2_test(const std::vector<long>& observed,
                 const std::vector<double>& expected, int& dof_out,
                 double min_expected) {
  if (observed.size() != expected.size())
    throw std::invalid_argument("chi2_test: size mismatch");
  // Pool low-expectation bins left to right.
  std::vector<double> exp_pooled;
  std::vector<long> obs_pooled;
  double e_acc = 0.0;
  long o_acc = 0;
  for (size_t i = 0; i < observed.size(); ++i) {
    e_acc += expected[i];
    o_acc += observed[i];
    if (e_acc >= min_expected) {
      exp_pooled.push_back(e_acc);
      obs_pooled.push_back(o_acc);
      e_acc = 0.0;
      o_acc = 0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0) {
    if (exp_pooled.empty()) {
      exp_pooled.push_back(e_acc);
      obs_pooled.push_back(o_acc);
    } else {
      exp_pooled.back() += e_acc;
      obs_pooled.back() += o_acc;
    }
  }
  double stat = 0.0;
  for (size_t i = 0; i < exp_pooled.size(); ++i) {
    if (exp_pooled[i] <= 0.0) continue;
    double d = static_cast<double>(obs_pooled[i]) - exp_pooled[i];
    stat += d * d / exp_pooled[i];
  }
  dof_out = static_cast<int>(exp_pooled.size()) - 1;
  return chi2_pvalue(stat, dof_out);
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::sort(samples.begin(), samples.end());
  double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

int lab_thread_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("LAB_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

void parallel_for_jobs(long jobs, const std::function<void(long)>& fn,
                       int threads) {
  if (threads <= 0) threads = lab_thread_count();
  threads = static_cast<int>(std::min<long>(threads, jobs));
  if (threads <= 1) {
    for (long j = 0; j < jobs; ++j) fn(j);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([=]() {
      for (long j = t; j < jobs; j += threads) fn(j);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace tacnode
