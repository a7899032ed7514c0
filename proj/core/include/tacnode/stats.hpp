#pragma once

#include <functional>
#include <vector>

namespace tacnode {

// Regularized upper incomplete gamma Q(a, x); Q(k/2, x/2) is the chi-square
// tail probability.
double gamma_q(double a, double x);

// p-value of a chi-square statistic with the given degrees of freedom.
double chi2_pvalue(double statistic, int dof);

// Pearson statistic for observed counts against expected counts; bins with
// expected < min_expected are pooled into their neighbor. Returns the
// p-value and reports the effective dof.
double chi2_test(const std::vector<long>& observed,
                 const std::vector<double>& expected, int& dof_out,
                 double min_expected = 5.0);

// Two-sided Kolmogorov-Smirnov distance between sorted samples and a CDF.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

// Thread budget: min(hardware, LAB_THREADS env when set).
int lab_thread_count();

// Static split of [0, jobs) over worker threads; fn(job_index).
void parallel_for_jobs(long jobs, const std::function<void(long)>& fn,
                       int threads = 0);

}  // namespace tacnode
