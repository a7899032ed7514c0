#pragma once

#include <functional>
#include <vector>

namespace tacnode {

struct GaussLegendre {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

// Nodes/weights for the given order (cached internally, thread-safe).
const GaussLegendre& gauss_legendre(int order);

// Integral over [a, b] with a single Gauss-Legendre panel.
double integrate_panel(const std::function<double(double)>& f, double a,
                       double b, int order);

// Composite rule: [a, b] split into `panels` equal pieces.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int order, int panels = 1);

// Composite rule with interior breakpoints: integrates on each subinterval
// of the sorted breakpoint partition of [a, b].
double integrate_with_breaks(const std::function<double(double)>& f, double a,
                             double b, std::vector<double> breaks, int order,
                             int panels_per_piece = 1);

// Panel-doubling integration of a smooth Gaussian-decaying integrand over
// [-halfwidth, halfwidth]; refines until successive composite rules agree
// within tol.
double integrate_line(const std::function<double(double)>& f, double halfwidth,
                      double tol);

}  // namespace tacnode
