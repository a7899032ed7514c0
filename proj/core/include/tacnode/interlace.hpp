#pragma once

#include <vector>

#include "tacnode/params.hpp"
#include "tacnode/vander.hpp"

namespace tacnode {

// v (size k+1) interlaces w (size k), all weak and in decreasing storage:
// v_1 >= w_1 >= v_2 >= ... >= w_k >= v_{k+1}.
bool interlaces(const Spectrum& longer, const Spectrum& shorter,
                double tol = 0.0);

// Mixed-level order on equal-size vectors: z <= z' when they intertwine
// with z'_i >= z_i >= z'_{i+1} (and hence z_last <= z'_last).
bool mixed_leq(const Spectrum& z, const Spectrum& zp, double tol = 0.0);

// A point of the double cone attached to boundary data (x at level n,
// y at level rho - n): the two outer interlacing chains plus the chain of
// rho-vectors crossing the overlap. Coordinate count is n(n-1).
struct DoubleConePoint {
  ModelParams params;
  std::vector<Spectrum> x_levels;      // x^(rho), ..., x^(n-1), ascending level
  std::vector<Spectrum> y_levels;      // y^(rho), ..., y^(n-1)
  std::vector<Spectrum> mixed_levels;  // z^(1), ..., z^(rho-1), each size rho

  int coordinate_count() const;
};

bool in_double_cone(const DoubleConePoint& point, const Spectrum& x,
                    const Spectrum& y);

}  // namespace tacnode
