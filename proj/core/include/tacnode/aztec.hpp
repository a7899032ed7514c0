#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tacnode/kernels.hpp"
#include "tacnode/rng.hpp"

namespace tacnode::aztec {

// Unit square [a, a+1] x [b, b+1].
struct Cell {
  int a = 0;
  int b = 0;
  friend bool operator==(const Cell& l, const Cell& r) {
    return l.a == r.a && l.b == r.b;
  }
};

// Named by the position of the white square relative to the black one.
enum class DominoClass { north, south, east, west };

struct Domino {
  Cell black, white;
  bool vertical = false;
  DominoClass cls = DominoClass::north;
};

// Union of two size-n Aztec diamonds with opposite checkerboard
// orientation, the second shifted so that exactly rho diagonal lines of
// black squares are shared. Black lines are indexed s = 0..2n-rho along
// the diagonal d = a - b; positions along a line use eta = a + b.
class DiamondRegion {
 public:
  DiamondRegion(int n, int rho);

  int n() const { return n_; }
  int rho() const { return rho_; }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  const std::vector<Cell>& cells() const { return cells_; }

  bool contains(const Cell& c) const;
  bool is_black(const Cell& c) const;
  int cell_index(const Cell& c) const;  // -1 when outside

  int line_count() const { return 2 * n_ - rho_ + 1; }
  int line_of(const Cell& c) const;     // s index of a black cell
  int level_of_line(int s) const { return n_ - s; }
  const std::vector<Cell>& black_line(int s) const;

  // Expected (blue, red) dot counts on line s for every tiling.
  std::pair<int, int> expected_dots(int s) const;

  // 2x2 blocks fully inside the region (lower-left corners), the flip
  // moves of the tiling Markov chain.
  const std::vector<Cell>& flip_blocks() const { return blocks_; }

 private:
  int n_, rho_, parity_, dmin_ = 0;
  int amin_, bmin_, width_, height_;
  std::vector<Cell> cells_;
  std::vector<int> grid_;  // cell index or -1
  std::vector<std::vector<Cell>> lines_;
  std::vector<Cell> blocks_;
};

struct TilingState {
  const DiamondRegion* region = nullptr;
  std::vector<Domino> dominoes;
  std::vector<int> cover;  // cell index -> domino index
  int vertical_count = 0;  // weight exponent

  double weight(double a) const;
};

// Any perfect matching of the region (deterministic), via augmenting paths.
TilingState initial_tiling(const DiamondRegion& region);

// Cells of a single size-n Aztec diamond centered at the origin.
std::vector<Cell> single_diamond_cells(int n);

// Backtracking count of perfect domino covers of an arbitrary cell set,
// weighted a^{#vertical}; used for degenerate runs and cross-checks.
double cell_tiling_weight_sum(const std::vector<Cell>& cells, double a);
long long count_cell_tilings(const std::vector<Cell>& cells);

// Exhaustive backtracking over perfect covers; weight = a^{#vertical}.
// Guarded to regions of at most 60 cells.
void enumerate_tilings(const DiamondRegion& region, double a,
                       const std::function<void(const TilingState&, double)>& visit);

// Partition function sum over enumerate_tilings.
double partition_function(const DiamondRegion& region, double a);

// Glauber dynamics on 2x2 flips, Metropolis-weighted by a^{change in
// vertical count}; steps = 0 returns the deterministic initial tiling.
TilingState sample_tiling_mcmc(const DiamondRegion& region, double a,
                               long steps, Rng& rng);

// One proposed flip applied in place; returns whether the move was accepted.
bool mcmc_step(TilingState& t, double a, Rng& rng);

struct DotConfiguration {
  std::vector<std::vector<int>> eta;   // per line, ascending
  std::vector<std::vector<bool>> red;  // parallel to eta
};

// Canonical identifier of a tiling: the class of every black cell in the
// region's cell order, independent of the domino list layout.
std::string tiling_signature(const TilingState& t);

// Dot rule: a black square carries a dot when its domino points East or
// South; colors follow the positional split of the count table.
// Throws when any line violates the count table.
DotConfiguration extract_dots(const TilingState& t);

// Interlacing of consecutive lines in the eta coordinate.
bool dots_interlace(const DiamondRegion& region, const DotConfiguration& d);

struct UniformityReport {
  long tilings = 0;
  long boundary_groups = 0;
  bool uniform = true;
  // per group: (number of interior configurations, tiling multiplicity)
  std::vector<std::pair<long, long>> groups;
};

// At a = 1, conditioned on the dots of the two extreme lines, every
// interior dot configuration must be carried by the same number of tilings.
UniformityReport verify_uniformity(const DiamondRegion& region);

// Lattice-to-continuum scaling map at t = floor(n/2).
double rescale_y(int eta, int t);
int rescale_u_from_xi(int xi, int t, int eps);
std::vector<LevelPoint> rescale_particles(const DotConfiguration& d, int n);

// Standalone SVG picture, deterministic element order.
std::string tiling_svg(const TilingState& t);

}  // namespace tacnode::aztec
