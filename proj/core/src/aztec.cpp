#include "tacnode/aztec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tacnode/interlace.hpp"

namespace tacnode::aztec {

namespace {

bool in_single_diamond(int n, int a, int b) {
  return std::abs(2 * a + 1) + std::abs(2 * b + 1) <= 2 * n;
}

DominoClass classify(const Cell& black, const Cell& white) {
  int da = white.a - black.a, db = white.b - black.b;
  if (da == 0 && db == 1) return DominoClass::north;
  if (da == 0 && db == -1) return DominoClass::south;
  if (da == 1 && db == 0) return DominoClass::east;
  if (da == -1 && db == 0) return DominoClass::west;
  throw std::logic_error("classify: cells are not adjacent");
}

}  // namespace

DiamondRegion::DiamondRegion(int n, int rho) : n_(n), rho_(rho) {
  if (rho < 1 || rho > n)
    throw std::invalid_argument("DiamondRegion: need 1 <= rho <= n");
  parity_ = ((n % 2) + 2) % 2;
  dmin_ = -n;
  int pa = n - rho, pb = rho - n - 1;  // translation of the second diamond

  std::vector<Cell> found;
  for (int a = -n; a <= n - 1 + pa; ++a)
    for (int b = -n + pb; b <= n - 1; ++b)
      if (in_single_diamond(n, a, b) || in_single_diamond(n, a - pa, b - pb))
        found.push_back({a, b});
  std::sort(found.begin(), found.end(), [](const Cell& l, const Cell& r) {
    return l.b != r.b ? l.b < r.b : l.a < r.a;
  });
  cells_ = std::move(found);

  amin_ = -n;
  bmin_ = -n + pb;
  width_ = (n - 1 + pa) - amin_ + 1;
  height_ = (n - 1) - bmin_ + 1;
  grid_.assign(static_cast<size_t>(width_ * height_), -1);
  for (size_t i = 0; i < cells_.size(); ++i) {
    const Cell& c = cells_[i];
    grid_[static_cast<size_t>((c.b - bmin_) * width_ + (c.a - amin_))] =
        static_cast<int>(i);
  }

  lines_.assign(static_cast<size_t>(line_count()), {});
  int blacks = 0;
  for (const Cell& c : cells_) {
    if (!is_black(c)) continue;
    ++blacks;
    int s = line_of(c);
    if (s < 0 || s >= line_count())
      throw std::logic_error("DiamondRegion: black line out of range");
    lines_[static_cast<size_t>(s)].push_back(c);
  }
  if (2 * blacks != cell_count())
    throw std::logic_error("DiamondRegion: black/white imbalance");
  for (auto& line : lines_) {
    std::sort(line.begin(), line.end(),
              [](const Cell& l, const Cell& r) { return l.a + l.b < r.a + r.b; });
    if (line.empty()) throw std::logic_error("DiamondRegion: empty black line");
  }

  for (const Cell& c : cells_) {
    Cell c10{c.a + 1, c.b}, c01{c.a, c.b + 1}, c11{c.a + 1, c.b + 1};
    if (contains(c10) && contains(c01) && contains(c11)) blocks_.push_back(c);
  }
}

bool DiamondRegion::contains(const Cell& c) const { return cell_index(c) >= 0; }

bool DiamondRegion::is_black(const Cell& c) const {
  return ((c.a + c.b) % 2 + 2) % 2 == parity_;
}

int DiamondRegion::cell_index(const Cell& c) const {
  if (c.a < amin_ || c.a >= amin_ + width_ || c.b < bmin_ || c.b >= bmin_ + height_)
    return -1;
  return grid_[static_cast<size_t>((c.b - bmin_) * width_ + (c.a - amin_))];
}

int DiamondRegion::line_of(const Cell& c) const {
  if (!is_black(c)) throw std::invalid_argument("line_of: cell is not black");
  return (c.a - c.b - dmin_) / 2;
}

const std::vector<Cell>& DiamondRegion::black_line(int s) const {
  return lines_.at(static_cast<size_t>(s));
}

std::pair<int, int> DiamondRegion::expected_dots(int s) const {
  if (s < 0 || s >= line_count())
    throw std::invalid_argument("expected_dots: bad line index");
  if (s < n_ - rho_) return {n_ - s, 0};
  if (s <= n_) return {n_ - s, rho_ + s - n_};
  return {0, rho_ + s - n_};
}

double TilingState::weight(double a) const {
  return std::pow(a, vertical_count);
}

namespace {

TilingState state_from_partner(const DiamondRegion& region,
                               const std::vector<int>& partner) {
  TilingState t;
  t.region = &region;
  t.cover.assign(static_cast<size_t>(region.cell_count()), -1);
  const auto& cells = region.cells();
  for (int i = 0; i < region.cell_count(); ++i) {
    int j = partner[static_cast<size_t>(i)];
    if (j < 0 || j < i) continue;
    const Cell& ca = cells[static_cast<size_t>(i)];
    const Cell& cb = cells[static_cast<size_t>(j)];
    Domino d;
    if (region.is_black(ca)) {
      d.black = ca;
      d.white = cb;
    } else {
      d.black = cb;
      d.white = ca;
    }
    d.vertical = ca.a == cb.a;
    d.cls = classify(d.black, d.white);
    int id = static_cast<int>(t.dominoes.size());
    t.dominoes.push_back(d);
    t.cover[static_cast<size_t>(i)] = id;
    t.cover[static_cast<size_t>(j)] = id;
    if (d.vertical) ++t.vertical_count;
  }
  return t;
}

}  // namespace

TilingState initial_tiling(const DiamondRegion& region) {
  // Kuhn augmenting-path matching between black and white cells.
  const auto& cells = region.cells();
  std::vector<int> blacks, whites;
  std::vector<int> side_index(cells.size(), -1);
  for (int i = 0; i < region.cell_count(); ++i) {
    if (region.is_black(cells[static_cast<size_t>(i)])) {
      side_index[static_cast<size_t>(i)] = static_cast<int>(blacks.size());
      blacks.push_back(i);
    } else {
      side_index[static_cast<size_t>(i)] = static_cast<int>(whites.size());
      whites.push_back(i);
    }
  }
  std::vector<std::vector<int>> adj(blacks.size());
  for (size_t bi = 0; bi < blacks.size(); ++bi) {
    const Cell& c = cells[static_cast<size_t>(blacks[bi])];
    for (const Cell& w : {Cell{c.a + 1, c.b}, Cell{c.a - 1, c.b},
                          Cell{c.a, c.b + 1}, Cell{c.a, c.b - 1}}) {
      int idx = region.cell_index(w);
      if (idx >= 0) adj[bi].push_back(side_index[static_cast<size_t>(idx)]);
    }
  }
  std::vector<int> match_w(whites.size(), -1), match_b(blacks.size(), -1);
  std::vector<char> seen;
  std::function<bool(int)> try_match = [&](int bi) {
    for (int wi : adj[static_cast<size_t>(bi)]) {
      if (seen[static_cast<size_t>(wi)]) continue;
      seen[static_cast<size_t>(wi)] = 1;
      if (match_w[static_cast<size_t>(wi)] < 0 ||
          try_match(match_w[static_cast<size_t>(wi)])) {
        match_w[static_cast<size_t>(wi)] = bi;
        match_b[static_cast<size_t>(bi)] = wi;
        return true;
      }
    }
    return false;
  };
  for (size_t bi = 0; bi < blacks.size(); ++bi) {
    seen.assign(whites.size(), 0);
    if (!try_match(static_cast<int>(bi)))
      throw std::runtime_error("initial_tiling: region is not tileable");
  }
  std::vector<int> partner(cells.size(), -1);
  for (size_t bi = 0; bi < blacks.size(); ++bi) {
    int i = blacks[bi], j = whites[static_cast<size_t>(match_b[bi])];
    partner[static_cast<size_t>(i)] = j;
    partner[static_cast<size_t>(j)] = i;
  }
  return state_from_partner(region, partner);
}

std::vector<Cell> single_diamond_cells(int n) {
  std::vector<Cell> cells;
  for (int a = -n; a <= n - 1; ++a)
    for (int b = -n; b <= n - 1; ++b)
      if (in_single_diamond(n, a, b)) cells.push_back({a, b});
  return cells;
}

double cell_tiling_weight_sum(const std::vector<Cell>& cells, double a) {
  if (cells.size() > 60)
    throw std::invalid_argument("cell_tiling_weight_sum: more than 60 cells");
  std::vector<Cell> sorted_cells = cells;
  std::sort(sorted_cells.begin(), sorted_cells.end(),
            [](const Cell& l, const Cell& r) {
              return l.b != r.b ? l.b < r.b : l.a < r.a;
            });
  auto index_of = [&](const Cell& c) -> int {
    auto it = std::lower_bound(sorted_cells.begin(), sorted_cells.end(), c,
                               [](const Cell& l, const Cell& r) {
                                 return l.b != r.b ? l.b < r.b : l.a < r.a;
                               });
    if (it == sorted_cells.end() || !(*it == c)) return -1;
    return static_cast<int>(it - sorted_cells.begin());
  };
  int count = static_cast<int>(sorted_cells.size());
  std::vector<char> used(static_cast<size_t>(count), 0);
  double total = 0.0;
  std::function<void(int, int)> rec = [&](int from, int verticals) {
    int i = from;
    while (i < count && used[static_cast<size_t>(i)]) ++i;
    if (i == count) {
      total += std::pow(a, verticals);
      return;
    }
    const Cell& c = sorted_cells[static_cast<size_t>(i)];
    for (const Cell& nb : {Cell{c.a + 1, c.b}, Cell{c.a, c.b + 1}}) {
      int j = index_of(nb);
      if (j < 0 || used[static_cast<size_t>(j)]) continue;
      used[static_cast<size_t>(i)] = used[static_cast<size_t>(j)] = 1;
      rec(i + 1, verticals + (nb.a == c.a ? 1 : 0));
      used[static_cast<size_t>(i)] = used[static_cast<size_t>(j)] = 0;
    }
  };
  rec(0, 0);
  return total;
}

long long count_cell_tilings(const std::vector<Cell>& cells) {
  return static_cast<long long>(cell_tiling_weight_sum(cells, 1.0) + 0.5);
}

void enumerate_tilings(const DiamondRegion& region, double a,
                       const std::function<void(const TilingState&, double)>& visit) {
  if (region.cell_count() > 60)
    throw std::invalid_argument("enumerate_tilings: region exceeds 60 cells");
  const auto& cells = region.cells();
  int count = region.cell_count();
  std::vector<int> partner(static_cast<size_t>(count), -1);
  std::function<void(int)> rec = [&](int from) {
    int i = from;
    while (i < count && partner[static_cast<size_t>(i)] >= 0) ++i;
    if (i == count) {
      TilingState t = state_from_partner(region, partner);
      visit(t, t.weight(a));
      return;
    }
    const Cell& c = cells[static_cast<size_t>(i)];
    // Scan order is (b, a)-ascending, so the free cell can only pair to the
    // right or above.
    for (const Cell& nb : {Cell{c.a + 1, c.b}, Cell{c.a, c.b + 1}}) {
      int j = region.cell_index(nb);
      if (j < 0 || partner[static_cast<size_t>(j)] >= 0) continue;
      partner[static_cast<size_t>(i)] = j;
      partner[static_cast<size_t>(j)] = i;
      rec(i + 1);
      partner[static_cast<size_t>(i)] = -1;
      partner[static_cast<size_t>(j)] = -1;
    }
  };
  rec(0);
}

double partition_function(const DiamondRegion& region, double a) {
  double z = 0.0;
  enumerate_tilings(region, a,
                    [&](const TilingState&, double w) { z += w; });
  return z;
}

bool mcmc_step(TilingState& t, double a, Rng& rng) {
  const DiamondRegion& region = *t.region;
  const auto& blocks = region.flip_blocks();
  if (blocks.empty()) return false;
  const Cell c00 = blocks[static_cast<size_t>(
      rng.uniform_int(static_cast<int>(blocks.size())))];
  Cell c10{c00.a + 1, c00.b}, c01{c00.a, c00.b + 1}, c11{c00.a + 1, c00.b + 1};
  int i00 = region.cell_index(c00), i10 = region.cell_index(c10);
  int i01 = region.cell_index(c01);
  int d_low = t.cover[static_cast<size_t>(i00)];
  int d_high = t.cover[static_cast<size_t>(i01)];
  auto covers = [&](int dom, const Cell& x, const Cell& y) {
    const Domino& d = t.dominoes[static_cast<size_t>(dom)];
    return (d.black == x && d.white == y) || (d.black == y && d.white == x);
  };
  bool horizontal_pair = covers(d_low, c00, c10) &&
                         t.cover[static_cast<size_t>(i01)] != d_low &&
                         covers(d_high, c01, c11);
  int d_left = t.cover[static_cast<size_t>(i00)];
  int d_right = t.cover[static_cast<size_t>(i10)];
  bool vertical_pair = covers(d_left, c00, c01) && d_right != d_left &&
                       covers(d_right, c10, c11);
  if (!horizontal_pair && !vertical_pair) return false;
  double ratio = horizontal_pair ? a * a : 1.0 / (a * a);
  if (ratio < 1.0 && rng.uniform() >= ratio) return false;

  auto set_domino = [&](int id, const Cell& u, const Cell& v) {
    Domino& d = t.dominoes[static_cast<size_t>(id)];
    if (region.is_black(u)) {
      d.black = u;
      d.white = v;
    } else {
      d.black = v;
      d.white = u;
    }
    d.vertical = u.a == v.a;
    d.cls = classify(d.black, d.white);
    t.cover[static_cast<size_t>(region.cell_index(u))] = id;
    t.cover[static_cast<size_t>(region.cell_index(v))] = id;
  };
  if (horizontal_pair) {
    set_domino(d_low, c00, c01);
    set_domino(d_high, c10, c11);
    t.vertical_count += 2;
  } else {
    set_domino(d_left, c00, c10);
    set_domino(d_right, c01, c11);
    t.vertical_count -= 2;
  }
  return true;
}

TilingState sample_tiling_mcmc(const DiamondRegion& region, double a,
                               long steps, Rng& rng) {
  TilingState t = initial_tiling(region);
  for (long s = 0; s < steps; ++s) mcmc_step(t, a, rng);
  return t;
}

std::string tiling_signature(const TilingState& t) {
  const DiamondRegion& region = *t.region;
  std::string sig;
  sig.reserve(static_cast<size_t>(region.cell_count() / 2));
  for (int i = 0; i < region.cell_count(); ++i) {
    const Cell& c = region.cells()[static_cast<size_t>(i)];
    if (!region.is_black(c)) continue;
    const Domino& d =
        t.dominoes[static_cast<size_t>(t.cover[static_cast<size_t>(i)])];
    sig += static_cast<char>('N' + static_cast<int>(d.cls));
  }
  return sig;
}

DotConfiguration extract_dots(const TilingState& t) {
  const DiamondRegion& region = *t.region;
  DotConfiguration d;
  d.eta.resize(static_cast<size_t>(region.line_count()));
  d.red.resize(static_cast<size_t>(region.line_count()));
  for (int s = 0; s < region.line_count(); ++s) {
    auto& etas = d.eta[static_cast<size_t>(s)];
    for (const Cell& c : region.black_line(s)) {
      const Domino& dom =
          t.dominoes[static_cast<size_t>(t.cover[static_cast<size_t>(
              region.cell_index(c))])];
      if (dom.cls == DominoClass::east || dom.cls == DominoClass::south)
        etas.push_back(c.a + c.b);
    }
    auto [blue, red] = region.expected_dots(s);
    if (static_cast<int>(etas.size()) != blue + red)
      throw std::runtime_error("extract_dots: dot count table violated");
    auto& reds = d.red[static_cast<size_t>(s)];
    reds.assign(etas.size(), false);
    for (int k = 0; k < red; ++k) reds[static_cast<size_t>(k)] = true;
  }
  return d;
}

bool dots_interlace(const DiamondRegion& region, const DotConfiguration& d) {
  auto spectrum_of = [&](int s) {
    const auto& etas = d.eta[static_cast<size_t>(s)];
    Spectrum v(static_cast<int>(etas.size()));
    for (size_t k = 0; k < etas.size(); ++k)
      v[static_cast<int>(k)] = static_cast<double>(etas[etas.size() - 1 - k]);
    return v;
  };
  for (int s = 0; s + 1 < region.line_count(); ++s) {
    int u = region.level_of_line(s);  // line s is z^(u), line s+1 is z^(u-1)
    Spectrum upper = spectrum_of(s), lower = spectrum_of(s + 1);
    bool ok;
    if (u - 1 >= region.rho()) {
      ok = interlaces(upper, lower);
    } else if (u >= 1) {
      ok = mixed_leq(lower, upper);
    } else {
      ok = interlaces(lower, upper);
    }
    if (!ok) return false;
  }
  return true;
}

UniformityReport verify_uniformity(const DiamondRegion& region) {
  UniformityReport report;
  auto key_of = [](const std::vector<int>& etas) {
    std::string k;
    for (int e : etas) {
      k += std::to_string(e);
      k += ',';
    }
    k += ';';
    return k;
  };
  std::map<std::string, std::map<std::string, long>> groups;
  int last = region.line_count() - 1;
  enumerate_tilings(region, 1.0, [&](const TilingState& t, double) {
    ++report.tilings;
    DotConfiguration d = extract_dots(t);
    std::string boundary = key_of(d.eta.front()) + key_of(d.eta[static_cast<size_t>(last)]);
    std::string interior;
    for (int s = 1; s < last; ++s) interior += key_of(d.eta[static_cast<size_t>(s)]);
    ++groups[boundary][interior];
  });
  report.boundary_groups = static_cast<long>(groups.size());
  for (const auto& [boundary, interiors] : groups) {
    long mult = interiors.begin()->second;
    for (const auto& [interior, count] : interiors)
      if (count != mult) report.uniform = false;
    report.groups.emplace_back(static_cast<long>(interiors.size()), mult);
  }
  return report;
}

double rescale_y(int eta, int t) {
  return (eta - 2.0 * t + 1.0) / (2.0 * std::sqrt(static_cast<double>(t)));
}

int rescale_u_from_xi(int xi, int t, int eps) { return (4 * t + 2 * eps - xi) / 2; }

std::vector<LevelPoint> rescale_particles(const DotConfiguration& d, int n) {
  int t = n / 2;
  double center = -0.5;  // midpoint of the two diamond centers in eta
  std::vector<LevelPoint> out;
  for (size_t s = 0; s < d.eta.size(); ++s) {
    int u = n - static_cast<int>(s);
    for (int eta : d.eta[s]) {
      double y = (static_cast<double>(eta) - center) /
                 (2.0 * std::sqrt(static_cast<double>(t)));
      out.push_back({u, y});
    }
  }
  return out;
}

std::string tiling_svg(const TilingState& t) {
  const DiamondRegion& region = *t.region;
  int amin = 1 << 30, amax = -(1 << 30), bmin = 1 << 30, bmax = -(1 << 30);
  for (const Cell& c : region.cells()) {
    amin = std::min(amin, c.a);
    amax = std::max(amax, c.a);
    bmin = std::min(bmin, c.b);
    bmax = std::max(bmax, c.b);
  }
  const int unit = 20;
  int w = (amax - amin + 1) * unit, h = (bmax - bmin + 1) * unit;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h
      << "\">\n";
  auto px = [&](int a) { return (a - amin) * unit; };
  auto py = [&](int b) { return (bmax - b) * unit; };
  for (const Domino& d : t.dominoes) {
    int ax = std::min(d.black.a, d.white.a), bx = std::max(d.black.b, d.white.b);
    int rw = d.vertical ? unit : 2 * unit;
    int rh = d.vertical ? 2 * unit : unit;
    const char* fill = "#cccccc";
    switch (d.cls) {
      case DominoClass::north: fill = "#7fb2e5"; break;
      case DominoClass::south: fill = "#e58f7f"; break;
      case DominoClass::east: fill = "#8fca8f"; break;
      case DominoClass::west: fill = "#e5d47f"; break;
    }
    svg << "<rect x=\"" << px(ax) << "\" y=\"" << py(bx) << "\" width=\"" << rw
        << "\" height=\"" << rh << "\" fill=\"" << fill
        << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  }
  for (const Domino& d : t.dominoes) {
    if (d.cls != DominoClass::east && d.cls != DominoClass::south) continue;
    svg << "<circle cx=\"" << px(d.black.a) + unit / 2 << "\" cy=\""
        << py(d.black.b) + unit / 2 << "\" r=\"" << unit / 5
        << "\" fill=\"#111111\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace tacnode::aztec
