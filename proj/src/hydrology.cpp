#include "natcap/hydrology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <tuple>

#include "natcap/error.hpp"

namespace natcap {

namespace {

constexpr double kUnitPlotLength = 22.13;

// Valid cell on the raster edge or touching a nodata cell.
bool on_boundary(const Grid& g, int r, int c) {
  const auto& geom = g.geometry();
  for (int k = 0; k < 8; ++k) {
    const int nr = r + kD8RowOffset[k];
    const int nc = c + kD8ColOffset[k];
    if (!geom.contains(nr, nc) || !g.valid(nr, nc)) return true;
  }
  return false;
}

int direction_towards(int from_r, int from_c, int to_r, int to_c) {
  for (int k = 0; k < 8; ++k) {
    if (from_r + kD8RowOffset[k] == to_r && from_c + kD8ColOffset[k] == to_c) return k;
  }
  return -1;
}

}  // namespace

FlowDirGrid::FlowDirGrid(GridGeometry geometry, std::vector<FlowDir> dirs)
    : geometry_(geometry), dirs_(std::move(dirs)) {
  if (dirs_.size() != geometry_.size()) throw ParameterError("direction grid size does not match geometry");
}

std::optional<std::size_t> FlowDirGrid::downstream(std::size_t idx) const {
  const FlowDir d = dirs_[idx];
  if (d == FlowDir::Outlet || d == FlowDir::NoData) return std::nullopt;
  const int k = static_cast<int>(d);
  const int nr = geometry_.row_of(idx) + kD8RowOffset[k];
  const int nc = geometry_.col_of(idx) + kD8ColOffset[k];
  if (!geometry_.contains(nr, nc)) return std::nullopt;
  const std::size_t n = geometry_.index(nr, nc);
  if (dirs_[n] == FlowDir::NoData) return std::nullopt;
  return n;
}

std::vector<std::size_t> FlowDirGrid::topological_order() const {
  std::vector<int> indegree(dirs_.size(), 0);
  std::size_t valid = 0;
  for (std::size_t i = 0; i < dirs_.size(); ++i) {
    if (!this->valid(i)) continue;
    ++valid;
    if (auto d = downstream(i)) ++indegree[*d];
  }
  std::vector<std::size_t> order;
  order.reserve(valid);
  for (std::size_t i = 0; i < dirs_.size(); ++i) {
    if (this->valid(i) && indegree[i] == 0) order.push_back(i);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    if (auto d = downstream(order[head]); d && --indegree[*d] == 0) order.push_back(*d);
  }
  if (order.size() != valid) {
    throw RoutingError("cycle detected in flow directions (" + std::to_string(valid - order.size()) +
                       " cells never drain)");
  }
  return order;
}

Grid FlowDirGrid::to_grid() const {
  std::vector<double> values(dirs_.size());
  std::transform(dirs_.begin(), dirs_.end(), values.begin(), [](FlowDir d) { return static_cast<double>(d); });
  return Grid(geometry_, -1.0, std::move(values));
}

Grid fill_pits(const Grid& dem) {
  const auto& geom = dem.geometry();
  if (dem.valid_count() == 0) throw ParameterError("fill_pits: DEM has no valid cells");

  std::vector<double> filled(dem.values().begin(), dem.values().end());
  std::vector<char> closed(dem.size(), 0);

  // (elevation, insertion sequence, index); the sequence keeps equal-elevation pops deterministic.
  using Entry = std::tuple<double, std::uint64_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::uint64_t seq = 0;

  for (int r = 0; r < geom.nrows; ++r) {
    for (int c = 0; c < geom.ncols; ++c) {
      const std::size_t i = geom.index(r, c);
      if (!dem.valid(i) || !on_boundary(dem, r, c)) continue;
      open.emplace(filled[i], seq++, i);
      closed[i] = 1;
    }
  }

  while (!open.empty()) {
    const auto [z, _, i] = open.top();
    open.pop();
    const int r = geom.row_of(i);
    const int c = geom.col_of(i);
    for (int k = 0; k < 8; ++k) {
      const int nr = r + kD8RowOffset[k];
      const int nc = c + kD8ColOffset[k];
      if (!geom.contains(nr, nc)) continue;
      const std::size_t n = geom.index(nr, nc);
      if (closed[n] || !dem.valid(n)) continue;
      closed[n] = 1;
      filled[n] = std::max(filled[n], z);
      open.emplace(filled[n], seq++, n);
    }
  }
  return dem.with_values(std::move(filled));
}

FlowDirGrid flow_direction_d8(const Grid& dem) {
  const auto& geom = dem.geometry();
  const double diag = geom.cellsize * std::sqrt(2.0);
  std::vector<FlowDir> dirs(dem.size(), FlowDir::NoData);
  std::vector<char> resolved(dem.size(), 0);

  for (int r = 0; r < geom.nrows; ++r) {
    for (int c = 0; c < geom.ncols; ++c) {
      const std::size_t i = geom.index(r, c);
      if (!dem.valid(i)) continue;
      int best = -1;
      double best_slope = 0.0;
      for (int k = 0; k < 8; ++k) {
        const int nr = r + kD8RowOffset[k];
        const int nc = c + kD8ColOffset[k];
        if (!geom.contains(nr, nc) || !dem.valid(nr, nc)) continue;
        const double drop = dem[i] - dem(nr, nc);
        if (drop <= 0.0) continue;
        const double slope = drop / ((k % 2) ? diag : geom.cellsize);
        if (slope > best_slope) {
          best_slope = slope;
          best = k;
        }
      }
      if (best >= 0) {
        dirs[i] = static_cast<FlowDir>(best);
        resolved[i] = 1;
      } else if (on_boundary(dem, r, c)) {
        dirs[i] = FlowDir::Outlet;
        resolved[i] = 1;
      }
    }
  }

  // Cells on a flat drain toward the nearest equal-elevation cell that already drains.
  std::deque<std::size_t> frontier;
  for (std::size_t i = 0; i < dem.size(); ++i) {
    if (resolved[i]) frontier.push_back(i);
  }
  while (!frontier.empty()) {
    const std::size_t p = frontier.front();
    frontier.pop_front();
    const int r = geom.row_of(p);
    const int c = geom.col_of(p);
    for (int k = 0; k < 8; ++k) {
      const int nr = r + kD8RowOffset[k];
      const int nc = c + kD8ColOffset[k];
      if (!geom.contains(nr, nc)) continue;
      const std::size_t n = geom.index(nr, nc);
      if (resolved[n] || !dem.valid(n) || dem[n] != dem[p]) continue;
      dirs[n] = static_cast<FlowDir>(direction_towards(nr, nc, r, c));
      resolved[n] = 1;
      frontier.push_back(n);
    }
  }

  for (std::size_t i = 0; i < dem.size(); ++i) {
    if (dem.valid(i) && !resolved[i]) {
      throw RoutingError("unresolved flat at row " + std::to_string(geom.row_of(i)) + ", col " +
                         std::to_string(geom.col_of(i)) + " (DEM not pit-filled?)");
    }
  }
  return FlowDirGrid(geom, std::move(dirs));
}

Grid flow_accumulation(const FlowDirGrid& dirs) {
  constexpr double kNoData = -9999.0;
  const auto order = dirs.topological_order();
  std::vector<double> accum(dirs.size(), kNoData);
  for (std::size_t i : order) accum[i] = 1.0;
  for (std::size_t i : order) {
    if (auto d = dirs.downstream(i)) accum[*d] += accum[i];
  }
  return Grid(dirs.geometry(), kNoData, std::move(accum));
}

double slope_steepness_factor(double tan_slope) {
  const double s = tan_slope / std::sqrt(1.0 + tan_slope * tan_slope);
  return tan_slope < 0.09 ? 10.8 * s + 0.03 : 16.8 * s - 0.50;
}

double slope_length_factor(double contributing_length_m) {
  return std::sqrt(contributing_length_m / kUnitPlotLength);
}

Grid compute_ls(const Grid& dem, const Grid& accum, const LsOptions& options) {
  assert_aligned(dem, accum);
  if (!(options.max_slope_length_m > 0.0)) throw ParameterError("max_slope_length_m must be > 0");
  const auto& geom = dem.geometry();
  const double cs = geom.cellsize;

  // One-sided differences where a neighbour is off-grid or nodata.
  auto gradient = [&](int r, int c, int dr, int dc) {
    const bool lo = geom.contains(r - dr, c - dc) && dem.valid(r - dr, c - dc);
    const bool hi = geom.contains(r + dr, c + dc) && dem.valid(r + dr, c + dc);
    if (lo && hi) return (dem(r + dr, c + dc) - dem(r - dr, c - dc)) / (2.0 * cs);
    if (hi) return (dem(r + dr, c + dc) - dem(r, c)) / cs;
    if (lo) return (dem(r, c) - dem(r - dr, c - dc)) / cs;
    return 0.0;
  };

  std::vector<double> ls(dem.size(), dem.nodata());
  for (int r = 0; r < geom.nrows; ++r) {
    for (int c = 0; c < geom.ncols; ++c) {
      const std::size_t i = geom.index(r, c);
      if (!dem.valid(i) || !accum.valid(i)) continue;
      const double tan_slope = std::hypot(gradient(r, c, 0, 1), gradient(r, c, 1, 0));
      const double length = std::min(accum[i] * cs, options.max_slope_length_m);
      const double value = slope_length_factor(length) * slope_steepness_factor(tan_slope);
      ls[i] = std::max(0.0, value);
    }
  }
  return dem.with_values(std::move(ls));
}

}  // namespace natcap
