#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "natcap/grid.hpp"

namespace natcap {

/// D8 codes in tie-break order. Outlet cells drain off the grid (or into nodata).
enum class FlowDir : std::int8_t { E = 0, SE, S, SW, W, NW, N, NE, Outlet = 8, NoData = -1 };

/// Row/column offsets for E, SE, S, SW, W, NW, N, NE.
inline constexpr std::array<int, 8> kD8RowOffset = {0, 1, 1, 1, 0, -1, -1, -1};
inline constexpr std::array<int, 8> kD8ColOffset = {1, 1, 0, -1, -1, -1, 0, 1};

class FlowDirGrid {
 public:
  FlowDirGrid() = default;
  FlowDirGrid(GridGeometry geometry, std::vector<FlowDir> dirs);

  const GridGeometry& geometry() const { return geometry_; }
  std::size_t size() const { return dirs_.size(); }
  FlowDir operator[](std::size_t idx) const { return dirs_[idx]; }
  FlowDir operator()(int row, int col) const { return dirs_[geometry_.index(row, col)]; }
  bool valid(std::size_t idx) const { return dirs_[idx] != FlowDir::NoData; }

  /// Index of the receiving cell, or nullopt for outlets and nodata.
  std::optional<std::size_t> downstream(std::size_t idx) const;

  /// Cells ordered so every cell precedes the cell it drains into. Throws RoutingError on a cycle.
  std::vector<std::size_t> topological_order() const;

  /// Codes as a Grid (0-7 directions, 8 outlet, -1 nodata).
  Grid to_grid() const;

 private:
  GridGeometry geometry_;
  std::vector<FlowDir> dirs_;
};

struct LsOptions {
  /// Upslope contributing length is capped at this value (m).
  double max_slope_length_m = 333.0;

  bool operator==(const LsOptions&) const = default;
};

/// Priority-flood depression filling. Every valid cell ends up with a
/// non-ascending path to the grid edge or a nodata boundary.
Grid fill_pits(const Grid& dem);

/// Steepest-descent D8 on a pit-filled DEM. Flats drain toward their lowest exit.
FlowDirGrid flow_direction_d8(const Grid& dem);

/// Upstream cell count including the cell itself; nodata where the direction grid is nodata.
Grid flow_accumulation(const FlowDirGrid& dirs);

/// McCool slope steepness factor for a slope gradient (rise over run).
double slope_steepness_factor(double tan_slope);
/// Slope length factor for a contributing length (m), before capping.
double slope_length_factor(double contributing_length_m);

/// RUSLE LS from central-difference slope and accumulation-derived slope length.
Grid compute_ls(const Grid& dem, const Grid& accum, const LsOptions& options = {});

}  // namespace natcap
