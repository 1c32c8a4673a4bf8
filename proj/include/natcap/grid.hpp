#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace natcap {

/// Placement of a raster: dimensions, lower-left corner and square cell size (metres).
struct GridGeometry {
  int ncols = 0;
  int nrows = 0;
  double xll = 0.0;
  double yll = 0.0;
  double cellsize = 1.0;

  std::size_t size() const { return static_cast<std::size_t>(ncols) * static_cast<std::size_t>(nrows); }
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(ncols) + static_cast<std::size_t>(col);
  }
  int row_of(std::size_t idx) const { return static_cast<int>(idx / static_cast<std::size_t>(ncols)); }
  int col_of(std::size_t idx) const { return static_cast<int>(idx % static_cast<std::size_t>(ncols)); }
  bool contains(int row, int col) const { return row >= 0 && row < nrows && col >= 0 && col < ncols; }

  bool operator==(const GridGeometry&) const = default;
};

/**
  Single-band raster, row-major with row 0 the northernmost row.

  A cell is valid iff its value differs from the nodata sentinel (NaN is
  never valid). Grids are immutable once built; algorithms produce new grids.
*/
class Grid {
 public:
  Grid() = default;
  Grid(GridGeometry geometry, double nodata, std::vector<double> values);

  static Grid filled(const GridGeometry& geometry, double nodata, double value);

  const GridGeometry& geometry() const { return geometry_; }
  int ncols() const { return geometry_.ncols; }
  int nrows() const { return geometry_.nrows; }
  double xll() const { return geometry_.xll; }
  double yll() const { return geometry_.yll; }
  double cellsize() const { return geometry_.cellsize; }
  double nodata() const { return nodata_; }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t idx) const { return values_[idx]; }
  double operator()(int row, int col) const { return values_[geometry_.index(row, col)]; }
  std::span<const double> values() const { return values_; }

  bool valid(std::size_t idx) const { return is_valid_value(values_[idx]); }
  bool valid(int row, int col) const { return valid(geometry_.index(row, col)); }
  bool is_valid_value(double v) const;
  std::size_t valid_count() const;

  /// Same geometry and nodata, new values.
  Grid with_values(std::vector<double> values) const;

  bool operator==(const Grid& other) const;

 private:
  GridGeometry geometry_;
  double nodata_ = -9999.0;
  std::vector<double> values_;
};

/// Grid whose valid values are integer class identifiers.
class LandCoverGrid {
 public:
  LandCoverGrid() = default;
  explicit LandCoverGrid(Grid grid);

  const Grid& grid() const { return grid_; }
  const GridGeometry& geometry() const { return grid_.geometry(); }
  /// Sorted, unique identifiers of the classes present.
  const std::vector<int>& classes() const { return classes_; }

  bool valid(std::size_t idx) const { return grid_.valid(idx); }
  int class_at(std::size_t idx) const { return static_cast<int>(grid_[idx]); }
  std::size_t cell_count(int class_id) const;
  double area_ha(int class_id) const;

  /// Cells whose class is not in `keep` become nodata.
  LandCoverGrid restricted_to(std::span<const int> keep) const;

 private:
  Grid grid_;
  std::vector<int> classes_;
};

Grid read_ascii_grid(std::istream& in);
Grid read_ascii_grid_file(const std::string& path);
void write_ascii_grid(const Grid& g, std::ostream& out);
std::string write_ascii_grid(const Grid& g);
void write_ascii_grid_file(const Grid& g, const std::string& path);

/// Throws AlignmentError naming the first differing field (1e-6 relative tolerance).
void assert_aligned(const GridGeometry& a, const GridGeometry& b);
inline void assert_aligned(const Grid& a, const Grid& b) { assert_aligned(a.geometry(), b.geometry()); }

double cell_area_ha(const GridGeometry& g);
inline double cell_area_ha(const Grid& g) { return cell_area_ha(g.geometry()); }

/// Shortest decimal text that parses back to exactly `v`; plain notation unless tiny or huge.
std::string format_real(double v);

}  // namespace natcap
