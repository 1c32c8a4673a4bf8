#include "natcap/grid.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "natcap/error.hpp"

namespace natcap {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool parse_double(const std::string& token, double& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_int(const std::string& token, int& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

bool close_rel(double a, double b, double rel) {
  if (a == b) return true;
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

Grid::Grid(GridGeometry geometry, double nodata, std::vector<double> values)
    : geometry_(geometry), nodata_(nodata), values_(std::move(values)) {
  if (geometry_.ncols <= 0 || geometry_.nrows <= 0) throw ParameterError("grid dimensions must be positive");
  if (!(geometry_.cellsize > 0.0)) throw ParameterError("cellsize must be > 0");
  if (values_.size() != geometry_.size()) {
    throw ParameterError("expected " + std::to_string(geometry_.size()) + " values, got " +
                         std::to_string(values_.size()));
  }
}

Grid Grid::filled(const GridGeometry& geometry, double nodata, double value) {
  return Grid(geometry, nodata, std::vector<double>(geometry.size(), value));
}

bool Grid::is_valid_value(double v) const { return !std::isnan(v) && v != nodata_; }

std::size_t Grid::valid_count() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [this](double v) { return is_valid_value(v); }));
}

Grid Grid::with_values(std::vector<double> values) const { return Grid(geometry_, nodata_, std::move(values)); }

bool Grid::operator==(const Grid& other) const {
  if (!(geometry_ == other.geometry_) || nodata_ != other.nodata_ || values_.size() != other.values_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double a = values_[i];
    const double b = other.values_[i];
    if (a != b && !(std::isnan(a) && std::isnan(b))) return false;
  }
  return true;
}

LandCoverGrid::LandCoverGrid(Grid grid) : grid_(std::move(grid)) {
  std::set<int> seen;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!grid_.valid(i)) continue;
    const double v = grid_[i];
    if (v != std::floor(v)) {
      throw ParseError("land-cover cell " + std::to_string(i) + " holds non-integer class " + format_real(v));
    }
    seen.insert(static_cast<int>(v));
  }
  classes_.assign(seen.begin(), seen.end());
}

std::size_t LandCoverGrid::cell_count(int class_id) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (grid_.valid(i) && class_at(i) == class_id) ++n;
  }
  return n;
}

double LandCoverGrid::area_ha(int class_id) const {
  return static_cast<double>(cell_count(class_id)) * cell_area_ha(grid_.geometry());
}

LandCoverGrid LandCoverGrid::restricted_to(std::span<const int> keep) const {
  std::vector<double> values(grid_.values().begin(), grid_.values().end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!grid_.valid(i)) continue;
    if (std::find(keep.begin(), keep.end(), class_at(i)) == keep.end()) values[i] = grid_.nodata();
  }
  return LandCoverGrid(grid_.with_values(std::move(values)));
}

Grid read_ascii_grid(std::istream& in) {
  static constexpr std::array<const char*, 6> kKeys = {"ncols",     "nrows",    "xllcorner",
                                                       "yllcorner", "cellsize", "nodata_value"};
  std::array<std::string, 6> header;
  std::string line;
  int line_no = 0;
  for (std::size_t k = 0; k < kKeys.size(); ++k) {
    if (!std::getline(in, line)) {
      throw ParseError("line " + std::to_string(line_no + 1) + ": missing header key '" + kKeys[k] + "'");
    }
    ++line_no;
    std::istringstream ls(line);
    std::string key, value, extra;
    ls >> key >> value;
    if (lower(key) != kKeys[k]) {
      throw ParseError("line " + std::to_string(line_no) + ": expected header key '" + kKeys[k] + "', got '" +
                       key + "'");
    }
    if (value.empty() || (ls >> extra)) {
      throw ParseError("line " + std::to_string(line_no) + ": malformed header entry for '" + kKeys[k] + "'");
    }
    header[k] = value;
  }

  GridGeometry geom;
  double nodata = 0.0;
  if (!parse_int(header[0], geom.ncols) || geom.ncols <= 0) throw ParseError("line 1: invalid ncols '" + header[0] + "'");
  if (!parse_int(header[1], geom.nrows) || geom.nrows <= 0) throw ParseError("line 2: invalid nrows '" + header[1] + "'");
  if (!parse_double(header[2], geom.xll)) throw ParseError("line 3: invalid xllcorner '" + header[2] + "'");
  if (!parse_double(header[3], geom.yll)) throw ParseError("line 4: invalid yllcorner '" + header[3] + "'");
  if (!parse_double(header[4], geom.cellsize) || !(geom.cellsize > 0.0)) {
    throw ParseError("line 5: invalid cellsize '" + header[4] + "'");
  }
  if (!parse_double(header[5], nodata)) throw ParseError("line 6: invalid NODATA_value '" + header[5] + "'");

  std::vector<double> values;
  values.reserve(geom.size());
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string token;
    while (ls >> token) {
      double v = 0.0;
      if (!parse_double(token, v)) {
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric token '" + token + "'");
      }
      values.push_back(v);
    }
  }
  if (values.size() != geom.size()) {
    throw ParseError("expected " + std::to_string(geom.size()) + " values, got " + std::to_string(values.size()));
  }
  return Grid(geom, nodata, std::move(values));
}

Grid read_ascii_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open grid file '" + path + "'");
  try {
    return read_ascii_grid(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_real(double v) {
  if (v == 0.0) return "0";
  std::array<char, 400> buf{};
  const double mag = std::abs(v);
  const auto fmt = (mag >= 1e-5 && mag < 1e16) ? std::chars_format::fixed : std::chars_format::general;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt);
  return std::string(buf.data(), ptr);
}

void write_ascii_grid(const Grid& g, std::ostream& out) {
  out << "ncols " << g.ncols() << '\n';
  out << "nrows " << g.nrows() << '\n';
  out << "xllcorner " << format_real(g.xll()) << '\n';
  out << "yllcorner " << format_real(g.yll()) << '\n';
  out << "cellsize " << format_real(g.cellsize()) << '\n';
  out << "NODATA_value " << format_real(g.nodata()) << '\n';
  for (int r = 0; r < g.nrows(); ++r) {
    for (int c = 0; c < g.ncols(); ++c) {
      if (c) out << ' ';
      const double v = g(r, c);
      out << (g.valid(r, c) ? format_real(v) : format_real(g.nodata()));
    }
    out << '\n';
  }
}

std::string write_ascii_grid(const Grid& g) {
  std::ostringstream os;
  write_ascii_grid(g, os);
  return os.str();
}

void write_ascii_grid_file(const Grid& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write grid file '" + path + "'");
  write_ascii_grid(g, out);
}

void assert_aligned(const GridGeometry& a, const GridGeometry& b) {
  constexpr double kRel = 1e-6;
  if (a.ncols != b.ncols) throw AlignmentError("ncols mismatch: " + std::to_string(a.ncols) + " vs " + std::to_string(b.ncols));
  if (a.nrows != b.nrows) throw AlignmentError("nrows mismatch: " + std::to_string(a.nrows) + " vs " + std::to_string(b.nrows));
  if (!close_rel(a.cellsize, b.cellsize, kRel)) {
    throw AlignmentError("cellsize mismatch: " + format_real(a.cellsize) + " vs " + format_real(b.cellsize));
  }
  if (!close_rel(a.xll, b.xll, kRel)) throw AlignmentError("xll mismatch: " + format_real(a.xll) + " vs " + format_real(b.xll));
  if (!close_rel(a.yll, b.yll, kRel)) throw AlignmentError("yll mismatch: " + format_real(a.yll) + " vs " + format_real(b.yll));
}

double cell_area_ha(const GridGeometry& g) { return g.cellsize * g.cellsize / 10000.0; }

}  // namespace natcap
