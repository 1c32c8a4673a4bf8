#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "natcap/config.hpp"
#include "natcap/erosion.hpp"
#include "natcap/error.hpp"
#include "natcap/hydrology.hpp"
#include "natcap/pipeline.hpp"
#include "natcap/valuation.hpp"

namespace py = pybind11;
using namespace natcap;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Grid to_grid(const Array& a, double cellsize, double nodata) {
  if (a.ndim() != 2) throw ParameterError("expected a 2-D array");
  const GridGeometry g{static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), 0.0, 0.0, cellsize};
  return Grid(g, nodata, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const Grid& g) {
  Array out({g.nrows(), g.ncols()});
  std::copy(g.values().begin(), g.values().end(), out.mutable_data());
  return out;
}

py::array_t<std::int8_t> dir_codes(const FlowDirGrid& d) {
  py::array_t<std::int8_t> out({d.geometry().nrows, d.geometry().ncols});
  auto* p = out.mutable_data();
  for (std::size_t i = 0; i < d.size(); ++i) p[i] = static_cast<std::int8_t>(d[i]);
  return out;
}

FlowDirGrid from_codes(const py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>& a, double cellsize) {
  if (a.ndim() != 2) throw ParameterError("expected a 2-D direction array");
  std::vector<FlowDir> dirs(static_cast<std::size_t>(a.size()));
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const int code = a.data()[i];
    if (code < -1 || code > 8) throw ParameterError("flow direction code out of range: " + std::to_string(code));
    dirs[i] = static_cast<FlowDir>(code);
  }
  return FlowDirGrid(GridGeometry{static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), 0.0, 0.0, cellsize},
                     std::move(dirs));
}

AnnuityTiming timing_of(const std::string& s) { return parse_annuity_timing(s); }

}  // namespace

PYBIND11_MODULE(_natcap, m) {
  m.doc() = "Natural capital accounting engine";
  m.attr("__version__") = "0.1.0";
  py::register_exception<Error>(m, "Error");

  m.def(
      "fill_pits", [](const Array& dem, double cellsize, double nodata) {
        return to_array(fill_pits(to_grid(dem, cellsize, nodata)));
      },
      py::arg("dem"), py::arg("cellsize") = 1.0, py::arg("nodata") = -9999.0);

  m.def(
      "flow_direction_d8", [](const Array& dem, double cellsize, double nodata) {
        return dir_codes(flow_direction_d8(to_grid(dem, cellsize, nodata)));
      },
      py::arg("dem"), py::arg("cellsize") = 1.0, py::arg("nodata") = -9999.0,
      "D8 codes: 0-7 for E, SE, S, SW, W, NW, N, NE; 8 outlet; -1 nodata.");

  m.def(
      "flow_accumulation", [](const py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>& dirs) {
        return to_array(flow_accumulation(from_codes(dirs, 1.0)));
      },
      py::arg("dirs"));

  m.def(
      "route_sediment",
      [](const Array& loss, const py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>& dirs,
         const Array& landcover, const std::map<int, double>& trap_eff, double nodata) {
        const auto d = from_codes(dirs, 1.0);
        const Grid l = to_grid(loss, 1.0, nodata);
        const LandCoverGrid lc(to_grid(landcover, 1.0, nodata));
        const SedimentResult r = route_sediment(l, d, trap_eff, lc);
        py::dict out;
        out["trapped"] = to_array(r.trapped);
        out["exported"] = r.exported_at_outlets;
        out["per_class"] = r.per_class_trapped;
        return out;
      },
      py::arg("loss"), py::arg("dirs"), py::arg("landcover"), py::arg("trap_eff"), py::arg("nodata") = -9999.0);

  m.def(
      "annuity_factor", [](double rate, int years, const std::string& timing) {
        return annuity_factor(rate, years, timing_of(timing));
      },
      py::arg("rate"), py::arg("years"), py::arg("timing") = "due");

  m.def(
      "npv_asset_value", [](double flow, double rate, int years, const std::string& timing) {
        ValuationParams p;
        p.discount_rate = rate;
        p.horizon_years = years;
        p.annuity_timing = timing_of(timing);
        return npv_asset_value(flow, p);
      },
      py::arg("annual_flow"), py::arg("rate") = 0.07, py::arg("years") = 100, py::arg("timing") = "due");

  m.def(
      "carbon_stock_value", [](double tonnes_carbon, double price, double c_to_co2) {
        ValuationParams p;
        p.carbon_price = price;
        p.c_to_co2 = c_to_co2;
        return carbon_stock_value(tonnes_carbon, p);
      },
      py::arg("tonnes_carbon"), py::arg("price") = 37.0, py::arg("c_to_co2") = 3.67);

  m.def(
      "config_to_ini", [](const std::string& path) { return to_ini(load_config(path)); }, py::arg("config"));

  m.def(
      "run",
      [](const std::string& config_path, const std::string& command, std::optional<std::filesystem::path> out,
         std::optional<std::string> alternative, std::optional<std::vector<std::string>> formats) {
        const RunConfig config = load_config(config_path);
        RunOptions opts;
        opts.output_dir = out ? *out : std::filesystem::path(config.output_dir.empty() ? "natcap_output" : config.output_dir);
        opts.alternative = alternative ? parse_disclosure_alternative(*alternative) : config.alternative;
        if (formats) {
          opts.formats.clear();
          for (const auto& f : *formats) opts.formats.push_back(parse_output_format(f));
        }
        return run_pipeline(config, parse_command(command), opts);
      },
      py::arg("config"), py::arg("command") = "all", py::arg("out") = py::none(), py::arg("alternative") = py::none(),
      py::arg("formats") = py::none(), "Runs a command and returns the names of the files written.");
}
