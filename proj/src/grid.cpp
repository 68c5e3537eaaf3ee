#include "heatpath/grid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "heatpath/errors.hpp"

namespace heatpath {

int Grid::clamp_col(double x) const {
  int c = static_cast<int>(std::floor((x - xll_m) / cellsize_m));
  return std::clamp(c, 0, ncols - 1);
}

int Grid::clamp_row(double y) const {
  int r_from_bottom = static_cast<int>(std::floor((y - yll_m) / cellsize_m));
  r_from_bottom = std::clamp(r_from_bottom, 0, nrows - 1);
  return nrows - 1 - r_from_bottom;
}

bool Grid::contains(double x, double y) const {
  return x >= xll_m && x < xll_m + ncols * cellsize_m && y >= yll_m &&
         y < yll_m + nrows * cellsize_m;
}

void Grid::validate() const {
  if (ncols < 1 || nrows < 1) throw InputError("grid: empty raster");
  if (!(cellsize_m > 0.0)) throw InputError("grid: cellsize must be positive");
  if (values.size() != static_cast<std::size_t>(ncols) * nrows)
    throw InputError("grid: value count " + std::to_string(values.size()) +
                     " does not match " + std::to_string(ncols) + "x" +
                     std::to_string(nrows));
}

Grid read_ascii_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open grid");
  Grid g;
  // 6-line header: ncols, nrows, xllcorner, yllcorner, cellsize, NODATA_value.
  for (int i = 0; i < 6; ++i) {
    std::string key;
    double value;
    if (!(in >> key >> value))
      throw InputError(path, "truncated ESRI ASCII header");
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (key == "ncols") g.ncols = static_cast<int>(value);
    else if (key == "nrows") g.nrows = static_cast<int>(value);
    else if (key == "xllcorner") g.xll_m = value;
    else if (key == "yllcorner") g.yll_m = value;
    else if (key == "cellsize") g.cellsize_m = value;
    else if (key == "nodata_value") g.nodata = value;
    else throw InputError(path, "unknown header key '" + key + "'");
  }
  if (g.ncols < 1 || g.nrows < 1 || !(g.cellsize_m > 0.0))
    throw InputError(path, "invalid grid dimensions in header");
  g.values.reserve(static_cast<std::size_t>(g.ncols) * g.nrows);
  double v;
  while (in >> v) g.values.push_back(v);
  if (g.values.size() != static_cast<std::size_t>(g.ncols) * g.nrows)
    throw InputError(path, "expected " + std::to_string(g.ncols * g.nrows) +
                               " values, found " +
                               std::to_string(g.values.size()));
  return g;
}

void write_ascii_grid(const Grid& g, const std::string& path) {
  g.validate();
  std::ofstream out(path);
  if (!out) throw InputError(path, "cannot write grid");
  char buf[64];
  out << "ncols " << g.ncols << "\n";
  out << "nrows " << g.nrows << "\n";
  std::snprintf(buf, sizeof buf, "%.6f", g.xll_m);
  out << "xllcorner " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.6f", g.yll_m);
  out << "yllcorner " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.6f", g.cellsize_m);
  out << "cellsize " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%g", g.nodata);
  out << "NODATA_value " << buf << "\n";
  for (int r = 0; r < g.nrows; ++r) {
    for (int c = 0; c < g.ncols; ++c) {
      std::snprintf(buf, sizeof buf, "%.9g", g.at(c, r));
      out << buf << (c + 1 == g.ncols ? "\n" : " ");
    }
  }
}

}  // namespace heatpath
