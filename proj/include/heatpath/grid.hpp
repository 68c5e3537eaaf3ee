#pragma once

#include <string>
#include <vector>

namespace heatpath {

/// Regular raster in projected meters, ESRI ASCII layout: values stored in
/// file order (first row = northernmost).
struct Grid {
  int ncols = 0;
  int nrows = 0;
  double xll_m = 0.0;
  double yll_m = 0.0;
  double cellsize_m = 0.0;
  double nodata = -9999.0;
  std::vector<double> values;  // ncols * nrows, row-major from the top row

  bool is_nodata(double v) const { return v == nodata; }

  /// Column/row (row counted from the top, matching `values`) for a point,
  /// clamped to the nearest cell when outside the extent.
  int clamp_col(double x) const;
  int clamp_row(double y) const;
  bool contains(double x, double y) const;

  double at(int col, int row) const { return values[static_cast<std::size_t>(row) * ncols + col]; }
  double& at(int col, int row) { return values[static_cast<std::size_t>(row) * ncols + col]; }

  /// Value at the cell containing (x, y); nearest cell when outside.
  double sample(double x, double y) const { return at(clamp_col(x), clamp_row(y)); }

  void validate() const;  // throws InputError on inconsistent dimensions
};

Grid read_ascii_grid(const std::string& path);
void write_ascii_grid(const Grid& g, const std::string& path);

}  // namespace heatpath
