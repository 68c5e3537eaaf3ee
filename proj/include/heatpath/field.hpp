#pragma once

#include <string>
#include <vector>

#include "heatpath/grid.hpp"
#include "heatpath/thermal.hpp"
#include "heatpath/times.hpp"

namespace heatpath {

/// Hourly weather at the study-area center.
struct WeatherRecord {
  EpochSeconds hour = 0;  // aligned to the hour
  double temp_f = 0.0;
  double rh_pct = 0.0;
  double wind_mph = 0.0;
};

struct WeatherSeries {
  std::vector<WeatherRecord> records;  // strictly increasing hourly stamps

  EpochSeconds first_hour() const { return records.front().hour; }
  /// One past the covered span.
  EpochSeconds end_time() const { return records.back().hour + 3600; }
  const WeatherRecord& at_time(EpochSeconds t) const;  // throws DomainError
  void validate() const;
};

/// Loads CSV with header `hour_iso8601,temp_f,rh_pct,wind_mph`.
WeatherSeries load_weather_series(const std::string& path);
void write_weather_series(const WeatherSeries& s, const std::string& path);

/// Inverts the atmospheric radiative-transfer balance to the surface-leaving
/// blackbody radiance, then applies the Planck inversion with the sensor
/// constants (k1, k2). Returns kelvin.
double radiance_to_surface_temp(double toa_radiance, double k1, double k2,
                                double emissivity, double transmittance,
                                double up_radiance, double down_radiance);

/// Radiance a blackbody at `kelvin` would emit for sensor constants (k1, k2);
/// inverse of the Planck step above.
double blackbody_radiance(double kelvin, double k1, double k2);

// Landsat 8 TIRS band 10 thermal constants (product metadata).
inline constexpr double kLandsat8Band10K1 = 774.8853;
inline constexpr double kLandsat8Band10K2 = 1321.0789;

/// Spatial temperature offsets: lst(cell) - lst(cell containing `center`).
/// Nodata propagates. Throws DomainError when the center is outside the grid
/// or sits on a nodata cell.
Grid build_offset_grid(const Grid& lst, double center_x, double center_y);

/// The served spatio-temporal field: hourly center series plus a static
/// spatial offset grid. Immutable after construction; sampling is
/// concurrency-safe.
class TemperatureField {
 public:
  TemperatureField(WeatherSeries series, Grid offsets);

  /// Piecewise-constant sample: series record at floor-hour(t), temperature
  /// shifted by the offset of the cell containing (x, y). Points outside the
  /// grid use the nearest cell; nodata cells contribute no offset.
  WeatherSample sample(double x, double y, EpochSeconds t) const;

  const WeatherSeries& series() const { return series_; }
  const Grid& offsets() const { return offsets_; }
  EpochSeconds start() const { return series_.first_hour(); }
  EpochSeconds end() const { return series_.end_time(); }

 private:
  WeatherSeries series_;
  Grid offsets_;
};

}  // namespace heatpath
