#include "heatpath/field.hpp"

#include <cmath>
#include <fstream>

#include "heatpath/csv.hpp"
#include "heatpath/errors.hpp"

namespace heatpath {

void WeatherSeries::validate() const {
  if (records.empty()) throw InputError("weather series: no records");
  EpochSeconds prev = 0;
  bool first = true;
  for (const auto& r : records) {
    if (r.hour % 3600 != 0)
      throw InputError("weather series: timestamp " + format_iso8601(r.hour) +
                       " is not hour-aligned");
    if (!first && r.hour != prev + 3600)
      throw InputError("weather series: gap or disorder at " +
                       format_iso8601(r.hour));
    WeatherSample{r.temp_f, r.rh_pct, r.wind_mph}.validate();
    prev = r.hour;
    first = false;
  }
}

const WeatherRecord& WeatherSeries::at_time(EpochSeconds t) const {
  EpochSeconds h = floor_hour(t);
  if (records.empty() || h < records.front().hour || h > records.back().hour)
    throw DomainError("no weather record for hour " + format_iso8601(h));
  return records[static_cast<std::size_t>((h - records.front().hour) / 3600)];
}

WeatherSeries load_weather_series(const std::string& path) {
  CsvFile file(path);
  auto& csv = file.reader();
  int c_hour = csv.require("hour_iso8601");
  int c_temp = csv.require("temp_f");
  int c_rh = csv.require("rh_pct");
  int c_wind = csv.require("wind_mph");
  WeatherSeries s;
  while (csv.next()) {
    WeatherRecord r;
    r.hour = parse_iso8601(csv.field(c_hour));
    r.temp_f = csv.number(c_temp);
    r.rh_pct = csv.number(c_rh);
    r.wind_mph = csv.number(c_wind);
    s.records.push_back(r);
  }
  try {
    s.validate();
  } catch (const InputError& e) {
    throw InputError(path, e.what());
  }
  return s;
}

void write_weather_series(const WeatherSeries& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path, "cannot write weather series");
  out << "hour_iso8601,temp_f,rh_pct,wind_mph\n";
  for (const auto& r : s.records) {
    out << format_iso8601(r.hour) << "," << format_fixed(r.temp_f) << ","
        << format_fixed(r.rh_pct) << "," << format_fixed(r.wind_mph) << "\n";
  }
}

double blackbody_radiance(double kelvin, double k1, double k2) {
  if (!(kelvin > 0.0)) throw DomainError("blackbody temperature must be > 0 K");
  return k1 / (std::exp(k2 / kelvin) - 1.0);
}

double radiance_to_surface_temp(double toa_radiance, double k1, double k2,
                                double emissivity, double transmittance,
                                double up_radiance, double down_radiance) {
  if (!(toa_radiance > 0.0))
    throw DomainError("TOA radiance must be positive");
  if (!(emissivity > 0.0) || emissivity > 1.0)
    throw DomainError("emissivity must be in (0, 1]");
  if (!(transmittance > 0.0) || transmittance > 1.0)
    throw DomainError("transmittance must be in (0, 1]");
  const double surface = (toa_radiance - up_radiance * transmittance -
                          (1.0 - emissivity) * down_radiance) /
                         (emissivity * transmittance);
  if (!(surface > 0.0))
    throw DomainError("non-physical surface radiance after atmospheric correction");
  return k2 / std::log(k1 / surface + 1.0);
}

Grid build_offset_grid(const Grid& lst, double center_x, double center_y) {
  lst.validate();
  if (!lst.contains(center_x, center_y))
    throw DomainError("offset grid: center falls outside the LST extent");
  const int cc = lst.clamp_col(center_x);
  const int cr = lst.clamp_row(center_y);
  const double center = lst.at(cc, cr);
  if (lst.is_nodata(center))
    throw DomainError("offset grid: center cell has no LST value");
  Grid out = lst;
  for (double& v : out.values) {
    if (!lst.is_nodata(v)) v -= center;
  }
  return out;
}

TemperatureField::TemperatureField(WeatherSeries series, Grid offsets)
    : series_(std::move(series)), offsets_(std::move(offsets)) {
  series_.validate();
  offsets_.validate();
}

WeatherSample TemperatureField::sample(double x, double y,
                                       EpochSeconds t) const {
  const WeatherRecord& r = series_.at_time(t);
  double offset = offsets_.sample(x, y);
  if (offsets_.is_nodata(offset)) offset = 0.0;  // no spatial information
  return WeatherSample{r.temp_f + offset, r.rh_pct, r.wind_mph};
}

}  // namespace heatpath
