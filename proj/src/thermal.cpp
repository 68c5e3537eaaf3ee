#include "heatpath/thermal.hpp"

#include <cmath>

namespace heatpath {

void WeatherSample::validate() const {
  if (!std::isfinite(temp_f) || !std::isfinite(rh_pct) ||
      !std::isfinite(wind_mph))
    throw DomainError("non-finite weather sample");
  if (rh_pct < 0.0 || rh_pct > 100.0)
    throw DomainError("relative humidity " + std::to_string(rh_pct) +
                      " outside 0..100");
  if (wind_mph < 0.0)
    throw DomainError("negative wind speed " + std::to_string(wind_mph));
}

namespace {

double rothfusz(double t, double rh) {
  return -42.379 + 2.04901523 * t + 10.14333127 * rh - 0.22475541 * t * rh -
         0.00683783 * t * t - 0.05481717 * rh * rh + 0.00122874 * t * t * rh +
         0.00085282 * t * rh * rh - 0.00000199 * t * t * rh * rh;
}

}  // namespace

double heat_index(const WeatherSample& s, const ThermalOptions& opts) {
  s.validate();
  const double t = s.temp_f;
  const double rh = s.rh_pct;
  using namespace thermal_constants;

  if (t < kRegressionMinTempF) {
    if (opts.sub80 == Sub80Policy::passthrough) return t;
    return 0.5 * (t + 61.0 + (t - 68.0) * 1.2 + rh * 0.094);
  }

  double hi = rothfusz(t, rh);
  if (rh < kLowRhMaxPct && t <= kAdjustMaxTempF) {
    hi -= (kLowRhMaxPct - rh) / 4.0 *
          std::sqrt((17.0 - std::fabs(t - 95.0)) / 17.0);
  } else if (rh > kHighRhMinPct && t <= kHighRhMaxTempF) {
    hi += (rh - kHighRhMinPct) / 10.0 * (kHighRhMaxTempF - t) / 5.0;
  }
  return hi;
}

double wind_chill(const WeatherSample& s) {
  s.validate();
  const double t = s.temp_f;
  const double v = s.wind_mph;
  using namespace thermal_constants;
  if (t > kWindChillMaxTempF || v < kWindChillMinMph) return t;
  const double v016 = std::pow(v, 0.16);
  return 35.74 + 0.6215 * t - 35.75 * v016 + 0.4275 * t * v016;
}

}  // namespace heatpath
