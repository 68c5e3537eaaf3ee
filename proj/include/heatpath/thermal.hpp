#pragma once

#include "heatpath/errors.hpp"

namespace heatpath {

/// One observation of ambient conditions.
struct WeatherSample {
  double temp_f = 0.0;   // air temperature, deg F
  double rh_pct = 0.0;   // relative humidity, 0..100
  double wind_mph = 0.0; // wind speed, >= 0

  void validate() const;
};

/// Apparent temperatures derived from a WeatherSample.
struct ApparentTemp {
  double heat_index_f = 0.0;
  double wind_chill_f = 0.0;
};

/// How to evaluate the heat index below the regression's 80 degF floor.
enum class Sub80Policy {
  simple_formula,  // NWS simple average formula (default)
  passthrough,     // report the air temperature unchanged
};

struct ThermalOptions {
  Sub80Policy sub80 = Sub80Policy::simple_formula;
};

// Regression and adjustment coefficients, kept in one place so they can be
// audited against the NWS references.
namespace thermal_constants {
inline constexpr double kRegressionMinTempF = 80.0;
inline constexpr double kLowRhMaxPct = 13.0;
inline constexpr double kHighRhMinPct = 85.0;
inline constexpr double kHighRhMaxTempF = 87.0;
inline constexpr double kAdjustMaxTempF = 112.0;
inline constexpr double kWindChillMaxTempF = 50.0;
inline constexpr double kWindChillMinMph = 3.0;
}  // namespace thermal_constants

/// NWS heat index: the Rothfusz regression with the low-humidity and
/// high-humidity adjustments for T >= 80 degF, and the simple average
/// formula below that (per `opts.sub80`).
double heat_index(const WeatherSample& s, const ThermalOptions& opts = {});

/// NWS wind chill. Defined for T <= 50 degF and wind >= 3 mph; outside that
/// envelope the air temperature is returned unchanged.
double wind_chill(const WeatherSample& s);

inline ApparentTemp apparent_temp(const WeatherSample& s,
                                  const ThermalOptions& opts = {}) {
  return {heat_index(s, opts), wind_chill(s)};
}

}  // namespace heatpath
