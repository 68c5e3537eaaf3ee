#pragma once

// Randomized inputs shared by the property tests and the acceptance suite.

#include <algorithm>
#include <random>

#include "heatpath/exposure.hpp"
#include "heatpath/field.hpp"
#include "heatpath/trajectory.hpp"

namespace heatpath::testgen {

struct RandomWorld {
  TemperatureField field;
  WorkRestTable table;
  FrostbiteTable frostbite;
};

inline RandomWorld random_world(std::mt19937& rng) {
  std::uniform_real_distribution<double> base_t(-20.0, 105.0);
  std::uniform_real_distribution<double> rh(20.0, 95.0);
  std::uniform_real_distribution<double> wind(0.0, 25.0);
  std::uniform_real_distribution<double> dt(-8.0, 8.0);
  WeatherSeries s;
  EpochSeconds h0 = parse_iso8601("2019-08-14T06:00:00");
  double t = base_t(rng);
  for (int h = 0; h < 18; ++h) {
    s.records.push_back({h0 + h * 3600, t, rh(rng), wind(rng)});
    t = std::clamp(t + dt(rng) / 2.0, -40.0, 115.0);
  }
  Grid g;
  g.ncols = 6;
  g.nrows = 6;
  g.xll_m = g.yll_m = 0.0;
  g.cellsize_m = 30.0;
  g.values.resize(36);
  for (auto& v : g.values) v = dt(rng);
  g.values[static_cast<std::size_t>(6 * 2 + 3)] = 0.0;
  return {TemperatureField(std::move(s), build_offset_grid(g, 105.0, 105.0)),
          WorkRestTable::embedded_default(),
          FrostbiteTable::embedded_default()};
}

inline Trajectory random_trajectory(std::mt19937& rng, int max_periods = 8) {
  std::uniform_int_distribution<int> n_d(1, max_periods);
  std::uniform_int_distribution<int> dur_d(30, 900);
  std::uniform_real_distribution<double> xy(-20.0, 200.0);
  std::uniform_int_distribution<int> mode_d(0, 5);
  const Mode modes[6] = {Mode::walk, Mode::bike,          Mode::wait,
                         Mode::ride, Mode::micromobility, Mode::automobile};
  Trajectory t;
  t.trip_id = "prop";
  EpochSeconds clock = parse_iso8601("2019-08-14T08:00:00") +
                       std::uniform_int_distribution<int>(0, 8 * 3600)(rng);
  int n = n_d(rng);
  for (int i = 0; i < n; ++i) {
    Mode m = modes[mode_d(rng)];
    Period p;
    p.start = clock;
    p.duration_s = dur_d(rng);
    p.mode = m;
    p.conditioned = mode_conditioned(m);
    p.geometry = Period::Geometry::segment;
    p.from = {xy(rng), xy(rng)};
    p.to = {xy(rng), xy(rng)};
    t.periods.push_back(p);
    clock = p.end();
  }
  return t;
}

}  // namespace heatpath::testgen
