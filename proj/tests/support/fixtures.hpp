#pragma once

#include <random>
#include <string>

#include "heatpath/field.hpp"
#include "heatpath/network.hpp"
#include "heatpath/pipeline.hpp"

namespace heatpath::fixtures {

/// Air temperature whose heat index equals `target_hi` at the given
/// humidity (bisection on the regression regime).
double invert_heat_index_temp(double target_hi, double rh_pct);

/// The worked example trip: bike ingress, two timetabled rides with a hot
/// walking transfer between them, walk egress. All paths/values are chosen
/// so the shipped default work/rest table reproduces the narrative numbers.
struct ExampleTripBundle {
  std::string dir;
  std::string gtfs_dir;
  std::string weather_csv;
  std::string grid_asc;
  std::string trips_csv;
  std::string config_file;

  // Expected trace (seconds per period, in order).
  static constexpr int kBikeS = 72;
  static constexpr int kWait1S = 900;
  static constexpr int kRide1S = 1020;
  static constexpr int kWalkS = 324;
  static constexpr int kWait2S = 642;
  static constexpr int kRide2S = 1320;
  static constexpr int kEgressS = 48;

  RunConfig config() const;
};

ExampleTripBundle write_example_bundle(const std::string& dir);

/// In-memory field identical to the bundle's weather + grid files.
TemperatureField example_field();

/// 3-stop, 1-route feed (two stop pairs within the 500 m footpath radius).
void write_tiny_feed(const std::string& dir);

/// Small randomized network for routing-oracle tests: up to `max_stops`
/// stops in a ~3 km square, up to `max_trips` timetabled trips, service
/// active every day of 2019.
TransitNetwork random_network(std::mt19937& rng, int max_stops, int max_trips);

/// Synthetic batch for the benchmark: a grid of stops with frequent service
/// plus `n_trips` records.
struct BenchBundle {
  std::string dir;
  RunConfig config;
};
BenchBundle write_bench_bundle(const std::string& dir, int n_trips);

}  // namespace heatpath::fixtures
