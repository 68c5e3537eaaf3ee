#pragma once

#include <optional>
#include <string>

#include "heatpath/network.hpp"
#include "heatpath/trajectory.hpp"

namespace heatpath {

struct RouterOptions {
  double walk_speed_mps = 1.25;
  double bike_speed_mps = 4.0;
  double wheelchair_speed_mps = 1.0;
  double micromobility_speed_mps = 4.0;
  double auto_speed_mps = 10.0;
  int max_rounds = 4;        // transfer rounds (max rides)
  int access_candidates = 5; // nearest stops considered for access/egress
  double max_access_m = 5000.0;

  double speed_for(Mode m) const;
};

/// Earliest-arrival journey by round-based search; round k holds journeys
/// with at most k rides, with one footpath allowed after access and after
/// each ride. Ties break toward fewer rides, then lexicographic stop id.
/// Returns nullopt when no journey exists (origin and destination out of
/// reach of any stop and of each other).
std::optional<Itinerary> plan_trip(const TransitNetwork& net, Point origin,
                                   Point dest, EpochSeconds depart,
                                   Mode access_mode, Mode egress_mode,
                                   const RouterOptions& opts = {});

/// Expands an itinerary into contiguous per-second traceable periods with
/// asset references (waits -> stations, walk-like legs -> footpaths).
Trajectory trace_trajectory(const TransitNetwork& net, const Itinerary& it,
                            const std::string& trip_id);

}  // namespace heatpath
