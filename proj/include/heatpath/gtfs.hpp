#pragma once

#include <string>

#include "heatpath/network.hpp"

namespace heatpath {

struct GtfsOptions {
  Projection projection;
  /// Pairs within this radius get synthesized footpaths when the feed ships
  /// no transfers.txt.
  double footpath_radius_m = 500.0;
};

/// Parses a GTFS directory (stops, routes, trips, stop_times, calendar
/// and/or calendar_dates, optional transfers) into a validated network.
/// Throws InputError with file/line context for any malformed input; never
/// returns a partial network.
TransitNetwork load_gtfs(const std::string& dir, const GtfsOptions& opts = {});

}  // namespace heatpath
