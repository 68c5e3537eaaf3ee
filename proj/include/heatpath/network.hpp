#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "heatpath/times.hpp"
#include "heatpath/trajectory.hpp"

namespace heatpath {

/// Equirectangular projection around a reference point; the run's single
/// fixed CRS. Good to well under a meter at metro scale.
struct Projection {
  double lon0 = 0.0;
  double lat0 = 0.0;

  static constexpr double kMetersPerDegLat = 110540.0;
  static constexpr double kMetersPerDegLon = 111320.0;

  Point to_xy(double lat, double lon) const {
    return {(lon - lon0) * kMetersPerDegLon * std::cos(lat0 * M_PI / 180.0),
            (lat - lat0) * kMetersPerDegLat};
  }
  void to_lat_lon(const Point& p, double& lat, double& lon) const {
    lat = p.y / kMetersPerDegLat + lat0;
    lon = p.x / (kMetersPerDegLon * std::cos(lat0 * M_PI / 180.0)) + lon0;
  }
};

inline double distance_m(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct Stop {
  std::string id;
  std::string name;
  Point pos;
};

struct StopTimeEntry {
  int arrival_s = 0;    // seconds since service-day midnight; may exceed 24 h
  int departure_s = 0;
};

struct TripSchedule {
  std::string id;
  std::string service_id;
  int pattern = -1;
  std::vector<StopTimeEntry> times;  // aligned with the pattern's stops
};

/// Trips sharing one route id and one stop sequence; the unit RAPTOR scans.
struct RoutePattern {
  std::string route_id;
  std::vector<int> stops;       // stop indices along the pattern
  std::vector<int> trips;       // trip indices sorted by first departure
};

struct Footpath {
  int from = -1;
  int to = -1;
  double length_m = 0.0;
};

/// Which service ids run on which dates.
class ServiceCalendar {
 public:
  struct Regular {
    bool weekday[7] = {false, false, false, false, false, false, false};
    std::int64_t start_day = 0;  // epoch day numbers (local midnight / 86400)
    std::int64_t end_day = 0;
  };

  std::map<std::string, Regular> regular;
  std::map<std::string, std::set<std::int64_t>> added;
  std::map<std::string, std::set<std::int64_t>> removed;

  bool active(const std::string& service_id, std::int64_t epoch_day) const;
  bool knows(const std::string& service_id) const;
};

struct TransitNetwork {
  std::vector<Stop> stops;  // sorted by id for deterministic iteration
  std::unordered_map<std::string, int> stop_index;
  std::vector<TripSchedule> trips;
  std::unordered_map<std::string, int> trip_index;
  std::vector<RoutePattern> patterns;
  std::vector<Footpath> footpaths;                   // both directions stored
  std::vector<std::vector<int>> footpaths_from;      // stop -> footpath idx
  std::vector<std::vector<std::pair<int, int>>> patterns_at_stop;  // (pattern, pos)
  ServiceCalendar calendar;
  std::unordered_map<std::string, std::string> route_names;

  const Stop& stop(int i) const { return stops[static_cast<std::size_t>(i)]; }
  int require_stop(const std::string& id) const;  // throws DomainError

  /// Rebuilds footpaths_from / patterns_at_stop after edits.
  void rebuild_indices();
};

/// All-pairs footpaths between stops within `radius_m` (straight-line
/// geometry).
std::vector<Footpath> synthesize_footpaths(const std::vector<Stop>& stops,
                                           double radius_m);

}  // namespace heatpath
