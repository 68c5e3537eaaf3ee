#pragma once

#include <string>
#include <vector>

#include "heatpath/times.hpp"

namespace heatpath {

/// Travel mode of a trajectory period (also used for access/egress choices).
enum class Mode {
  walk,
  bike,
  wheelchair,
  micromobility,
  automobile,
  wait,
  ride,  // in a transit vehicle
};

Mode parse_mode(const std::string& s);  // throws InputError
std::string to_string(Mode m);

/// Whether the mode happens in a climate-conditioned environment.
bool mode_conditioned(Mode m);

/// Network asset a period occupies, for resilience aggregation.
struct AssetTag {
  enum class Kind { none, station, footpath };
  Kind kind = Kind::none;
  std::string id;
  double length_m = 0.0;  // footpaths only

  bool empty() const { return kind == Kind::none; }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Timestamped geometry knot for in-vehicle interpolation.
struct PathKnot {
  int offset_s = 0;  // seconds from period start
  Point p;
};

/// One homogeneous span of a trip: a single mode at a single place or along
/// a single geometry.
struct Period {
  EpochSeconds start = 0;
  int duration_s = 0;  // > 0
  Mode mode = Mode::walk;
  bool conditioned = false;
  double grade_pct = 0.0;
  AssetTag asset;

  // Geometry: a pinned point (waits), a constant-speed segment (walk-like
  // legs), or a knot sequence (rides following the timetable).
  enum class Geometry { point, segment, knots };
  Geometry geometry = Geometry::point;
  Point from;
  Point to;
  std::vector<PathKnot> knots;

  EpochSeconds end() const { return start + duration_s; }
  /// Position at `sec` seconds into the period (0 <= sec <= duration_s).
  Point position_at(int sec) const;
  double minutes() const { return duration_s / 60.0; }
};

/// Second-by-second trip trajectory: contiguous periods from departure to
/// arrival.
struct Trajectory {
  std::string trip_id;
  std::vector<Period> periods;

  EpochSeconds depart() const { return periods.front().start; }
  EpochSeconds arrive() const { return periods.back().end(); }
  int total_seconds() const;
  void validate() const;  // contiguity, positive durations
};

/// One step of a planned journey before tracing.
struct Leg {
  enum class Type { access, wait, ride, transfer, egress };
  Type type = Type::access;
  Mode mode = Mode::walk;
  EpochSeconds start = 0;
  int duration_s = 0;
  int from_stop = -1;  // network stop index where applicable
  int to_stop = -1;
  Point from;
  Point to;
  int trip_index = -1;  // rides: index into TransitNetwork::trips
  int board_pos = -1;   // rides: positions within the trip's stop sequence
  int alight_pos = -1;
  std::int64_t service_day = 0;  // rides: epoch day anchoring the timetable
};

struct Itinerary {
  std::vector<Leg> legs;
  EpochSeconds depart = 0;
  EpochSeconds arrive = 0;
  int rides = 0;

  int transfers() const { return rides > 0 ? rides - 1 : 0; }
};

}  // namespace heatpath
