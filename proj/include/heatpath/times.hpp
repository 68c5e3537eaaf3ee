#pragma once

#include <cstdint>
#include <string>

namespace heatpath {

/// Seconds since 1970-01-01T00:00:00, timezone-naive. All timestamps in a run
/// are interpreted in the study area's local clock.
using EpochSeconds = std::int64_t;

struct CivilTime {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
  int hour = 0;
  int minute = 0;
  int second = 0;
};

EpochSeconds civil_to_epoch(const CivilTime& c);
CivilTime epoch_to_civil(EpochSeconds t);

/// Parses "YYYY-MM-DDTHH:MM:SS" (a trailing "Z" is accepted and ignored).
/// Throws InputError on malformed input.
EpochSeconds parse_iso8601(const std::string& s);
std::string format_iso8601(EpochSeconds t);

/// Parses GTFS "HH:MM:SS" into seconds since midnight of the service day.
/// Hours may exceed 23 for after-midnight service.
int parse_gtfs_time(const std::string& s);
std::string format_hms(int seconds_of_day);

/// Parses GTFS "YYYYMMDD".
CivilTime parse_gtfs_date(const std::string& s);

/// Day of week, 0 = Monday .. 6 = Sunday.
int day_of_week(int year, int month, int day);

inline EpochSeconds floor_hour(EpochSeconds t) { return t - (t % 3600 + 3600) % 3600; }

}  // namespace heatpath
