#include "heatpath/times.hpp"

#include <cstdio>

#include "heatpath/errors.hpp"

namespace heatpath {

namespace {

// Days from 1970-01-01 to year/month/day of the proleptic Gregorian calendar
// (Howard Hinnant's days_from_civil).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yr + (m <= 2));
}

}  // namespace

EpochSeconds civil_to_epoch(const CivilTime& c) {
  return days_from_civil(c.year, c.month, c.day) * 86400 + c.hour * 3600 +
         c.minute * 60 + c.second;
}

CivilTime epoch_to_civil(EpochSeconds t) {
  std::int64_t days = t / 86400;
  std::int64_t sod = t % 86400;
  if (sod < 0) {
    sod += 86400;
    days -= 1;
  }
  CivilTime c;
  civil_from_days(days, c.year, c.month, c.day);
  c.hour = static_cast<int>(sod / 3600);
  c.minute = static_cast<int>(sod % 3600 / 60);
  c.second = static_cast<int>(sod % 60);
  return c;
}

EpochSeconds parse_iso8601(const std::string& s) {
  CivilTime c;
  char tail = '\0';
  int n = std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%d%c", &c.year, &c.month,
                      &c.day, &c.hour, &c.minute, &c.second, &tail);
  if (n < 6 || (n == 7 && tail != 'Z'))
    throw InputError("bad ISO-8601 timestamp '" + s + "'");
  if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31 || c.hour > 23 ||
      c.minute > 59 || c.second > 60 || c.hour < 0 || c.minute < 0 ||
      c.second < 0)
    throw InputError("out-of-range ISO-8601 timestamp '" + s + "'");
  return civil_to_epoch(c);
}

std::string format_iso8601(EpochSeconds t) {
  CivilTime c = epoch_to_civil(t);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d", c.year,
                c.month, c.day, c.hour, c.minute, c.second);
  return buf;
}

int parse_gtfs_time(const std::string& s) {
  int h = 0, m = 0, sec = 0;
  if (std::sscanf(s.c_str(), "%d:%d:%d", &h, &m, &sec) != 3 || h < 0 ||
      m < 0 || m > 59 || sec < 0 || sec > 59)
    throw InputError("bad GTFS time '" + s + "'");
  return h * 3600 + m * 60 + sec;
}

std::string format_hms(int seconds_of_day) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", seconds_of_day / 3600,
                seconds_of_day % 3600 / 60, seconds_of_day % 60);
  return buf;
}

CivilTime parse_gtfs_date(const std::string& s) {
  if (s.size() != 8) throw InputError("bad GTFS date '" + s + "'");
  CivilTime c;
  if (std::sscanf(s.c_str(), "%4d%2d%2d", &c.year, &c.month, &c.day) != 3 ||
      c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31)
    throw InputError("bad GTFS date '" + s + "'");
  return c;
}

int day_of_week(int year, int month, int day) {
  std::int64_t z = days_from_civil(year, month, day);
  // 1970-01-01 was a Thursday (index 3 with Monday = 0).
  return static_cast<int>(((z % 7) + 7 + 3) % 7);
}

}  // namespace heatpath
