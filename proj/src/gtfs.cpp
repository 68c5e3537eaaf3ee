#include "heatpath/gtfs.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

#include "heatpath/csv.hpp"
#include "heatpath/errors.hpp"

namespace heatpath {

namespace {

namespace fs = std::filesystem;

std::string need_file(const fs::path& dir, const char* name) {
  fs::path p = dir / name;
  if (!fs::exists(p))
    throw InputError(dir.string(), std::string("missing mandatory file ") + name);
  return p.string();
}

std::int64_t to_epoch_day(const CivilTime& c) {
  return civil_to_epoch(CivilTime{c.year, c.month, c.day, 0, 0, 0}) / 86400;
}

struct RawStopTime {
  std::string trip_id;
  int seq = 0;
  int arrival_s = 0;
  int departure_s = 0;
  std::string stop_id;
  int line = 0;
};

}  // namespace

TransitNetwork load_gtfs(const std::string& dir_s, const GtfsOptions& opts) {
  fs::path dir(dir_s);
  if (!fs::is_directory(dir))
    throw InputError(dir_s, "expected a GTFS directory");

  TransitNetwork net;

  // stops.txt
  {
    CsvFile file(need_file(dir, "stops.txt"));
    auto& csv = file.reader();
    int c_id = csv.require("stop_id");
    int c_name = csv.column("stop_name");
    int c_lat = csv.require("stop_lat");
    int c_lon = csv.require("stop_lon");
    while (csv.next()) {
      Stop s;
      s.id = csv.field(c_id);
      s.name = csv.field_or(c_name, s.id);
      s.pos = opts.projection.to_xy(csv.number(c_lat), csv.number(c_lon));
      if (s.id.empty()) throw InputError(csv.where(), "empty stop_id");
      net.stops.push_back(std::move(s));
    }
  }
  std::sort(net.stops.begin(), net.stops.end(),
            [](const Stop& a, const Stop& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < net.stops.size(); ++i) {
    if (!net.stop_index.emplace(net.stops[i].id, static_cast<int>(i)).second)
      throw InputError("stops.txt", "duplicate stop_id '" + net.stops[i].id + "'");
  }
  if (net.stops.empty()) throw InputError("stops.txt", "no stops");

  // routes.txt
  {
    CsvFile file(need_file(dir, "routes.txt"));
    auto& csv = file.reader();
    int c_id = csv.require("route_id");
    int c_short = csv.column("route_short_name");
    int c_long = csv.column("route_long_name");
    while (csv.next()) {
      std::string id = csv.field(c_id);
      std::string name = csv.field_or(c_short, "");
      if (name.empty()) name = csv.field_or(c_long, id);
      if (!net.route_names.emplace(id, name).second)
        throw InputError(csv.where(), "duplicate route_id '" + id + "'");
    }
  }

  // calendar.txt / calendar_dates.txt (at least one required)
  bool have_calendar = false;
  if (fs::exists(dir / "calendar.txt")) {
    have_calendar = true;
    CsvFile file((dir / "calendar.txt").string());
    auto& csv = file.reader();
    int c_sid = csv.require("service_id");
    const char* days[7] = {"monday", "tuesday",  "wednesday", "thursday",
                           "friday", "saturday", "sunday"};
    int c_day[7];
    for (int i = 0; i < 7; ++i) c_day[i] = csv.require(days[i]);
    int c_start = csv.require("start_date");
    int c_end = csv.require("end_date");
    while (csv.next()) {
      ServiceCalendar::Regular r;
      for (int i = 0; i < 7; ++i) r.weekday[i] = csv.field(c_day[i]) == "1";
      r.start_day = to_epoch_day(parse_gtfs_date(csv.field(c_start)));
      r.end_day = to_epoch_day(parse_gtfs_date(csv.field(c_end)));
      net.calendar.regular[csv.field(c_sid)] = r;
    }
  }
  if (fs::exists(dir / "calendar_dates.txt")) {
    have_calendar = true;
    CsvFile file((dir / "calendar_dates.txt").string());
    auto& csv = file.reader();
    int c_sid = csv.require("service_id");
    int c_date = csv.require("date");
    int c_type = csv.require("exception_type");
    while (csv.next()) {
      std::int64_t day = to_epoch_day(parse_gtfs_date(csv.field(c_date)));
      const std::string& type = csv.field(c_type);
      if (type == "1") net.calendar.added[csv.field(c_sid)].insert(day);
      else if (type == "2") net.calendar.removed[csv.field(c_sid)].insert(day);
      else throw InputError(csv.where(), "exception_type must be 1 or 2");
    }
  }
  if (!have_calendar)
    throw InputError(dir_s, "missing mandatory file calendar.txt (or calendar_dates.txt)");

  // trips.txt
  struct RawTrip {
    std::string route_id;
    std::string service_id;
  };
  std::map<std::string, RawTrip> raw_trips;
  {
    CsvFile file(need_file(dir, "trips.txt"));
    auto& csv = file.reader();
    int c_route = csv.require("route_id");
    int c_sid = csv.require("service_id");
    int c_trip = csv.require("trip_id");
    while (csv.next()) {
      const std::string& trip = csv.field(c_trip);
      const std::string& route = csv.field(c_route);
      const std::string& sid = csv.field(c_sid);
      if (!net.route_names.count(route))
        throw InputError(csv.where(),
                         "trip '" + trip + "' references unknown route '" + route + "'");
      if (!net.calendar.knows(sid))
        throw InputError(csv.where(),
                         "trip '" + trip + "' references unknown service '" + sid + "'");
      if (!raw_trips.emplace(trip, RawTrip{route, sid}).second)
        throw InputError(csv.where(), "duplicate trip_id '" + trip + "'");
    }
  }

  // stop_times.txt
  std::map<std::string, std::vector<RawStopTime>> by_trip;
  {
    CsvFile file(need_file(dir, "stop_times.txt"));
    auto& csv = file.reader();
    int c_trip = csv.require("trip_id");
    int c_arr = csv.require("arrival_time");
    int c_dep = csv.require("departure_time");
    int c_stop = csv.require("stop_id");
    int c_seq = csv.require("stop_sequence");
    while (csv.next()) {
      RawStopTime st;
      st.trip_id = csv.field(c_trip);
      st.arrival_s = parse_gtfs_time(csv.field(c_arr));
      st.departure_s = parse_gtfs_time(csv.field(c_dep));
      st.stop_id = csv.field(c_stop);
      st.seq = static_cast<int>(csv.number(c_seq));
      st.line = csv.line();
      if (!raw_trips.count(st.trip_id))
        throw InputError(csv.where(), "stop_time references unknown trip '" +
                                          st.trip_id + "'");
      if (!net.stop_index.count(st.stop_id))
        throw InputError(csv.where(), "stop_time references unknown stop '" +
                                          st.stop_id + "'");
      if (st.departure_s < st.arrival_s)
        throw InputError(csv.where(), "trip '" + st.trip_id +
                                          "': departure before arrival");
      by_trip[st.trip_id].push_back(std::move(st));
    }
  }
  if (by_trip.empty()) throw InputError("stop_times.txt", "no timetabled service");

  // Assemble trips; partition into patterns by (route, stop sequence).
  std::map<std::pair<std::string, std::vector<int>>, int> pattern_key;
  for (auto& [trip_id, sts] : by_trip) {
    std::sort(sts.begin(), sts.end(),
              [](const RawStopTime& a, const RawStopTime& b) { return a.seq < b.seq; });
    if (sts.size() < 2)
      throw InputError("stop_times.txt", "trip '" + trip_id +
                                             "' has fewer than two stop times");
    TripSchedule trip;
    trip.id = trip_id;
    trip.service_id = raw_trips[trip_id].service_id;
    std::vector<int> seq_stops;
    int prev_dep = -1;
    int prev_seq = -1;
    for (const auto& st : sts) {
      if (st.seq == prev_seq)
        throw InputError("stop_times.txt:" + std::to_string(st.line),
                         "trip '" + trip_id + "': duplicate stop_sequence");
      if (prev_dep >= 0 && st.arrival_s < prev_dep)
        throw InputError("stop_times.txt:" + std::to_string(st.line),
                         "trip '" + trip_id + "': stop_times not monotone");
      trip.times.push_back({st.arrival_s, st.departure_s});
      seq_stops.push_back(net.stop_index.at(st.stop_id));
      prev_dep = st.departure_s;
      prev_seq = st.seq;
    }
    auto key = std::make_pair(raw_trips[trip_id].route_id, seq_stops);
    auto it = pattern_key.find(key);
    int pat;
    if (it == pattern_key.end()) {
      pat = static_cast<int>(net.patterns.size());
      pattern_key.emplace(key, pat);
      RoutePattern rp;
      rp.route_id = key.first;
      rp.stops = seq_stops;
      net.patterns.push_back(std::move(rp));
    } else {
      pat = it->second;
    }
    trip.pattern = pat;
    int idx = static_cast<int>(net.trips.size());
    net.trips.push_back(std::move(trip));
    net.trip_index.emplace(trip_id, idx);
    net.patterns[static_cast<std::size_t>(pat)].trips.push_back(idx);
  }

  // Deterministic trip order within each pattern: by first departure, then id.
  for (auto& pat : net.patterns) {
    std::sort(pat.trips.begin(), pat.trips.end(), [&](int a, int b) {
      int da = net.trips[static_cast<std::size_t>(a)].times.front().departure_s;
      int db = net.trips[static_cast<std::size_t>(b)].times.front().departure_s;
      if (da != db) return da < db;
      return net.trips[static_cast<std::size_t>(a)].id <
             net.trips[static_cast<std::size_t>(b)].id;
    });
  }

  // Footpaths: transfers.txt when present, synthesis otherwise.
  if (fs::exists(dir / "transfers.txt")) {
    CsvFile file((dir / "transfers.txt").string());
    auto& csv = file.reader();
    int c_from = csv.require("from_stop_id");
    int c_to = csv.require("to_stop_id");
    while (csv.next()) {
      const std::string& from = csv.field(c_from);
      const std::string& to = csv.field(c_to);
      if (!net.stop_index.count(from) || !net.stop_index.count(to))
        throw InputError(csv.where(), "transfer references unknown stop");
      if (from == to) continue;
      int a = net.stop_index.at(from);
      int b = net.stop_index.at(to);
      double d = distance_m(net.stops[static_cast<std::size_t>(a)].pos,
                            net.stops[static_cast<std::size_t>(b)].pos);
      if (d <= 0.0) d = 1.0;  // co-located platforms still cost a step
      net.footpaths.push_back({a, b, d});
    }
  } else {
    net.footpaths = synthesize_footpaths(net.stops, opts.footpath_radius_m);
  }

  net.rebuild_indices();
  return net;
}

}  // namespace heatpath
