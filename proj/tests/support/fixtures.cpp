#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "heatpath/errors.hpp"
#include "heatpath/grid.hpp"
#include "heatpath/thermal.hpp"

namespace heatpath::fixtures {

namespace fs = std::filesystem;

double invert_heat_index_temp(double target_hi, double rh_pct) {
  double lo = 80.0, hi = 140.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (heat_index({mid, rh_pct, 0.0}) < target_hi) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Geometry (projected meters along one east-west corridor).
constexpr double kStopAx = 288.0;
constexpr double kStopBx = 12288.0;
constexpr double kStopCx = 12693.0;
constexpr double kStopDx = 27693.0;
constexpr double kDestX = 27753.0;

// Grid layout: 2.5 m cells so each walking second advances half a cell.
constexpr double kCell = 2.5;
constexpr int kNcols = 11110;
constexpr int kNrows = 3;
constexpr double kYll = -3.75;

// Hourly base conditions.
constexpr double kT14 = 90.0, kRh14 = 55.0;
constexpr double kT15 = 86.0, kRh15 = 50.0;
constexpr double kWind = 5.0;

// Heat-index targets per corridor segment.
constexpr double kHiBike = 96.3;
constexpr double kHiStopA = 92.5;
constexpr double kHiWalkFirst = 105.5;
constexpr double kHiWalkSpike = 113.6;  // two seconds above the schedule
constexpr double kHiWalkSecond = 102.4; // first/second halves average 104.0
constexpr double kHiStopC = 92.5;

Grid example_grid() {
  Grid g;
  g.ncols = kNcols;
  g.nrows = kNrows;
  g.xll_m = 0.0;
  g.yll_m = kYll;
  g.cellsize_m = kCell;
  g.nodata = -9999.0;
  g.values.assign(static_cast<std::size_t>(kNcols) * kNrows, 0.0);

  const double d_bike = invert_heat_index_temp(kHiBike, kRh14) - kT14;
  const double d_stop_a = invert_heat_index_temp(kHiStopA, kRh14) - kT14;
  const double d_walk1 = invert_heat_index_temp(kHiWalkFirst, kRh15) - kT15;
  const double d_spike = invert_heat_index_temp(kHiWalkSpike, kRh15) - kT15;
  const double d_walk2 = invert_heat_index_temp(kHiWalkSecond, kRh15) - kT15;
  const double d_stop_c = invert_heat_index_temp(kHiStopC, kRh15) - kT15;

  auto fill = [&](int col_lo, int col_hi, double v) {
    for (int c = col_lo; c <= col_hi; ++c)
      for (int r = 0; r < kNrows; ++r) g.at(c, r) = v;
  };
  fill(0, 114, d_bike);     // bike corridor from the origin to stop A
  fill(115, 115, d_stop_a); // stop A platform
  fill(4915, 4995, d_walk1);
  fill(4926, 4926, d_spike); // covers walking seconds 22-23
  fill(4996, 5076, d_walk2);
  fill(5077, 5077, d_stop_c);
  return g;
}

WeatherSeries example_series() {
  WeatherSeries s;
  EpochSeconds day = civil_to_epoch({2019, 8, 14, 0, 0, 0});
  s.records.push_back({day + 14 * 3600, kT14, kRh14, kWind});
  s.records.push_back({day + 15 * 3600, kT15, kRh15, kWind});
  s.records.push_back({day + 16 * 3600, 84.0, kRh15, kWind});
  return s;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError(path.string(), "cannot write fixture file");
  out << content;
}

std::string lonlat(double meters, bool lat) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12f",
                meters / (lat ? Projection::kMetersPerDegLat
                              : Projection::kMetersPerDegLon));
  return buf;
}

}  // namespace

TemperatureField example_field() {
  return TemperatureField(example_series(), example_grid());
}

ExampleTripBundle write_example_bundle(const std::string& dir) {
  ExampleTripBundle b;
  b.dir = dir;
  fs::create_directories(dir);
  b.gtfs_dir = (fs::path(dir) / "gtfs").string();
  fs::create_directories(b.gtfs_dir);

  auto stop_row = [&](const std::string& id, const std::string& name,
                      double x) {
    return id + "," + name + "," + lonlat(0.0, true) + "," + lonlat(x, false) +
           "\n";
  };
  write_file(fs::path(b.gtfs_dir) / "stops.txt",
             "stop_id,stop_name,stop_lat,stop_lon\n" +
                 stop_row("A", "Origin Station", kStopAx) +
                 stop_row("B", "Transfer West", kStopBx) +
                 stop_row("C", "Transfer East", kStopCx) +
                 stop_row("D", "Destination Station", kStopDx));
  write_file(fs::path(b.gtfs_dir) / "routes.txt",
             "route_id,route_short_name,route_type\nR1,10,3\nR2,20,3\n");
  write_file(fs::path(b.gtfs_dir) / "trips.txt",
             "route_id,service_id,trip_id\nR1,wk,T1\nR2,wk,T2\n");
  write_file(fs::path(b.gtfs_dir) / "stop_times.txt",
             "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n"
             "T1,14:59:12,14:59:12,A,1\n"
             "T1,15:16:12,15:16:12,B,2\n"
             "T2,15:32:18,15:32:18,C,1\n"
             "T2,15:54:18,15:54:18,D,2\n");
  write_file(fs::path(b.gtfs_dir) / "calendar.txt",
             "service_id,monday,tuesday,wednesday,thursday,friday,saturday,"
             "sunday,start_date,end_date\n"
             "wk,1,1,1,1,1,1,1,20190801,20190831\n");

  b.weather_csv = (fs::path(dir) / "weather.csv").string();
  write_weather_series(example_series(), b.weather_csv);

  b.grid_asc = (fs::path(dir) / "grid.asc").string();
  write_ascii_grid(example_grid(), b.grid_asc);

  b.trips_csv = (fs::path(dir) / "trips.csv").string();
  write_file(b.trips_csv,
             "trip_id,origin_x,origin_y,dest_x,dest_y,depart_iso8601,"
             "demographic,access_mode,egress_mode,weight\n"
             "demo,0,0," +
                 std::to_string(kDestX) +
                 ",0,2019-08-14T14:43:00,average_adult,bike,walk,1\n");

  b.config_file = (fs::path(dir) / "run.conf").string();
  write_file(b.config_file, "gtfs=" + b.gtfs_dir + "\ntrips=" + b.trips_csv +
                                "\nweather=" + b.weather_csv +
                                "\ngrid=" + b.grid_asc + "\nworkers=1\n");
  return b;
}

RunConfig ExampleTripBundle::config() const {
  RunConfig cfg = load_config(config_file);
  cfg.out_dir = (fs::path(dir) / "out").string();
  return cfg;
}

void write_tiny_feed(const std::string& dir) {
  fs::create_directories(dir);
  auto stop_row = [&](const std::string& id, double x) {
    return id + "," + id + "," + lonlat(0.0, true) + "," + lonlat(x, false) +
           "\n";
  };
  write_file(fs::path(dir) / "stops.txt",
             "stop_id,stop_name,stop_lat,stop_lon\n" + stop_row("S1", 0.0) +
                 stop_row("S2", 300.0) + stop_row("S3", 780.0));
  write_file(fs::path(dir) / "routes.txt",
             "route_id,route_short_name,route_type\nR,1,3\n");
  write_file(fs::path(dir) / "trips.txt",
             "route_id,service_id,trip_id\nR,daily,t1\n");
  write_file(fs::path(dir) / "stop_times.txt",
             "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n"
             "t1,08:00:00,08:00:00,S1,1\n"
             "t1,08:10:00,08:10:00,S2,2\n"
             "t1,08:20:00,08:20:00,S3,3\n");
  write_file(fs::path(dir) / "calendar.txt",
             "service_id,monday,tuesday,wednesday,thursday,friday,saturday,"
             "sunday,start_date,end_date\n"
             "daily,1,1,1,1,1,1,1,20190101,20201231\n");
}

TransitNetwork random_network(std::mt19937& rng, int max_stops,
                              int max_trips) {
  TransitNetwork net;
  std::uniform_int_distribution<int> n_stops_d(4, max_stops);
  std::uniform_real_distribution<double> coord(0.0, 3000.0);
  const int n = n_stops_d(rng);
  for (int i = 0; i < n; ++i) {
    Stop s;
    char id[8];
    std::snprintf(id, sizeof id, "S%02d", i);
    s.id = id;
    s.name = id;
    s.pos = {coord(rng), coord(rng)};
    net.stops.push_back(std::move(s));
  }
  for (int i = 0; i < n; ++i) net.stop_index.emplace(net.stops[i].id, i);

  ServiceCalendar::Regular always;
  for (bool& d : always.weekday) d = true;
  always.start_day = civil_to_epoch({2019, 1, 1, 0, 0, 0}) / 86400;
  always.end_day = civil_to_epoch({2019, 12, 31, 0, 0, 0}) / 86400;
  net.calendar.regular["daily"] = always;

  std::uniform_int_distribution<int> n_pat_d(2, 5);
  std::uniform_int_distribution<int> len_d(2, std::min(4, n));
  std::uniform_int_distribution<int> stop_d(0, n - 1);
  std::uniform_int_distribution<int> start_d(6 * 3600, 22 * 3600);
  std::uniform_int_distribution<int> seg_d(60, 900);
  std::uniform_int_distribution<int> dwell_d(0, 60);
  const int n_pat = n_pat_d(rng);
  int trips_left = max_trips;
  for (int p = 0; p < n_pat && trips_left > 0; ++p) {
    RoutePattern pat;
    pat.route_id = "R" + std::to_string(p);
    net.route_names.emplace(pat.route_id, pat.route_id);
    const int len = len_d(rng);
    while (static_cast<int>(pat.stops.size()) < len) {
      int s = stop_d(rng);
      if (std::find(pat.stops.begin(), pat.stops.end(), s) == pat.stops.end())
        pat.stops.push_back(s);
    }
    std::uniform_int_distribution<int> n_trip_d(1, 5);
    int n_trip = std::min(n_trip_d(rng), trips_left);
    trips_left -= n_trip;
    for (int t = 0; t < n_trip; ++t) {
      TripSchedule trip;
      trip.id = pat.route_id + "_t" + std::to_string(t);
      trip.service_id = "daily";
      trip.pattern = static_cast<int>(net.patterns.size());
      int clock = start_d(rng);
      for (std::size_t pos = 0; pos < pat.stops.size(); ++pos) {
        int arrive = clock;
        int depart = arrive + (pos + 1 < pat.stops.size() ? dwell_d(rng) : 0);
        trip.times.push_back({arrive, depart});
        clock = depart + seg_d(rng);
      }
      pat.trips.push_back(static_cast<int>(net.trips.size()));
      net.trip_index.emplace(trip.id, static_cast<int>(net.trips.size()));
      net.trips.push_back(std::move(trip));
    }
    std::sort(pat.trips.begin(), pat.trips.end(), [&](int a, int b) {
      int da = net.trips[static_cast<std::size_t>(a)].times.front().departure_s;
      int db = net.trips[static_cast<std::size_t>(b)].times.front().departure_s;
      if (da != db) return da < db;
      return net.trips[static_cast<std::size_t>(a)].id <
             net.trips[static_cast<std::size_t>(b)].id;
    });
    net.patterns.push_back(std::move(pat));
  }
  net.footpaths = synthesize_footpaths(net.stops, 500.0);
  net.rebuild_indices();
  return net;
}

BenchBundle write_bench_bundle(const std::string& dir, int n_trips) {
  fs::create_directories(dir);
  fs::path gtfs = fs::path(dir) / "gtfs";
  fs::create_directories(gtfs);

  // 6x6 stop grid, 1 km spacing; horizontal routes with 10-minute headways.
  std::string stops = "stop_id,stop_name,stop_lat,stop_lon\n";
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) {
      char id[16];
      std::snprintf(id, sizeof id, "G%d%d", r, c);
      stops += std::string(id) + "," + id + "," + lonlat(r * 1000.0, true) +
               "," + lonlat(c * 1000.0, false) + "\n";
    }
  write_file(gtfs / "stops.txt", stops);

  std::string routes = "route_id,route_short_name,route_type\n";
  std::string trips = "route_id,service_id,trip_id\n";
  std::string times = "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n";
  for (int r = 0; r < 6; ++r) {
    std::string route = "H" + std::to_string(r);
    routes += route + "," + route + ",3\n";
    for (int k = 0; k < 60; ++k) {
      std::string trip = route + "_" + std::to_string(k);
      trips += route + ",daily," + trip + "\n";
      int t0 = 6 * 3600 + k * 600;
      for (int c = 0; c < 6; ++c) {
        int t = t0 + c * 180;
        char hms[16];
        std::snprintf(hms, sizeof hms, "%02d:%02d:%02d", t / 3600,
                      t % 3600 / 60, t % 60);
        char sid[16];
        std::snprintf(sid, sizeof sid, "G%d%d", r, c);
        times += trip + "," + hms + "," + hms + "," + sid + "," +
                 std::to_string(c + 1) + "\n";
      }
    }
  }
  write_file(gtfs / "routes.txt", routes);
  write_file(gtfs / "trips.txt", trips);
  write_file(gtfs / "stop_times.txt", times);
  write_file(gtfs / "calendar.txt",
             "service_id,monday,tuesday,wednesday,thursday,friday,saturday,"
             "sunday,start_date,end_date\n"
             "daily,1,1,1,1,1,1,1,20190101,20201231\n");

  // Mildly hot afternoon over a coarse offset grid.
  Grid g;
  g.ncols = 60;
  g.nrows = 60;
  g.xll_m = -500.0;
  g.yll_m = -500.0;
  g.cellsize_m = 100.0;
  g.values.assign(3600, 0.0);
  for (int i = 0; i < 3600; ++i) g.values[static_cast<std::size_t>(i)] = (i % 7) * 0.9;
  g.at(30, 29) = 0.0;  // keep the default center cell at zero offset
  std::string grid_path = (fs::path(dir) / "grid.asc").string();
  write_ascii_grid(g, grid_path);

  WeatherSeries series;
  EpochSeconds day = civil_to_epoch({2019, 8, 14, 0, 0, 0});
  for (int h = 6; h <= 22; ++h) {
    double t = h < 14 ? 84.0 + h - 6 : 92.0 - (h - 14) * 0.5;
    series.records.push_back({day + h * 3600, t, 55.0, 5.0});
  }
  std::string weather_path = (fs::path(dir) / "weather.csv").string();
  write_weather_series(series, weather_path);

  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> coord(-400.0, 5400.0);
  std::uniform_int_distribution<int> hour_d(7, 20);
  std::uniform_int_distribution<int> min_d(0, 59);
  const char* demos[3] = {"average_adult", "older_adult", "wheelchair_user"};
  std::uniform_int_distribution<int> demo_d(0, 2);
  std::string trips_csv =
      "trip_id,origin_x,origin_y,dest_x,dest_y,depart_iso8601,demographic,"
      "access_mode,egress_mode,weight\n";
  for (int i = 0; i < n_trips; ++i) {
    char buf[256];
    int demo = demo_d(rng);
    std::snprintf(buf, sizeof buf,
                  "b%04d,%.1f,%.1f,%.1f,%.1f,2019-08-14T%02d:%02d:00,%s,%s,%s,"
                  "%.1f\n",
                  i, coord(rng), coord(rng), coord(rng), coord(rng),
                  hour_d(rng), min_d(rng), demos[demo],
                  demo == 2 ? "wheelchair" : "walk",
                  demo == 2 ? "wheelchair" : "walk", 1.0 + (i % 5));
    trips_csv += buf;
  }
  std::string trips_path = (fs::path(dir) / "trips.csv").string();
  write_file(trips_path, trips_csv);

  BenchBundle b;
  b.dir = dir;
  b.config.gtfs_path = gtfs.string();
  b.config.trips_path = trips_path;
  b.config.weather_path = weather_path;
  b.config.grid_path = grid_path;
  b.config.out_dir = (fs::path(dir) / "out").string();
  return b;
}

}  // namespace heatpath::fixtures
