#include "heatpath/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "heatpath/csv.hpp"
#include "heatpath/errors.hpp"

namespace heatpath {

namespace fs = std::filesystem;

void RunConfig::set(const std::string& key, const std::string& value) {
  auto num = [&]() {
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
      throw InputError("config value for '" + key + "' is not a number: '" +
                       value + "'");
    return v;
  };
  if (key == "gtfs") gtfs_path = value;
  else if (key == "trips") trips_path = value;
  else if (key == "weather") weather_path = value;
  else if (key == "grid") grid_path = value;
  else if (key == "workrest") workrest_path = value;
  else if (key == "frostbite") frostbite_path = value;
  else if (key == "catalog") catalog_path = value;
  else if (key == "categories") categories_path = value;
  else if (key == "out") out_dir = value;
  else if (key == "workers") workers = static_cast<int>(num());
  else if (key == "ledgers") write_ledgers = num() != 0.0;
  else if (key == "walk_speed_mps") router.walk_speed_mps = num();
  else if (key == "bike_speed_mps") router.bike_speed_mps = num();
  else if (key == "wheelchair_speed_mps") router.wheelchair_speed_mps = num();
  else if (key == "micromobility_speed_mps") router.micromobility_speed_mps = num();
  else if (key == "auto_speed_mps") router.auto_speed_mps = num();
  else if (key == "max_rounds") router.max_rounds = static_cast<int>(num());
  else if (key == "access_candidates") router.access_candidates = static_cast<int>(num());
  else if (key == "max_access_m") router.max_access_m = num();
  else if (key == "footpath_radius_m") footpath_radius_m = num();
  else if (key == "crs_lon0") projection.lon0 = num();
  else if (key == "crs_lat0") projection.lat0 = num();
  else if (key == "center_x") center_x = num();
  else if (key == "center_y") center_y = num();
  else if (key == "wait_posture") {
    if (value == "standing") sim.posture = WaitPosture::standing;
    else if (value == "seated") sim.posture = WaitPosture::seated;
    else throw InputError("wait_posture must be standing or seated");
  } else if (key == "sub80") {
    if (value == "simple") sim.thermal.sub80 = Sub80Policy::simple_formula;
    else if (value == "passthrough") sim.thermal.sub80 = Sub80Policy::passthrough;
    else throw InputError("sub80 must be simple or passthrough");
  } else if (key == "quantiles") {
    quantiles.clear();
    std::stringstream ss(value);
    std::string part;
    while (std::getline(ss, part, ',')) {
      double q = std::strtod(part.c_str(), nullptr);
      if (!(q > 0.0 && q < 1.0))
        throw InputError("quantiles must lie in (0, 1)");
      quantiles.push_back(q);
    }
    std::sort(quantiles.begin(), quantiles.end());
  } else {
    throw InputError("unknown config key '" + key + "'");
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open config");
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty() || trimmed[0] == '#') continue;
    auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw InputError(path + ":" + std::to_string(lineno),
                       "expected key=value");
    std::string key = trimmed.substr(0, eq);
    std::string value = trimmed.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    while (!value.empty() && value.front() == ' ') value.erase(value.begin());
    try {
      cfg.set(key, value);
    } catch (const InputError& e) {
      throw InputError(path + ":" + std::to_string(lineno), e.what());
    }
  }
  return cfg;
}

std::vector<ParsedRecord> load_trip_records(const std::string& path) {
  CsvFile file(path);
  auto& csv = file.reader();
  int c_id = csv.require("trip_id");
  int c_ox = csv.require("origin_x");
  int c_oy = csv.require("origin_y");
  int c_dx = csv.require("dest_x");
  int c_dy = csv.require("dest_y");
  int c_dep = csv.require("depart_iso8601");
  int c_demo = csv.require("demographic");
  int c_acc = csv.require("access_mode");
  int c_egr = csv.require("egress_mode");
  int c_w = csv.require("weight");
  std::vector<ParsedRecord> out;
  while (csv.next()) {
    ParsedRecord rec;
    try {
      rec.record.trip_id = csv.field(c_id);
      rec.record.origin = {csv.number(c_ox), csv.number(c_oy)};
      rec.record.dest = {csv.number(c_dx), csv.number(c_dy)};
      rec.record.depart = parse_iso8601(csv.field(c_dep));
      rec.record.demographic = parse_demographic(csv.field(c_demo));
      rec.record.access_mode = parse_mode(csv.field(c_acc));
      rec.record.egress_mode = parse_mode(csv.field(c_egr));
      rec.record.weight = csv.number(c_w);
      if (rec.record.weight < 0.0) throw InputError("negative weight");
      if (rec.record.access_mode == Mode::wait ||
          rec.record.access_mode == Mode::ride ||
          rec.record.egress_mode == Mode::wait ||
          rec.record.egress_mode == Mode::ride)
        throw InputError("access/egress mode must be a street mode");
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
      if (rec.record.trip_id.empty())
        rec.record.trip_id = "line_" + std::to_string(csv.line());
    }
    out.push_back(std::move(rec));
  }
  return out;
}

RunContext load_context(const RunConfig& cfg, const Stages& stages) {
  RunContext ctx;
  ctx.cfg = cfg;
  ctx.stages = stages;
  if (cfg.gtfs_path.empty()) throw InputError("no GTFS path configured");
  GtfsOptions gopts;
  gopts.projection = cfg.projection;
  gopts.footpath_radius_m = cfg.footpath_radius_m;
  ctx.net = load_gtfs(cfg.gtfs_path, gopts);

  if (stages.expose || stages.compare) {
    if (cfg.weather_path.empty())
      throw InputError("exposure stages need a weather series (--weather)");
    if (cfg.grid_path.empty())
      throw InputError("exposure stages need a temperature grid (--grid)");
    WeatherSeries series = load_weather_series(cfg.weather_path);
    Grid lst = read_ascii_grid(cfg.grid_path);
    double cx = cfg.center_x;
    double cy = cfg.center_y;
    if (std::isnan(cx)) cx = lst.xll_m + lst.ncols * lst.cellsize_m / 2.0;
    if (std::isnan(cy)) cy = lst.yll_m + lst.nrows * lst.cellsize_m / 2.0;
    Grid offsets = build_offset_grid(lst, cx, cy);
    ctx.field.emplace(std::move(series), std::move(offsets));
  }
  if (!cfg.workrest_path.empty())
    ctx.workrest = WorkRestTable::load(cfg.workrest_path);
  if (!cfg.frostbite_path.empty())
    ctx.frostbite = FrostbiteTable::load(cfg.frostbite_path);
  if (!cfg.catalog_path.empty()) ctx.catalog = MetCatalog::load(cfg.catalog_path);
  if (!cfg.categories_path.empty())
    ctx.categories = HeatCategoryTable::load(cfg.categories_path);
  return ctx;
}

TripOutcome process_record(const RunContext& ctx, const ParsedRecord& rec) {
  TripOutcome out;
  out.record = rec.record;
  if (!rec.ok) {
    out.status = TripOutcome::Status::error;
    out.error = rec.error;
    return out;
  }
  try {
    auto itinerary =
        plan_trip(ctx.net, rec.record.origin, rec.record.dest,
                  rec.record.depart, rec.record.access_mode,
                  rec.record.egress_mode, ctx.cfg.router);
    if (!itinerary) {
      out.status = TripOutcome::Status::unreachable;
      return out;
    }
    out.trajectory =
        trace_trajectory(ctx.net, *itinerary, rec.record.trip_id);
    out.total_min = (itinerary->arrive - itinerary->depart) / 60.0;
    out.transfers = itinerary->transfers();
    for (const auto& p : out.trajectory.periods) {
      if (p.mode == Mode::wait) out.wait_min += p.minutes();
      else if (p.conditioned) out.ride_min += p.minutes();
      else out.walk_min += p.minutes();
    }
    if (ctx.field) {
      out.heat = simulate_heat(out.trajectory, rec.record.demographic,
                               *ctx.field, ctx.catalog, ctx.workrest,
                               ctx.cfg.sim);
      out.chill =
          simulate_chill(out.trajectory, *ctx.field, ctx.frostbite, ctx.cfg.sim);
    }
    if (ctx.stages.compare && ctx.field) {
      AdditiveScore st = additive_exposure(out.trajectory, *ctx.field,
                                           ctx.categories,
                                           ctx.cfg.sim.thermal);
      out.cmp_spatio_temporal = {out.total_min, st.total, false, true};
      auto base = dijkstra_route(ctx.net, rec.record.origin, rec.record.dest,
                                 rec.record.depart, rec.record.access_mode,
                                 rec.record.egress_mode, ctx.cfg.router);
      if (base) {
        AdditiveScore bs = additive_exposure(*base, *ctx.field, ctx.categories,
                                             ctx.cfg.sim.thermal);
        out.cmp_baseline = {base->periods.empty()
                                ? 0.0
                                : (base->arrive() - base->depart()) / 60.0,
                            bs.total, false, true};
      } else {
        out.cmp_baseline.ok = false;
      }
    }
  } catch (const std::exception& e) {
    out = TripOutcome{};
    out.record = rec.record;
    out.status = TripOutcome::Status::error;
    out.error = e.what();
  }
  return out;
}

std::vector<TripOutcome> process_records(const RunContext& ctx,
                                         const std::vector<ParsedRecord>& recs,
                                         int workers) {
  std::vector<TripOutcome> out(recs.size());
#ifdef _OPENMP
  if (workers < 1) workers = omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(recs.size());
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::int64_t i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] =
        process_record(ctx, recs[static_cast<std::size_t>(i)]);
#else
  (void)workers;
  for (std::size_t i = 0; i < recs.size(); ++i)
    out[i] = process_record(ctx, recs[i]);
#endif
  return out;
}

std::vector<TripOutcome> process_records_serial(
    const RunContext& ctx, const std::vector<ParsedRecord>& recs) {
  std::vector<TripOutcome> out;
  out.reserve(recs.size());
  for (const auto& r : recs) out.push_back(process_record(ctx, r));
  return out;
}

namespace {

const char* status_name(TripOutcome::Status s) {
  switch (s) {
    case TripOutcome::Status::ok: return "ok";
    case TripOutcome::Status::unreachable: return "unreachable";
    case TripOutcome::Status::error: return "error";
  }
  return "?";
}

std::string month_key(EpochSeconds t) {
  CivilTime c = epoch_to_civil(t);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", c.year, c.month);
  return buf;
}

int hour_key(EpochSeconds t) { return epoch_to_civil(t).hour; }

}  // namespace

void write_per_trip_csv(const std::vector<TripOutcome>& outcomes,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path, "cannot write per-trip output");
  out << "trip_id,status,depart,month,hour,demographic,weight,total_min,"
         "wait_min,walk_min,ride_min,transfers,rest_deficit_min,e_hi_min,"
         "peak_deficit_min,flagged_heat,post_flag_exposure_min,e_wc,"
         "flagged_chill,error\n";
  for (const auto& o : outcomes) {
    out << csv_escape(o.record.trip_id) << "," << status_name(o.status) << ","
        << format_iso8601(o.record.depart) << "," << month_key(o.record.depart)
        << "," << hour_key(o.record.depart) << ","
        << to_string(o.record.demographic) << ","
        << format_fixed(o.record.weight) << "," << format_fixed(o.total_min)
        << "," << format_fixed(o.wait_min) << "," << format_fixed(o.walk_min)
        << "," << format_fixed(o.ride_min) << "," << o.transfers << ","
        << format_fixed(o.heat.deficit_generated) << ","
        << format_fixed(o.heat.e_hi) << ","
        << format_fixed(o.heat.peak_deficit) << "," << (o.heat.r_hi ? 1 : 0)
        << "," << format_fixed(o.heat.post_flag_exposure_min) << ","
        << format_fixed(o.chill.e_wc) << "," << (o.chill.r_wc ? 1 : 0) << ","
        << csv_escape(o.error) << "\n";
  }
}

void write_routes_csv(const std::vector<TripOutcome>& outcomes,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path, "cannot write routes output");
  out << "trip_id,status,depart,total_min,wait_min,walk_min,ride_min,"
         "transfers,error\n";
  for (const auto& o : outcomes) {
    out << csv_escape(o.record.trip_id) << "," << status_name(o.status) << ","
        << format_iso8601(o.record.depart) << "," << format_fixed(o.total_min)
        << "," << format_fixed(o.wait_min) << "," << format_fixed(o.walk_min)
        << "," << format_fixed(o.ride_min) << "," << o.transfers << ","
        << csv_escape(o.error) << "\n";
  }
}

namespace {

struct SumRow {
  bool ok = false;
  bool counted = false;  // routed rows enter the weighted statistics
  TripOutcome::Status status = TripOutcome::Status::ok;
  EpochSeconds depart = 0;
  double weight = 0.0;
  double deficit = 0.0;
  bool flagged = false;
  bool chill_flagged = false;
};

Summary aggregate(const std::vector<SumRow>& rows) {
  Summary s;
  std::vector<std::pair<double, double>> deficits;  // (value, weight)
  std::map<std::string, SummaryBucket> months;
  std::map<int, SummaryBucket> hours;
  for (const auto& r : rows) {
    ++s.records;
    if (r.status == TripOutcome::Status::error) ++s.errors;
    if (r.status == TripOutcome::Status::unreachable) ++s.unreachable;
    if (!r.counted) continue;
    ++s.routed;
    s.total_weight += r.weight;
    if (r.flagged) s.flagged_weight += r.weight;
    if (r.chill_flagged) s.chill_flagged_weight += r.weight;
    deficits.emplace_back(r.deficit, r.weight);
    SummaryBucket& m = months[month_key(r.depart)];
    m.key = month_key(r.depart);
    m.weight += r.weight;
    if (r.flagged) m.flagged_weight += r.weight;
    int h = hour_key(r.depart);
    SummaryBucket& hb = hours[h];
    hb.key = std::to_string(h);
    hb.weight += r.weight;
    if (r.flagged) hb.flagged_weight += r.weight;
  }
  if (s.total_weight > 0.0) {
    double sum = 0.0;
    for (const auto& [v, w] : deficits) sum += v * w;
    s.deficit_mean = sum / s.total_weight;
    double var = 0.0;
    for (const auto& [v, w] : deficits)
      var += w * (v - s.deficit_mean) * (v - s.deficit_mean);
    s.deficit_sd = std::sqrt(var / s.total_weight);
    std::sort(deficits.begin(), deficits.end());
    double acc = 0.0;
    for (const auto& [v, w] : deficits) {
      acc += w;
      if (acc >= s.total_weight / 2.0) {
        s.deficit_median = v;
        break;
      }
    }
  }
  for (auto& [k, b] : months) s.by_month.push_back(b);
  for (auto& [k, b] : hours) s.by_hour.push_back(b);
  return s;
}

}  // namespace

Summary summarize_outcomes(const std::vector<TripOutcome>& outcomes) {
  std::vector<SumRow> rows;
  rows.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    SumRow r;
    r.status = o.status;
    r.ok = o.status == TripOutcome::Status::ok;
    r.counted = r.ok;
    r.depart = o.record.depart;
    r.weight = o.record.weight;
    r.deficit = o.heat.deficit_generated;
    r.flagged = o.heat.r_hi;
    r.chill_flagged = o.chill.r_wc;
    rows.push_back(r);
  }
  return aggregate(rows);
}

Summary summarize_per_trip_csv(const std::string& path) {
  CsvFile file(path);
  auto& csv = file.reader();
  int c_status = csv.require("status");
  int c_dep = csv.require("depart");
  int c_w = csv.require("weight");
  int c_def = csv.require("rest_deficit_min");
  int c_flag = csv.require("flagged_heat");
  int c_chill = csv.require("flagged_chill");
  std::vector<SumRow> rows;
  while (csv.next()) {
    SumRow r;
    const std::string& st = csv.field(c_status);
    r.status = st == "ok" ? TripOutcome::Status::ok
               : st == "unreachable" ? TripOutcome::Status::unreachable
                                     : TripOutcome::Status::error;
    r.ok = r.status == TripOutcome::Status::ok;
    r.counted = r.ok;
    r.depart = parse_iso8601(csv.field(c_dep));
    r.weight = csv.number(c_w);
    r.deficit = csv.number(c_def);
    r.flagged = csv.field(c_flag) == "1";
    r.chill_flagged = csv.field(c_chill) == "1";
    rows.push_back(r);
  }
  return aggregate(rows);
}

std::string format_summary(const Summary& s) {
  std::ostringstream out;
  auto pct = [&](double part) {
    return s.total_weight > 0.0
               ? format_fixed(100.0 * part / s.total_weight, 2)
               : std::string("0.00");
  };
  out << "records " << s.records << " routed " << s.routed << " unreachable "
      << s.unreachable << " errors " << s.errors << "\n";
  out << "weighted trips " << format_fixed(s.total_weight, 2) << "\n";
  out << "heat flagged " << pct(s.flagged_weight) << "% ("
      << format_fixed(s.flagged_weight, 2) << ")\n";
  out << "chill flagged " << pct(s.chill_flagged_weight) << "% ("
      << format_fixed(s.chill_flagged_weight, 2) << ")\n";
  out << "rest deficit min: mean " << format_fixed(s.deficit_mean, 4)
      << " median " << format_fixed(s.deficit_median, 4) << " sd "
      << format_fixed(s.deficit_sd, 4) << "\n";
  out << "by month:\n";
  for (const auto& b : s.by_month)
    out << "  " << b.key << "  weight " << format_fixed(b.weight, 2)
        << "  flagged "
        << (b.weight > 0.0
                ? format_fixed(100.0 * b.flagged_weight / b.weight, 2)
                : std::string("0.00"))
        << "%\n";
  out << "by hour:\n";
  for (const auto& b : s.by_hour)
    out << "  " << b.key << "  weight " << format_fixed(b.weight, 2)
        << "  flagged "
        << (b.weight > 0.0
                ? format_fixed(100.0 * b.flagged_weight / b.weight, 2)
                : std::string("0.00"))
        << "%\n";
  return out.str();
}

namespace {

std::string sanitize_filename(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
        c == '.')
      out.push_back(c);
    else
      out.push_back('_');
  }
  return out.empty() ? "trip" : out;
}

std::string config_digest(const RunConfig& cfg) {
  std::ostringstream ss;
  ss << cfg.gtfs_path << '|' << cfg.trips_path << '|' << cfg.weather_path
     << '|' << cfg.grid_path << '|' << cfg.workrest_path << '|'
     << cfg.frostbite_path << '|' << cfg.catalog_path << '|'
     << cfg.categories_path << '|' << cfg.router.walk_speed_mps << '|'
     << cfg.router.bike_speed_mps << '|' << cfg.router.wheelchair_speed_mps
     << '|' << cfg.router.micromobility_speed_mps << '|'
     << cfg.router.auto_speed_mps << '|' << cfg.router.max_rounds << '|'
     << cfg.router.access_candidates << '|' << cfg.router.max_access_m << '|'
     << cfg.footpath_radius_m << '|' << cfg.projection.lon0 << '|'
     << cfg.projection.lat0 << '|' << static_cast<int>(cfg.sim.posture) << '|'
     << static_cast<int>(cfg.sim.thermal.sub80);
  for (double q : cfg.quantiles) ss << '|' << q;
  return string_hash(ss.str());
}

}  // namespace

long run(const RunConfig& cfg, const Stages& stages) {
  RunContext ctx = load_context(cfg, stages);
  if (cfg.trips_path.empty()) throw InputError("no trip records configured");
  std::vector<ParsedRecord> records = load_trip_records(cfg.trips_path);
  std::vector<TripOutcome> outcomes =
      process_records(ctx, records, cfg.workers);

  fs::create_directories(cfg.out_dir);
  std::vector<std::pair<std::string, std::string>> emitted;  // (name, path)
  auto emit = [&](const std::string& name) {
    std::string path = (fs::path(cfg.out_dir) / name).string();
    emitted.emplace_back(name, path);
    return path;
  };

  if (stages.expose || stages.compare || stages.score) {
    write_per_trip_csv(outcomes, emit("per_trip.csv"));
    if (cfg.write_ledgers) {
      fs::create_directories(fs::path(cfg.out_dir) / "ledgers");
      for (const auto& o : outcomes) {
        if (o.status != TripOutcome::Status::ok) continue;
        std::string name =
            "ledgers/" + sanitize_filename(o.record.trip_id) + ".csv";
        write_ledger_csv(o.trajectory, o.heat, o.chill, emit(name));
      }
    }
  } else {
    write_routes_csv(outcomes, emit("routes.csv"));
  }

  if (stages.score) {
    std::vector<TripContribution> contributions;
    for (const auto& o : outcomes) {
      if (o.status != TripOutcome::Status::ok) continue;
      contributions.push_back(
          make_contribution(o.trajectory, o.heat, o.record.weight));
    }
    auto stats = accumulate(contributions);
    auto scores = prioritize(stats);
    write_asset_scores_csv(stats, scores, emit("asset_scores.csv"));
    write_asset_scores_geojson(stats, scores, ctx.net, cfg.projection,
                               emit("asset_scores.geojson"));
  }

  if (stages.compare) {
    std::vector<TripComparison> cmp;
    for (const auto& o : outcomes) {
      if (o.status != TripOutcome::Status::ok) continue;
      TripComparison t;
      t.trip_id = o.record.trip_id;
      t.weight = o.record.weight;
      t.baseline = o.cmp_baseline;
      t.spatio_temporal = o.cmp_spatio_temporal;
      t.dynamic_model = {o.total_min, o.heat.deficit_generated, o.heat.r_hi,
                         true};
      cmp.push_back(std::move(t));
    }
    CompareReport report = compare_report(std::move(cmp), cfg.quantiles);
    write_compare_csv(report, emit("compare.csv"));
  }

  Summary summary = summarize_outcomes(outcomes);
  {
    std::ofstream out(emit("summary.txt"));
    out << format_summary(summary);
  }

  // Manifest last, covering everything emitted before it.
  {
    using nlohmann::json;
    json files = json::array();
    for (const auto& [name, path] : emitted)
      files.push_back({{"name", name}, {"hash", file_content_hash(path)}});
    json doc = {
        {"config_hash", config_digest(cfg)},
        {"counts",
         {{"records", summary.records},
          {"routed", summary.routed},
          {"unreachable", summary.unreachable},
          {"errors", summary.errors}}},
        {"files", files},
    };
    std::ofstream out((fs::path(cfg.out_dir) / "manifest.json").string());
    out << doc.dump(2) << "\n";
  }
  return summary.errors;
}

}  // namespace heatpath
