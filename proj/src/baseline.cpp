#include "heatpath/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

#include "heatpath/csv.hpp"
#include "heatpath/errors.hpp"

namespace heatpath {

std::string to_string(HeatCategory c) {
  switch (c) {
    case HeatCategory::safe: return "safe";
    case HeatCategory::caution: return "caution";
    case HeatCategory::extreme_caution: return "extreme_caution";
    case HeatCategory::danger: return "danger";
  }
  return "?";
}

HeatCategory parse_heat_category(const std::string& s) {
  if (s == "safe") return HeatCategory::safe;
  if (s == "caution") return HeatCategory::caution;
  if (s == "extreme_caution") return HeatCategory::extreme_caution;
  if (s == "danger") return HeatCategory::danger;
  throw InputError("unknown heat category '" + s + "'");
}

namespace {

constexpr double kMinutesPerSecond = 1.0 / 60.0;

// NWS heat-category edges with unit factor steps.
constexpr const char* kDefaultCategoriesCsv =
    R"(hi_low_f,hi_high_f,category,factor_per_min
-1e9,80,safe,0
80,90,caution,1
90,103,extreme_caution,2
103,1e9,danger,3
)";

}  // namespace

HeatCategoryTable HeatCategoryTable::embedded_default() {
  return parse("<embedded heat categories>", kDefaultCategoriesCsv);
}

HeatCategoryTable HeatCategoryTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open heat categories");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(path, buf.str());
}

HeatCategoryTable HeatCategoryTable::parse(const std::string& label,
                                           const std::string& csv_text) {
  std::istringstream in(csv_text);
  CsvReader csv(label, in);
  int c_low = csv.require("hi_low_f");
  int c_high = csv.require("hi_high_f");
  int c_cat = csv.require("category");
  int c_factor = csv.require("factor_per_min");
  HeatCategoryTable table;
  while (csv.next()) {
    HeatBand band;
    band.hi_low_f = csv.number(c_low);
    band.hi_high_f = csv.number(c_high);
    band.category = parse_heat_category(csv.field(c_cat));
    band.factor_per_min = csv.number(c_factor);
    if (band.factor_per_min < 0.0)
      throw InputError(csv.where(), "factors must be non-negative");
    table.bands_.push_back(band);
  }
  if (table.bands_.empty()) throw InputError(label, "empty category table");
  std::sort(table.bands_.begin(), table.bands_.end(),
            [](const HeatBand& a, const HeatBand& b) {
              return a.hi_low_f < b.hi_low_f;
            });
  for (std::size_t i = 0; i < table.bands_.size(); ++i) {
    if (!(table.bands_[i].hi_high_f > table.bands_[i].hi_low_f))
      throw InputError(label, "empty heat-category band");
    if (i > 0) {
      if (table.bands_[i].hi_low_f != table.bands_[i - 1].hi_high_f)
        throw InputError(label, "heat-category bands are not contiguous");
      if (table.bands_[i].factor_per_min < table.bands_[i - 1].factor_per_min)
        throw InputError(label, "factors must not decrease with severity");
    }
  }
  return table;
}

const HeatBand& HeatCategoryTable::band_for(double hi) const {
  if (hi < bands_.front().hi_low_f) return bands_.front();
  for (const auto& b : bands_) {
    if (hi >= b.hi_low_f && hi < b.hi_high_f) return b;
  }
  return bands_.back();
}

std::optional<Trajectory> dijkstra_route(const TransitNetwork& net,
                                         Point origin, Point dest,
                                         EpochSeconds depart, Mode access_mode,
                                         Mode egress_mode,
                                         const RouterOptions& opts) {
  // Nodes: stops, plus virtual origin (n) and destination (n + 1).
  const int n = static_cast<int>(net.stops.size());
  const int src = n;
  const int dst = n + 1;

  struct Edge {
    int to = -1;
    int cost_s = 0;
    Mode mode = Mode::walk;
    bool ride = false;
  };
  std::vector<std::vector<Edge>> adj(static_cast<std::size_t>(n) + 2);

  const double access_speed = opts.speed_for(access_mode);
  const double egress_speed = opts.speed_for(egress_mode);
  auto seconds = [](double meters, double speed) {
    return static_cast<int>(std::llround(meters / speed));
  };

  for (int s = 0; s < n; ++s) {
    double da = distance_m(origin, net.stop(s).pos);
    if (da <= opts.max_access_m)
      adj[static_cast<std::size_t>(src)].push_back(
          {s, seconds(da, access_speed), access_mode, false});
    double de = distance_m(net.stop(s).pos, dest);
    if (de <= opts.max_access_m)
      adj[static_cast<std::size_t>(s)].push_back(
          {dst, seconds(de, egress_speed), egress_mode, false});
  }
  double direct = distance_m(origin, dest);
  if (direct <= opts.max_access_m)
    adj[static_cast<std::size_t>(src)].push_back(
        {dst, seconds(direct, access_speed), access_mode, false});

  for (const auto& fp : net.footpaths)
    adj[static_cast<std::size_t>(fp.from)].push_back(
        {fp.to, seconds(fp.length_m, opts.walk_speed_mps), Mode::walk, false});

  // Ride edges: per-pattern minimum scheduled segment time.
  for (const auto& pat : net.patterns) {
    for (std::size_t pos = 0; pos + 1 < pat.stops.size(); ++pos) {
      int best = std::numeric_limits<int>::max();
      for (int t : pat.trips) {
        const TripSchedule& trip = net.trips[static_cast<std::size_t>(t)];
        int seg = trip.times[pos + 1].arrival_s - trip.times[pos].departure_s;
        best = std::min(best, seg);
      }
      if (best < std::numeric_limits<int>::max())
        adj[static_cast<std::size_t>(pat.stops[pos])].push_back(
            {pat.stops[pos + 1], std::max(best, 0), Mode::ride, true});
    }
  }

  // Dijkstra with (distance, node) ordering for deterministic ties.
  const long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> dist(static_cast<std::size_t>(n) + 2, inf);
  std::vector<int> parent(static_cast<std::size_t>(n) + 2, -1);
  std::vector<int> parent_edge(static_cast<std::size_t>(n) + 2, -1);
  using QItem = std::pair<long long, int>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> queue;
  dist[static_cast<std::size_t>(src)] = 0;
  queue.push({0, src});
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    if (u == dst) break;
    const auto& edges = adj[static_cast<std::size_t>(u)];
    for (std::size_t e = 0; e < edges.size(); ++e) {
      long long nd = d + edges[e].cost_s;
      int v = edges[e].to;
      if (nd < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = nd;
        parent[static_cast<std::size_t>(v)] = u;
        parent_edge[static_cast<std::size_t>(v)] = static_cast<int>(e);
        queue.push({nd, v});
      }
    }
  }
  if (dist[static_cast<std::size_t>(dst)] >= inf) return std::nullopt;

  // Recover the node path.
  std::vector<int> path;
  for (int v = dst; v != -1; v = parent[static_cast<std::size_t>(v)])
    path.push_back(v);
  std::reverse(path.begin(), path.end());

  auto node_pos = [&](int v) -> Point {
    if (v == src) return origin;
    if (v == dst) return dest;
    return net.stop(v).pos;
  };

  Trajectory traj;
  traj.trip_id = "baseline";
  EpochSeconds t = depart;
  for (std::size_t i = 1; i < path.size(); ++i) {
    int v = path[i];
    int u = parent[static_cast<std::size_t>(v)];
    const Edge& edge =
        adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(
            parent_edge[static_cast<std::size_t>(v)])];
    if (edge.cost_s <= 0) continue;
    Period p;
    p.start = t;
    p.duration_s = edge.cost_s;
    p.mode = edge.mode;
    p.conditioned = mode_conditioned(edge.mode);
    p.geometry = Period::Geometry::segment;
    p.from = node_pos(u);
    p.to = node_pos(v);
    // Merge consecutive ride segments into one period, tracking via stops.
    if (edge.ride && !traj.periods.empty() &&
        traj.periods.back().mode == Mode::ride) {
      Period& last = traj.periods.back();
      last.duration_s += p.duration_s;
      last.to = p.to;
      last.knots.push_back({last.duration_s, p.to});
    } else {
      if (edge.ride) {
        p.geometry = Period::Geometry::knots;
        p.knots.push_back({0, p.from});
        p.knots.push_back({p.duration_s, p.to});
      }
      traj.periods.push_back(std::move(p));
    }
    t += edge.cost_s;
  }
  traj.validate();
  return traj;
}

AdditiveScore additive_exposure(const Trajectory& traj,
                                const TemperatureField& field,
                                const HeatCategoryTable& categories,
                                const ThermalOptions& thermal) {
  AdditiveScore score;
  for (const auto& period : traj.periods) {
    double fm = 0.0;
    HeatCategory top = HeatCategory::safe;
    if (!period.conditioned) {
      if (period.start < field.start() || period.end() > field.end())
        throw DomainError("trip '" + traj.trip_id +
                          "': period outside the weather series span");
      for (int sec = 0; sec < period.duration_s; ++sec) {
        const Point pos = period.position_at(sec);
        const WeatherSample ws =
            field.sample(pos.x, pos.y, period.start + sec);
        const HeatBand& band = categories.band_for(heat_index(ws, thermal));
        fm += band.factor_per_min * kMinutesPerSecond;
        top = std::max(top, band.category);
      }
    }
    score.period_factor_minutes.push_back(fm);
    score.period_top_category.push_back(top);
    score.total += fm;
  }
  return score;
}

namespace {

// Nearest-rank quantile over weighted scores.
std::vector<double> quantile_edges(std::vector<std::pair<double, double>> wv,
                                   const std::vector<double>& quantiles) {
  std::vector<double> edges;
  if (wv.empty()) return edges;
  std::sort(wv.begin(), wv.end());
  double total = 0.0;
  for (const auto& [v, w] : wv) total += w;
  for (double q : quantiles) {
    double target = q * total;
    double acc = 0.0;
    double edge = wv.back().first;
    for (const auto& [v, w] : wv) {
      acc += w;
      if (acc >= target) {
        edge = v;
        break;
      }
    }
    edges.push_back(edge);
  }
  return edges;
}

// A trip is flagged when its score is positive and strictly above the top
// quantile edge.
bool additive_flag(double score, const std::vector<double>& edges) {
  if (edges.empty()) return false;
  return score > 0.0 && score > edges.back();
}

}  // namespace

CompareReport compare_report(std::vector<TripComparison> trips,
                             const std::vector<double>& quantiles) {
  CompareReport report;
  std::vector<std::pair<double, double>> base_scores, st_scores;
  for (const auto& t : trips) {
    if (t.baseline.ok) base_scores.emplace_back(t.baseline.score, t.weight);
    if (t.spatio_temporal.ok)
      st_scores.emplace_back(t.spatio_temporal.score, t.weight);
  }
  report.baseline_edges = quantile_edges(std::move(base_scores), quantiles);
  report.spatio_temporal_edges =
      quantile_edges(std::move(st_scores), quantiles);

  double w_total = 0.0, w_base = 0.0, w_st = 0.0, w_dyn = 0.0;
  for (auto& t : trips) {
    t.baseline.flagged =
        t.baseline.ok && additive_flag(t.baseline.score, report.baseline_edges);
    t.spatio_temporal.flagged =
        t.spatio_temporal.ok &&
        additive_flag(t.spatio_temporal.score, report.spatio_temporal_edges);
    w_total += t.weight;
    if (t.baseline.flagged) w_base += t.weight;
    if (t.spatio_temporal.flagged) w_st += t.weight;
    if (t.dynamic_model.ok && t.dynamic_model.flagged) w_dyn += t.weight;
  }
  if (w_total > 0.0) {
    report.flagged_pct_baseline = 100.0 * w_base / w_total;
    report.flagged_pct_spatio_temporal = 100.0 * w_st / w_total;
    report.flagged_pct_dynamic = 100.0 * w_dyn / w_total;
  }
  report.trips = std::move(trips);
  return report;
}

void write_compare_csv(const CompareReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path, "cannot write compare report");
  out << "trip_id,method,total_time_min,score,flagged\n";
  auto row = [&](const std::string& id, const char* method,
                 const MethodResult& m) {
    if (!m.ok) return;
    out << csv_escape(id) << "," << method << "," << format_fixed(m.total_min)
        << "," << format_fixed(m.score) << "," << (m.flagged ? 1 : 0) << "\n";
  };
  for (const auto& t : report.trips) {
    row(t.trip_id, "baseline", t.baseline);
    row(t.trip_id, "spatio_temporal", t.spatio_temporal);
    row(t.trip_id, "dynamic", t.dynamic_model);
  }
}

}  // namespace heatpath
