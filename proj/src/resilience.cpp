#include "heatpath/resilience.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "heatpath/csv.hpp"
#include "heatpath/errors.hpp"

namespace heatpath {

namespace {
constexpr double kMileM = 1609.344;
}

TripContribution make_contribution(const Trajectory& traj,
                                   const HeatLedger& heat, double weight) {
  if (weight < 0.0)
    throw DomainError("trip '" + traj.trip_id + "': negative weight");
  TripContribution c;
  c.trip_id = traj.trip_id;
  c.weight = weight;
  c.flagged = heat.r_hi;
  for (std::size_t i = 0; i < traj.periods.size(); ++i) {
    const Period& p = traj.periods[i];
    if (p.conditioned) continue;
    if (p.asset.empty())
      throw DomainError("trip '" + traj.trip_id + "': period " +
                        std::to_string(i) + " (" + to_string(p.mode) +
                        ") has no asset reference");
    TripContribution::Part part;
    part.asset = p.asset;
    part.minutes = p.minutes();
    part.deficit_min = heat.periods[i].deficit_generated;
    c.parts.push_back(std::move(part));
  }
  return c;
}

std::map<AssetKey, AssetStats> accumulate(
    const std::vector<TripContribution>& trips) {
  std::map<AssetKey, AssetStats> stats;
  struct LengthAcc {
    double weighted_len = 0.0;
    double weight = 0.0;
  };
  std::map<AssetKey, LengthAcc> lengths;

  for (const auto& trip : trips) {
    std::set<AssetKey> touched;
    for (const auto& part : trip.parts) {
      AssetKey key{part.asset.kind, part.asset.id};
      AssetStats& s = stats[key];
      s.criticality_min += trip.weight * part.minutes;
      s.deficit_min += trip.weight * part.deficit_min;
      touched.insert(key);
      if (part.asset.kind == AssetTag::Kind::footpath) {
        LengthAcc& l = lengths[key];
        l.weighted_len += trip.weight * part.asset.length_m;
        l.weight += trip.weight;
      }
    }
    for (const auto& key : touched) {
      AssetStats& s = stats[key];
      s.incident_count += trip.weight;
      if (trip.flagged) s.flagged_count += trip.weight;
    }
  }

  for (auto& [key, s] : stats) {
    if (s.criticality_min > 0.0)
      s.exposure_per_min = s.deficit_min / s.criticality_min;
    if (s.incident_count > 0.0)
      s.vulnerability = s.flagged_count / s.incident_count;
    auto it = lengths.find(key);
    if (it != lengths.end() && it->second.weight > 0.0)
      s.length_m = it->second.weighted_len / it->second.weight;
  }
  return stats;
}

std::map<AssetKey, PriorityScore> prioritize(
    const std::map<AssetKey, AssetStats>& stats) {
  std::map<AssetKey, PriorityScore> scores;
  for (const auto& [key, s] : stats) {
    PriorityScore p;
    p.mitigation = s.exposure_per_min * s.criticality_min;
    p.adaptation = s.vulnerability * s.incident_count;
    scores[key] = p;
  }
  // Ranks within each kind on the reported values, descending, ties by id.
  for (AssetTag::Kind kind :
       {AssetTag::Kind::station, AssetTag::Kind::footpath}) {
    std::vector<const AssetKey*> keys;
    for (const auto& [key, s] : stats)
      if (key.kind == kind) keys.push_back(&key);
    auto rank_by = [&](auto value_of, auto assign) {
      std::vector<const AssetKey*> order = keys;
      std::stable_sort(order.begin(), order.end(),
                       [&](const AssetKey* a, const AssetKey* b) {
                         double va = value_of(*a), vb = value_of(*b);
                         if (va != vb) return va > vb;
                         return a->id < b->id;
                       });
      for (std::size_t i = 0; i < order.size(); ++i)
        assign(*order[i], static_cast<int>(i) + 1);
    };
    rank_by(
        [&](const AssetKey& k) {
          return reported_mitigation(k, stats.at(k), scores.at(k));
        },
        [&](const AssetKey& k, int r) { scores[k].rank_mitigation = r; });
    rank_by([&](const AssetKey& k) { return scores.at(k).adaptation; },
            [&](const AssetKey& k, int r) { scores[k].rank_adaptation = r; });
  }
  return scores;
}

double reported_criticality(const AssetKey& key, const AssetStats& s) {
  if (key.kind == AssetTag::Kind::footpath && s.length_m > 0.0)
    return s.criticality_min / (s.length_m / kMileM);
  return s.criticality_min;
}

double reported_mitigation(const AssetKey& key, const AssetStats& s,
                           const PriorityScore& p) {
  if (key.kind == AssetTag::Kind::footpath && s.length_m > 0.0)
    return p.mitigation / (s.length_m / kMileM);
  return p.mitigation;
}

namespace {
const char* kind_name(AssetTag::Kind k) {
  return k == AssetTag::Kind::station ? "station" : "footpath";
}
}  // namespace

void write_asset_scores_csv(const std::map<AssetKey, AssetStats>& stats,
                            const std::map<AssetKey, PriorityScore>& scores,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path, "cannot write asset scores");
  out << "kind,id,criticality,exposure,vulnerability,mitigation,adaptation,"
         "rank_mit,rank_adapt\n";
  for (const auto& [key, s] : stats) {
    const PriorityScore& p = scores.at(key);
    out << kind_name(key.kind) << "," << csv_escape(key.id) << ","
        << format_fixed(reported_criticality(key, s)) << ","
        << format_fixed(s.exposure_per_min) << ","
        << format_fixed(s.vulnerability) << ","
        << format_fixed(reported_mitigation(key, s, p)) << ","
        << format_fixed(p.adaptation) << "," << p.rank_mitigation << ","
        << p.rank_adaptation << "\n";
  }
}

void write_asset_scores_geojson(const std::map<AssetKey, AssetStats>& stats,
                                const std::map<AssetKey, PriorityScore>& scores,
                                const TransitNetwork& net,
                                const Projection& projection,
                                const std::string& path) {
  using nlohmann::json;
  json features = json::array();
  auto lonlat = [&](const Point& p) {
    double lat, lon;
    projection.to_lat_lon(p, lat, lon);
    return json::array({lon, lat});
  };
  auto stop_point = [&](const std::string& id) -> std::optional<Point> {
    auto it = net.stop_index.find(id);
    if (it == net.stop_index.end()) return std::nullopt;
    return net.stop(it->second).pos;
  };

  for (const auto& [key, s] : stats) {
    const PriorityScore& p = scores.at(key);
    json geom;
    if (key.kind == AssetTag::Kind::station) {
      auto pt = stop_point(key.id);
      if (!pt) continue;
      geom = {{"type", "Point"}, {"coordinates", lonlat(*pt)}};
    } else if (key.id.rfind("transfer:", 0) == 0) {
      std::string pair = key.id.substr(9);
      auto sep = pair.find("--");
      if (sep == std::string::npos) continue;
      auto a = stop_point(pair.substr(0, sep));
      auto b = stop_point(pair.substr(sep + 2));
      if (!a || !b) continue;
      geom = {{"type", "LineString"},
              {"coordinates", json::array({lonlat(*a), lonlat(*b)})}};
    } else {
      // ingress:/egress: approach legs are anchored at their stop
      auto sep = key.id.find(':');
      auto pt = sep == std::string::npos
                    ? std::nullopt
                    : stop_point(key.id.substr(sep + 1));
      if (!pt) continue;
      geom = {{"type", "Point"}, {"coordinates", lonlat(*pt)}};
    }
    json props = {
        {"kind", kind_name(key.kind)},
        {"id", key.id},
        {"criticality", reported_criticality(key, s)},
        {"exposure", s.exposure_per_min},
        {"vulnerability", s.vulnerability},
        {"mitigation", reported_mitigation(key, s, p)},
        {"adaptation", p.adaptation},
        {"rank_mit", p.rank_mitigation},
        {"rank_adapt", p.rank_adaptation},
    };
    features.push_back(
        {{"type", "Feature"}, {"geometry", geom}, {"properties", props}});
  }
  json doc = {{"type", "FeatureCollection"}, {"features", features}};
  std::ofstream out(path);
  if (!out) throw InputError(path, "cannot write geojson");
  out << doc.dump(2) << "\n";
}

}  // namespace heatpath
