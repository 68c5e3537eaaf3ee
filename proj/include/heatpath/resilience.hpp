#pragma once

#include <map>
#include <string>
#include <vector>

#include "heatpath/exposure.hpp"
#include "heatpath/network.hpp"
#include "heatpath/trajectory.hpp"

namespace heatpath {

struct AssetKey {
  AssetTag::Kind kind = AssetTag::Kind::station;
  std::string id;

  bool operator<(const AssetKey& o) const {
    if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
    return id < o.id;
  }
  bool operator==(const AssetKey& o) const {
    return kind == o.kind && id == o.id;
  }
};

struct AssetStats {
  double criticality_min = 0.0;  // weighted traveler-minutes on the asset
  double deficit_min = 0.0;      // weighted rest-deficit minutes generated
  double exposure_per_min = 0.0; // deficit per traveler-minute
  double vulnerability = 0.0;    // weighted share of touching trips flagged
  double incident_count = 0.0;   // weighted trips touching the asset
  double flagged_count = 0.0;    // weighted flagged trips touching the asset
  double length_m = 0.0;         // footpaths: weighted mean leg length
};

struct PriorityScore {
  double mitigation = 0.0;  // exposure x criticality
  double adaptation = 0.0;  // vulnerability x incident count
  int rank_mitigation = 0;  // 1-based, within the asset's kind
  int rank_adaptation = 0;
};

/// One trip's weighted footprint on the asset network: its non-conditioned
/// periods with their durations and generated deficits.
struct TripContribution {
  std::string trip_id;
  double weight = 1.0;
  bool flagged = false;
  struct Part {
    AssetTag asset;
    double minutes = 0.0;
    double deficit_min = 0.0;  // positive part of the period's exposure
  };
  std::vector<Part> parts;
};

/// Extracts the contribution of a simulated trip. Conditioned periods carry
/// no health risk and are excluded; every remaining period must carry an
/// asset reference (throws DomainError naming the trip otherwise).
TripContribution make_contribution(const Trajectory& traj,
                                   const HeatLedger& heat, double weight);

/// Aggregates weighted contributions per asset. Assets touched by no trip do
/// not appear.
std::map<AssetKey, AssetStats> accumulate(
    const std::vector<TripContribution>& trips);

/// Mitigation and adaptation prioritization scores with stable descending
/// ranks (per asset kind, asset-id tie-break).
std::map<AssetKey, PriorityScore> prioritize(
    const std::map<AssetKey, AssetStats>& stats);

/// CSV emission. Footpath criticality/mitigation are reported per mile;
/// station values are raw minutes.
void write_asset_scores_csv(const std::map<AssetKey, AssetStats>& stats,
                            const std::map<AssetKey, PriorityScore>& scores,
                            const std::string& path);

/// GeoJSON emission (stations and ingress/egress footpaths as points,
/// transfer footpaths as linestrings).
void write_asset_scores_geojson(const std::map<AssetKey, AssetStats>& stats,
                                const std::map<AssetKey, PriorityScore>& scores,
                                const TransitNetwork& net,
                                const Projection& projection,
                                const std::string& path);

/// Reported (per-mile normalized where applicable) values, as emitted.
double reported_criticality(const AssetKey& key, const AssetStats& s);
double reported_mitigation(const AssetKey& key, const AssetStats& s,
                           const PriorityScore& p);

}  // namespace heatpath
