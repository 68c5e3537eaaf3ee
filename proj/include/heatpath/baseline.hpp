#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heatpath/field.hpp"
#include "heatpath/network.hpp"
#include "heatpath/router.hpp"
#include "heatpath/trajectory.hpp"

namespace heatpath {

enum class HeatCategory { safe, caution, extreme_caution, danger };

std::string to_string(HeatCategory c);
HeatCategory parse_heat_category(const std::string& s);

struct HeatBand {
  double hi_low_f = 0.0;
  double hi_high_f = 0.0;
  HeatCategory category = HeatCategory::safe;
  double factor_per_min = 0.0;
};

/// Heat-index bands with per-minute impact factors, for the additive
/// comparison methods.
class HeatCategoryTable {
 public:
  static HeatCategoryTable embedded_default();
  static HeatCategoryTable load(const std::string& path);
  static HeatCategoryTable parse(const std::string& label,
                                 const std::string& csv);

  const HeatBand& band_for(double hi) const;
  const std::vector<HeatBand>& bands() const { return bands_; }

 private:
  std::vector<HeatBand> bands_;
};

/// Static spatial shortest path over the transit graph (footpaths plus
/// per-pattern minimum scheduled segment times): walk and ride legs only,
/// no timetable, hence no waits. Times in the returned trajectory run
/// contiguously from `depart`.
std::optional<Trajectory> dijkstra_route(const TransitNetwork& net,
                                         Point origin, Point dest,
                                         EpochSeconds depart, Mode access_mode,
                                         Mode egress_mode,
                                         const RouterOptions& opts = {});

struct AdditiveScore {
  double total = 0.0;  // sum of factor x minutes
  std::vector<double> period_factor_minutes;
  std::vector<HeatCategory> period_top_category;
};

/// Per-minute accumulation of the current band's factor, no restoration or
/// clamping. Conditioned periods contribute nothing.
AdditiveScore additive_exposure(const Trajectory& traj,
                                const TemperatureField& field,
                                const HeatCategoryTable& categories,
                                const ThermalOptions& thermal = {});

struct MethodResult {
  double total_min = 0.0;
  double score = 0.0;
  bool flagged = false;
  bool ok = true;
};

struct TripComparison {
  std::string trip_id;
  double weight = 1.0;
  MethodResult baseline;         // Dijkstra + additive
  MethodResult spatio_temporal;  // timetable routing + additive
  MethodResult dynamic_model;    // timetable routing + cumulative
};

struct CompareReport {
  std::vector<TripComparison> trips;
  // Weighted flagged percentages per method.
  double flagged_pct_baseline = 0.0;
  double flagged_pct_spatio_temporal = 0.0;
  double flagged_pct_dynamic = 0.0;
  // The additive risk-level edges actually used (score values).
  std::vector<double> baseline_edges;
  std::vector<double> spatio_temporal_edges;
};

/// Assigns quantile-based risk levels to the two additive methods (a trip is
/// flagged when its score sits in the top bucket and is positive; the
/// dynamic flag comes from the ledger) and computes weighted percentages.
CompareReport compare_report(std::vector<TripComparison> trips,
                             const std::vector<double>& quantiles = {0.25, 0.5,
                                                                     0.75});

void write_compare_csv(const CompareReport& report, const std::string& path);

}  // namespace heatpath
