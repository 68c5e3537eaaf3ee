#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heatpath/activity.hpp"
#include "heatpath/baseline.hpp"
#include "heatpath/exposure.hpp"
#include "heatpath/field.hpp"
#include "heatpath/gtfs.hpp"
#include "heatpath/network.hpp"
#include "heatpath/resilience.hpp"
#include "heatpath/router.hpp"

namespace heatpath {

/// Which pipeline stages a CLI subcommand runs.
struct Stages {
  bool route = true;
  bool expose = false;
  bool score = false;
  bool compare = false;
};

struct RunConfig {
  std::string gtfs_path;
  std::string trips_path;
  std::string weather_path;
  std::string grid_path;
  std::string workrest_path;    // empty = embedded default
  std::string frostbite_path;   // empty = embedded default
  std::string catalog_path;     // empty = embedded default
  std::string categories_path;  // empty = embedded default
  std::string out_dir = "out";
  int workers = 1;
  bool write_ledgers = true;
  Projection projection;
  double footpath_radius_m = 500.0;
  RouterOptions router;
  SimOptions sim;
  std::vector<double> quantiles = {0.25, 0.5, 0.75};
  // Offset-grid reference point; NaN means the grid's geometric center.
  double center_x = std::numeric_limits<double>::quiet_NaN();
  double center_y = std::numeric_limits<double>::quiet_NaN();

  /// Applies one `key=value` setting; throws InputError for unknown keys.
  void set(const std::string& key, const std::string& value);
};

/// Flat key=value file (# comments, blank lines allowed).
RunConfig load_config(const std::string& path);

/// One survey trip record (projected coordinates, expansion weight).
struct TripRecord {
  std::string trip_id;
  Point origin;
  Point dest;
  EpochSeconds depart = 0;
  Demographic demographic = Demographic::average_adult;
  Mode access_mode = Mode::walk;
  Mode egress_mode = Mode::walk;
  double weight = 1.0;
};

/// A record or its parse failure (corrupt records must not sink the batch).
struct ParsedRecord {
  TripRecord record;
  bool ok = true;
  std::string error;
};

std::vector<ParsedRecord> load_trip_records(const std::string& path);

/// Immutable shared inputs for a batch.
struct RunContext {
  RunConfig cfg;
  TransitNetwork net;
  std::optional<TemperatureField> field;
  MetCatalog catalog = MetCatalog::embedded_default();
  WorkRestTable workrest = WorkRestTable::embedded_default();
  FrostbiteTable frostbite = FrostbiteTable::embedded_default();
  HeatCategoryTable categories = HeatCategoryTable::embedded_default();
  Stages stages;
};

RunContext load_context(const RunConfig& cfg, const Stages& stages);

struct TripOutcome {
  enum class Status { ok, unreachable, error };
  TripRecord record;
  Status status = Status::ok;
  std::string error;
  Trajectory trajectory;
  HeatLedger heat;
  ChillLedger chill;
  double total_min = 0.0;
  double wait_min = 0.0;
  double walk_min = 0.0;  // unconditioned moving time
  double ride_min = 0.0;  // conditioned time
  int transfers = 0;
  // Comparison inputs (when the compare stage is on).
  MethodResult cmp_baseline;
  MethodResult cmp_spatio_temporal;
};

/// Routes and simulates one record; never throws (failures land in the
/// outcome's status).
TripOutcome process_record(const RunContext& ctx, const ParsedRecord& rec);

/// OpenMP batch kernel: outcomes land at their record's index, so results
/// are identical for any worker count.
std::vector<TripOutcome> process_records(const RunContext& ctx,
                                         const std::vector<ParsedRecord>& recs,
                                         int workers);

/// Serial reference implementation kept for testing and benchmarking.
std::vector<TripOutcome> process_records_serial(
    const RunContext& ctx, const std::vector<ParsedRecord>& recs);

void write_per_trip_csv(const std::vector<TripOutcome>& outcomes,
                        const std::string& path);
void write_routes_csv(const std::vector<TripOutcome>& outcomes,
                      const std::string& path);

/// Weighted summary over per-trip outputs.
struct SummaryBucket {
  std::string key;
  double weight = 0.0;
  double flagged_weight = 0.0;
};

struct Summary {
  double total_weight = 0.0;
  double flagged_weight = 0.0;
  double chill_flagged_weight = 0.0;
  long records = 0;
  long routed = 0;
  long unreachable = 0;
  long errors = 0;
  double deficit_mean = 0.0;
  double deficit_median = 0.0;
  double deficit_sd = 0.0;
  std::vector<SummaryBucket> by_month;
  std::vector<SummaryBucket> by_hour;
};

Summary summarize_outcomes(const std::vector<TripOutcome>& outcomes);
/// Rebuilds the summary from an emitted per_trip.csv.
Summary summarize_per_trip_csv(const std::string& path);
std::string format_summary(const Summary& s);

/// Executes the selected stages end to end and emits artifacts under
/// cfg.out_dir. Returns the number of record-level errors (the batch itself
/// succeeds); throws InputError on structural problems.
long run(const RunConfig& cfg, const Stages& stages);

}  // namespace heatpath
