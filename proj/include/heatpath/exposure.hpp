#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "heatpath/activity.hpp"
#include "heatpath/field.hpp"
#include "heatpath/trajectory.hpp"

namespace heatpath {

/// Allowed continuous-activity and required-rest minutes at some heat index.
struct WorkRest {
  double work_min = 0.0;  // rho
  double rest_min = 0.0;  // eta
};

// Sentinels outside the 90..112 degF lookup band.
inline constexpr WorkRest kNoHeatStress{1e4, 0.0};
inline constexpr WorkRest kBeyondSchedule{1e-6, 1e-5};
inline constexpr double kLookupLowF = 90.0;
inline constexpr double kLookupHighF = 112.0;

struct WorkRestRow {
  WorkLevel level = WorkLevel::light;
  double hi_low_f = 0.0;
  double hi_high_f = 0.0;   // band is [low, high); the last band closes at 112
  double work_min = 0.0;
  double rest_min = 0.0;
};

/// Work/rest schedule spanning 90..112 degF for each non-rest work level.
/// The shipped default is calibrated to the worked trip example; it is a
/// stand-in for an agency-supplied occupational schedule, not a transcription
/// of one.
class WorkRestTable {
 public:
  static WorkRestTable embedded_default();
  static WorkRestTable load(const std::string& path);
  static WorkRestTable parse(const std::string& label, const std::string& csv);

  /// (rho, eta): kNoHeatStress below 90 degF or at rest level,
  /// kBeyondSchedule above 112 degF, the covering band row otherwise.
  WorkRest lookup(double t_hi, WorkLevel level) const;

  const std::vector<WorkRestRow>& rows() const { return rows_; }

 private:
  void validate(const std::string& label) const;
  std::vector<WorkRestRow> rows_;
};

struct FrostbiteRow {
  double wc_high_f = 0.0;  // applies to wind chills <= this value
  double minutes = 0.0;
};

/// Wind-chill thresholds to frostbite time. Above the warmest threshold the
/// frostbite time is infinite (zero dose).
class FrostbiteTable {
 public:
  static FrostbiteTable embedded_default();
  static FrostbiteTable load(const std::string& path);
  static FrostbiteTable parse(const std::string& label, const std::string& csv);

  double frostbite_time(double t_wc) const;
  const std::vector<FrostbiteRow>& rows() const { return rows_; }

 private:
  std::vector<FrostbiteRow> rows_;
};

inline constexpr double kInfiniteFrostbiteTime =
    std::numeric_limits<double>::infinity();

/// Per-period accounting of the heat state machine.
struct PeriodLedger {
  int index = 0;
  double minutes = 0.0;
  WorkLevel level = WorkLevel::rest;
  double mean_work_min = 0.0;   // mean rho over the period's seconds
  double mean_rest_min = 0.0;   // mean eta
  double burden_increment = 0.0;    // p_n
  double burden_cumulative = 0.0;   // P_n at period end
  double exposure_increment = 0.0;  // e_n (negative for recovery consumed)
  double deficit_generated = 0.0;   // positive part of e_n
  double deficit = 0.0;             // D_n at period end (clamped >= 0)
  bool flagged = false;             // r_n: risk flag state at period end
};

struct HeatLedger {
  std::vector<PeriodLedger> periods;
  double e_hi = 0.0;               // sum of e_n; equals the final deficit
  double deficit_generated = 0.0;  // total rest minutes incurred
  double peak_deficit = 0.0;
  bool r_hi = false;
  std::optional<EpochSeconds> flag_time;
  double post_flag_exposure_min = 0.0;  // from the alert until recovery
  double final_burden = 0.0;
};

struct ChillLedger {
  std::vector<double> period_dose;
  double e_wc = 0.0;
  bool r_wc = false;
};

struct SimOptions {
  WaitPosture posture = WaitPosture::standing;
  ThermalOptions thermal;
};

/// Work/rest cumulative heat exposure over a trajectory, integrated second
/// by second. Pure function of immutable inputs; safe to run per-trip in
/// parallel.
HeatLedger simulate_heat(const Trajectory& traj, Demographic demo,
                         const TemperatureField& field,
                         const MetCatalog& catalog, const WorkRestTable& table,
                         const SimOptions& opts = {});

/// Frostbite dose over a trajectory (conditioned periods contribute none).
ChillLedger simulate_chill(const Trajectory& traj,
                           const TemperatureField& field,
                           const FrostbiteTable& table,
                           const SimOptions& opts = {});

/// Writes one row per period plus a totals row.
void write_ledger_csv(const Trajectory& traj, const HeatLedger& heat,
                      const ChillLedger& chill, const std::string& path);

}  // namespace heatpath
