#include "heatpath/exposure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "heatpath/csv.hpp"
#include "heatpath/errors.hpp"

namespace heatpath {

namespace {

constexpr double kMinutesPerSecond = 1.0 / 60.0;

// Calibrated default schedule; bands are contiguous over [90, 112] per level.
constexpr const char* kDefaultWorkRestCsv =
    R"(level,hi_low_f,hi_high_f,work_min,rest_min
light,90,96,120,0
light,96,102,60,6
light,102,108,30,30
light,108,112,15,45
moderate,90,96,60,8
moderate,96,102,45,9
moderate,102,108,15,30
moderate,108,112,8,45
heavy,90,96,40,10
heavy,96,102,35,11
heavy,102,108,12,35
heavy,108,112,6,50
)";

// Frostbite-time contours of the NWS wind chill chart.
constexpr const char* kDefaultFrostbiteCsv = R"(wc_high_f,minutes
-18,30
-35,10
-50,5
)";

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw InputError(path, std::string("cannot open ") + what);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

WorkRestTable WorkRestTable::embedded_default() {
  return parse("<embedded work/rest table>", kDefaultWorkRestCsv);
}

WorkRestTable WorkRestTable::load(const std::string& path) {
  return parse(path, read_file(path, "work/rest table"));
}

WorkRestTable WorkRestTable::parse(const std::string& label,
                                   const std::string& csv_text) {
  std::istringstream in(csv_text);
  CsvReader csv(label, in);
  int c_level = csv.require("level");
  int c_low = csv.require("hi_low_f");
  int c_high = csv.require("hi_high_f");
  int c_work = csv.require("work_min");
  int c_rest = csv.require("rest_min");
  WorkRestTable table;
  while (csv.next()) {
    WorkRestRow row;
    row.level = parse_work_level(csv.field(c_level));
    if (row.level == WorkLevel::rest)
      throw InputError(csv.where(), "rest needs no work/rest row");
    row.hi_low_f = csv.number(c_low);
    row.hi_high_f = csv.number(c_high);
    row.work_min = csv.number(c_work);
    row.rest_min = csv.number(c_rest);
    if (!(row.work_min > 0.0))
      throw InputError(csv.where(), "work_min must be positive");
    if (row.rest_min < 0.0)
      throw InputError(csv.where(), "rest_min must be non-negative");
    table.rows_.push_back(row);
  }
  table.validate(label);
  return table;
}

void WorkRestTable::validate(const std::string& label) const {
  for (WorkLevel level :
       {WorkLevel::light, WorkLevel::moderate, WorkLevel::heavy}) {
    std::vector<WorkRestRow> rows;
    for (const auto& r : rows_)
      if (r.level == level) rows.push_back(r);
    if (rows.empty())
      throw InputError(label, "no rows for level " + to_string(level));
    std::sort(rows.begin(), rows.end(),
              [](const WorkRestRow& a, const WorkRestRow& b) {
                return a.hi_low_f < b.hi_low_f;
              });
    if (rows.front().hi_low_f != kLookupLowF ||
        rows.back().hi_high_f != kLookupHighF)
      throw InputError(label, "level " + to_string(level) + " must span " +
                                  std::to_string(kLookupLowF) + ".." +
                                  std::to_string(kLookupHighF));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0) {
        if (rows[i].hi_low_f != rows[i - 1].hi_high_f)
          throw InputError(label, "level " + to_string(level) +
                                      " bands are not contiguous");
        if (rows[i].work_min > rows[i - 1].work_min)
          throw InputError(label, "work_min must not increase with heat index");
        if (rows[i].rest_min < rows[i - 1].rest_min)
          throw InputError(label, "rest_min must not decrease with heat index");
      }
      if (!(rows[i].hi_high_f > rows[i].hi_low_f))
        throw InputError(label, "empty band in level " + to_string(level));
    }
  }
}

WorkRest WorkRestTable::lookup(double t_hi, WorkLevel level) const {
  if (level == WorkLevel::rest) return kNoHeatStress;
  if (t_hi < kLookupLowF) return kNoHeatStress;
  if (t_hi > kLookupHighF) return kBeyondSchedule;
  for (const auto& r : rows_) {
    if (r.level != level) continue;
    if (t_hi >= r.hi_low_f &&
        (t_hi < r.hi_high_f || (r.hi_high_f == kLookupHighF && t_hi <= kLookupHighF)))
      return {r.work_min, r.rest_min};
  }
  throw DomainError("work/rest table has no band covering " +
                    std::to_string(t_hi));  // unreachable after validate()
}

FrostbiteTable FrostbiteTable::embedded_default() {
  return parse("<embedded frostbite table>", kDefaultFrostbiteCsv);
}

FrostbiteTable FrostbiteTable::load(const std::string& path) {
  return parse(path, read_file(path, "frostbite table"));
}

FrostbiteTable FrostbiteTable::parse(const std::string& label,
                                     const std::string& csv_text) {
  std::istringstream in(csv_text);
  CsvReader csv(label, in);
  int c_high = csv.require("wc_high_f");
  int c_min = csv.require("minutes");
  FrostbiteTable table;
  while (csv.next()) {
    FrostbiteRow row;
    row.wc_high_f = csv.number(c_high);
    row.minutes = csv.number(c_min);
    if (!(row.minutes > 0.0))
      throw InputError(csv.where(), "frostbite minutes must be positive");
    table.rows_.push_back(row);
  }
  if (table.rows_.empty()) throw InputError(label, "empty frostbite table");
  std::sort(table.rows_.begin(), table.rows_.end(),
            [](const FrostbiteRow& a, const FrostbiteRow& b) {
              return a.wc_high_f > b.wc_high_f;
            });
  for (std::size_t i = 1; i < table.rows_.size(); ++i) {
    if (table.rows_[i].minutes > table.rows_[i - 1].minutes)
      throw InputError(label, "frostbite time must not increase as wind chill falls");
    if (table.rows_[i].wc_high_f == table.rows_[i - 1].wc_high_f)
      throw InputError(label, "duplicate wind-chill threshold");
  }
  return table;
}

double FrostbiteTable::frostbite_time(double t_wc) const {
  if (t_wc > rows_.front().wc_high_f) return kInfiniteFrostbiteTime;
  double minutes = rows_.front().minutes;
  for (const auto& r : rows_) {
    if (t_wc <= r.wc_high_f) minutes = r.minutes;
    else break;
  }
  return minutes;
}

namespace {

void check_span(const Trajectory& traj, const TemperatureField& field) {
  for (const auto& p : traj.periods) {
    if (p.start < field.start() || p.end() > field.end())
      throw DomainError("trip '" + traj.trip_id + "': period at " +
                        format_iso8601(p.start) +
                        " falls outside the weather series span");
  }
}

WorkLevel period_level(const Period& p, Demographic demo,
                       const MetCatalog& catalog, const SimOptions& opts) {
  if (p.conditioned) return WorkLevel::rest;
  double met = catalog.met_for(demo, p.mode, p.grade_pct, opts.posture);
  return intensity(false, met);
}

}  // namespace

HeatLedger simulate_heat(const Trajectory& traj, Demographic demo,
                         const TemperatureField& field,
                         const MetCatalog& catalog, const WorkRestTable& table,
                         const SimOptions& opts) {
  traj.validate();
  check_span(traj, field);

  HeatLedger ledger;
  double burden = 0.0;       // P
  double deficit = 0.0;      // D, clamped at zero
  bool flagged = false;
  bool recovered_after_flag = false;
  long post_flag_seconds = 0;

  for (std::size_t n = 0; n < traj.periods.size(); ++n) {
    const Period& period = traj.periods[n];
    const WorkLevel level = period_level(period, demo, catalog, opts);

    PeriodLedger row;
    row.index = static_cast<int>(n);
    row.minutes = period.minutes();
    row.level = level;
    double sum_rho = 0.0, sum_eta = 0.0;

    for (int sec = 0; sec < period.duration_s; ++sec) {
      if (level == WorkLevel::rest) {
        const double drained = std::min(kMinutesPerSecond, deficit);
        const double next = deficit - drained;
        // The burden of the current risk episode decays in proportion to the
        // rest consumed; when the deficit reaches zero the episode is over.
        burden = deficit > 0.0 ? burden * (next / deficit) : 0.0;
        deficit = next;
        row.exposure_increment -= drained;
        sum_rho += kNoHeatStress.work_min;
        sum_eta += kNoHeatStress.rest_min;
      } else {
        const Point pos = period.position_at(sec);
        const WeatherSample ws =
            field.sample(pos.x, pos.y, period.start + sec);
        const double hi = heat_index(ws, opts.thermal);
        const WorkRest wr = table.lookup(hi, level);
        const double p = kMinutesPerSecond / wr.work_min;
        burden += p;
        row.burden_increment += p;
        const double inc = wr.rest_min * kMinutesPerSecond / wr.work_min;
        deficit += inc;
        row.exposure_increment += inc;
        row.deficit_generated += inc;
        sum_rho += wr.work_min;
        sum_eta += wr.rest_min;
        if (!flagged && burden >= 1.0) {
          flagged = true;
          ledger.flag_time = period.start + sec;
        }
      }
      ledger.peak_deficit = std::max(ledger.peak_deficit, deficit);
      if (flagged && !recovered_after_flag) {
        ++post_flag_seconds;
        if (deficit <= 0.0) recovered_after_flag = true;
      }
    }

    row.burden_cumulative = burden;
    row.deficit = deficit;
    row.flagged = flagged;
    if (period.duration_s > 0) {
      row.mean_work_min = sum_rho / period.duration_s;
      row.mean_rest_min = sum_eta / period.duration_s;
    }
    ledger.e_hi += row.exposure_increment;
    ledger.deficit_generated += row.deficit_generated;
    ledger.periods.push_back(std::move(row));
  }

  ledger.r_hi = flagged;
  ledger.final_burden = burden;
  ledger.post_flag_exposure_min = post_flag_seconds * kMinutesPerSecond;
  return ledger;
}

ChillLedger simulate_chill(const Trajectory& traj,
                           const TemperatureField& field,
                           const FrostbiteTable& table,
                           const SimOptions& opts) {
  traj.validate();
  check_span(traj, field);
  ChillLedger ledger;
  for (const auto& period : traj.periods) {
    double dose = 0.0;
    if (!period.conditioned) {
      // Group the seconds sharing one frostbite time so a stretch equal to
      // the full frostbite time contributes exactly 1.
      double run_tau = 0.0;
      int run_seconds = 0;
      auto flush = [&] {
        if (run_seconds > 0 && std::isfinite(run_tau))
          dose += run_seconds / (60.0 * run_tau);
        run_seconds = 0;
      };
      for (int sec = 0; sec < period.duration_s; ++sec) {
        const Point pos = period.position_at(sec);
        const WeatherSample ws =
            field.sample(pos.x, pos.y, period.start + sec);
        const double tau = table.frostbite_time(wind_chill(ws));
        if (run_seconds > 0 && tau != run_tau) flush();
        run_tau = tau;
        ++run_seconds;
      }
      flush();
    }
    ledger.period_dose.push_back(dose);
    ledger.e_wc += dose;
  }
  ledger.r_wc = ledger.e_wc >= 1.0;
  return ledger;
}

void write_ledger_csv(const Trajectory& traj, const HeatLedger& heat,
                      const ChillLedger& chill, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path, "cannot write ledger");
  out << "period,start,minutes,mode,level,work_min,rest_min,burden_increment,"
         "burden_cumulative,exposure_increment,deficit,chill_dose,flagged\n";
  for (std::size_t i = 0; i < heat.periods.size(); ++i) {
    const PeriodLedger& r = heat.periods[i];
    const Period& p = traj.periods[i];
    out << r.index << "," << format_iso8601(p.start) << ","
        << format_fixed(r.minutes) << "," << to_string(p.mode) << ","
        << to_string(r.level) << "," << format_fixed(r.mean_work_min) << ","
        << format_fixed(r.mean_rest_min) << ","
        << format_fixed(r.burden_increment) << ","
        << format_fixed(r.burden_cumulative) << ","
        << format_fixed(r.exposure_increment) << ","
        << format_fixed(r.deficit) << "," << format_fixed(chill.period_dose[i])
        << "," << (r.flagged ? 1 : 0) << "\n";
  }
  out << "total,"
      << (traj.periods.empty() ? std::string()
                               : format_iso8601(traj.depart()))
      << "," << format_fixed(traj.total_seconds() / 60.0) << ",,,,,,"
      << format_fixed(heat.final_burden) << "," << format_fixed(heat.e_hi)
      << "," << format_fixed(heat.periods.empty() ? 0.0 : heat.periods.back().deficit)
      << "," << format_fixed(chill.e_wc) << "," << (heat.r_hi ? 1 : 0) << "\n";
}

}  // namespace heatpath
