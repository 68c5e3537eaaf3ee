#include "heatpath/activity.hpp"

#include <cstdlib>
#include <sstream>

#include "heatpath/csv.hpp"
#include "heatpath/errors.hpp"

namespace heatpath {

Demographic parse_demographic(const std::string& s) {
  if (s == "average_adult") return Demographic::average_adult;
  if (s == "older_adult") return Demographic::older_adult;
  if (s == "wheelchair_user") return Demographic::wheelchair_user;
  throw InputError("unknown demographic '" + s + "'");
}

std::string to_string(Demographic d) {
  switch (d) {
    case Demographic::average_adult: return "average_adult";
    case Demographic::older_adult: return "older_adult";
    case Demographic::wheelchair_user: return "wheelchair_user";
  }
  return "?";
}

std::string to_string(WorkLevel w) {
  switch (w) {
    case WorkLevel::rest: return "rest";
    case WorkLevel::light: return "light";
    case WorkLevel::moderate: return "moderate";
    case WorkLevel::heavy: return "heavy";
  }
  return "?";
}

WorkLevel parse_work_level(const std::string& s) {
  if (s == "rest") return WorkLevel::rest;
  if (s == "light") return WorkLevel::light;
  if (s == "moderate") return WorkLevel::moderate;
  if (s == "heavy") return WorkLevel::heavy;
  throw InputError("unknown work level '" + s + "'");
}

namespace {

// Energy-cost table for travel activities across the three population
// groups, with per-group values where the source distinguishes them.
// Starred (estimated) entries carry a trailing '*'.
constexpr const char* kDefaultCatalogCsv = R"(demographic,activity,conditioned,met
average_adult,automobile_driving,yes,2.0
average_adult,automobile_riding,yes,1.3
average_adult,transit_riding,yes,1.3
average_adult,wait_sitting,no,1.0
average_adult,wait_standing,no,1.3
average_adult,walking_level,no,3.5
average_adult,walking_uphill_1_5,no,5.3
average_adult,walking_uphill_6_10,no,7.0
average_adult,bicycling,no,6.8
average_adult,motor_scooter,no,2.8
average_adult,motorcycle,no,2.8
older_adult,automobile_driving,yes,2.3*
older_adult,automobile_riding,yes,1.5*
older_adult,transit_riding,yes,1.5*
older_adult,wait_sitting,no,1.3
older_adult,wait_standing,no,1.5
older_adult,walking_level,no,4.3
older_adult,walking_uphill_1_5,no,5.0
older_adult,walking_uphill_6_10,no,7.3*
older_adult,bicycling,no,5.3
older_adult,motor_scooter,no,3.1*
older_adult,motorcycle,no,3.1*
older_adult,wheeling_sidewalk,no,4.0*
wheelchair_user,automobile_driving,yes,2.0*
wheelchair_user,automobile_riding,yes,1.3
wheelchair_user,transit_riding,yes,1.3
wheelchair_user,wait_sitting,no,1.0*
wheelchair_user,wait_standing,no,1.3*
wheelchair_user,wheeling_sidewalk,no,3.2
)";

}  // namespace

MetCatalog MetCatalog::embedded_default() {
  return parse("<embedded catalog>", kDefaultCatalogCsv);
}

MetCatalog MetCatalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open MET catalog");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(path, buf.str());
}

MetCatalog MetCatalog::parse(const std::string& label,
                             const std::string& csv_text) {
  std::istringstream in(csv_text);
  CsvReader csv(label, in);
  int c_demo = csv.require("demographic");
  int c_act = csv.require("activity");
  int c_cond = csv.require("conditioned");
  int c_met = csv.require("met");
  MetCatalog cat;
  while (csv.next()) {
    MetEntry e;
    e.demographic = parse_demographic(csv.field(c_demo));
    e.activity = csv.field(c_act);
    const std::string& cond = csv.field(c_cond);
    if (cond == "yes") e.conditioned = true;
    else if (cond == "no") e.conditioned = false;
    else throw InputError(csv.where(), "conditioned must be yes/no");
    std::string met_s = csv.field(c_met);
    if (!met_s.empty() && met_s.back() == '*') {
      e.estimated = true;
      met_s.pop_back();
    }
    char* end = nullptr;
    e.met = std::strtod(met_s.c_str(), &end);
    if (end == met_s.c_str() || *end != '\0' || !(e.met > 0.0))
      throw InputError(csv.where(), "MET must be a positive number");
    auto key = std::make_pair(static_cast<int>(e.demographic), e.activity);
    if (cat.index_.count(key))
      throw InputError(csv.where(), "duplicate catalog row for " + e.activity);
    cat.index_.emplace(key, cat.entries_.size());
    cat.entries_.push_back(std::move(e));
  }
  if (cat.entries_.empty()) throw InputError(label, "empty MET catalog");
  return cat;
}

std::optional<double> MetCatalog::lookup(Demographic demo,
                                         const std::string& activity) const {
  auto it = index_.find(std::make_pair(static_cast<int>(demo), activity));
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].met;
}

bool MetCatalog::conditioned(const std::string& activity) const {
  for (const auto& e : entries_)
    if (e.activity == activity) return e.conditioned;
  throw DomainError("unknown activity '" + activity + "'");
}

std::string activity_key(Mode mode, double grade_pct, WaitPosture posture) {
  switch (mode) {
    case Mode::walk:
      if (grade_pct < 1.0) return "walking_level";
      if (grade_pct <= 5.0) return "walking_uphill_1_5";
      return "walking_uphill_6_10";
    case Mode::bike: return "bicycling";
    case Mode::wheelchair: return "wheeling_sidewalk";
    case Mode::micromobility: return "motor_scooter";
    case Mode::automobile: return "automobile_driving";
    case Mode::wait:
      return posture == WaitPosture::standing ? "wait_standing" : "wait_sitting";
    case Mode::ride: return "transit_riding";
  }
  throw DomainError("unmapped mode");
}

double MetCatalog::met_for(Demographic demo, Mode mode, double grade_pct,
                           WaitPosture posture) const {
  const std::string key = activity_key(mode, grade_pct, posture);
  auto met = lookup(demo, key);
  if (!met)
    throw DomainError("no MET value for (" + to_string(demo) + ", " + key +
                      "): unsupported combination");
  return *met;
}

WorkLevel intensity(bool conditioned, double met) {
  if (!(met > 0.0)) throw DomainError("MET must be positive");
  if (conditioned) return WorkLevel::rest;
  if (met <= 1.5) return WorkLevel::light;
  if (met < 4.0) return WorkLevel::moderate;
  return WorkLevel::heavy;
}

}  // namespace heatpath
