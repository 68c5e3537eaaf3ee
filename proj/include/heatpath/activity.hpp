#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heatpath/trajectory.hpp"

namespace heatpath {

enum class Demographic { average_adult, older_adult, wheelchair_user };

Demographic parse_demographic(const std::string& s);  // throws InputError
std::string to_string(Demographic d);

/// Physical-activity intensity, ordered by severity.
enum class WorkLevel { rest = 0, light = 1, moderate = 2, heavy = 3 };

std::string to_string(WorkLevel w);
WorkLevel parse_work_level(const std::string& s);

enum class WaitPosture { standing, seated };

/// One catalog row: the energy cost of an activity for a demographic group.
struct MetEntry {
  Demographic demographic;
  std::string activity;
  bool conditioned = false;
  double met = 0.0;
  bool estimated = false;  // starred in the source table
};

/// Lookup from (demographic, activity) to MET. Immutable after load;
/// lookups are concurrency-safe.
class MetCatalog {
 public:
  static MetCatalog embedded_default();
  static MetCatalog load(const std::string& path);
  static MetCatalog parse(const std::string& label, const std::string& csv_text);

  /// MET for a trajectory mode. Walking is banded by grade (level < 1%,
  /// 1-5%, 6-10%; steeper clamps to the top band); waits use the posture
  /// row. Throws DomainError for pairs the table leaves blank.
  double met_for(Demographic demo, Mode mode, double grade_pct = 0.0,
                 WaitPosture posture = WaitPosture::standing) const;

  /// Direct lookup by activity key; nullopt when the cell is blank.
  std::optional<double> lookup(Demographic demo,
                               const std::string& activity) const;
  bool conditioned(const std::string& activity) const;

  const std::vector<MetEntry>& entries() const { return entries_; }

 private:
  std::vector<MetEntry> entries_;
  std::map<std::pair<int, std::string>, std::size_t> index_;
};

/// Activity key a trajectory mode resolves to (before grade/posture banding).
std::string activity_key(Mode mode, double grade_pct, WaitPosture posture);

/// Intensity classification: conditioned periods count as rest; otherwise
/// light (M <= 1.5), moderate (1.5 < M < 4), heavy (M >= 4).
WorkLevel intensity(bool conditioned, double met);

}  // namespace heatpath
