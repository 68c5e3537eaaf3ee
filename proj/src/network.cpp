#include "heatpath/network.hpp"

#include <algorithm>

#include "heatpath/errors.hpp"

namespace heatpath {

bool ServiceCalendar::active(const std::string& service_id,
                             std::int64_t epoch_day) const {
  auto rem = removed.find(service_id);
  if (rem != removed.end() && rem->second.count(epoch_day)) return false;
  auto add = added.find(service_id);
  if (add != added.end() && add->second.count(epoch_day)) return true;
  auto reg = regular.find(service_id);
  if (reg == regular.end()) return false;
  const Regular& r = reg->second;
  if (epoch_day < r.start_day || epoch_day > r.end_day) return false;
  EpochSeconds midnight = epoch_day * 86400;
  CivilTime c = epoch_to_civil(midnight);
  return r.weekday[day_of_week(c.year, c.month, c.day)];
}

bool ServiceCalendar::knows(const std::string& service_id) const {
  return regular.count(service_id) || added.count(service_id) ||
         removed.count(service_id);
}

int TransitNetwork::require_stop(const std::string& id) const {
  auto it = stop_index.find(id);
  if (it == stop_index.end()) throw DomainError("unknown stop '" + id + "'");
  return it->second;
}

void TransitNetwork::rebuild_indices() {
  footpaths_from.assign(stops.size(), {});
  for (std::size_t i = 0; i < footpaths.size(); ++i)
    footpaths_from[static_cast<std::size_t>(footpaths[i].from)].push_back(
        static_cast<int>(i));
  patterns_at_stop.assign(stops.size(), {});
  for (std::size_t p = 0; p < patterns.size(); ++p)
    for (std::size_t pos = 0; pos < patterns[p].stops.size(); ++pos)
      patterns_at_stop[static_cast<std::size_t>(patterns[p].stops[pos])]
          .emplace_back(static_cast<int>(p), static_cast<int>(pos));
}

std::vector<Footpath> synthesize_footpaths(const std::vector<Stop>& stops,
                                           double radius_m) {
  std::vector<Footpath> out;
  for (std::size_t a = 0; a < stops.size(); ++a) {
    for (std::size_t b = a + 1; b < stops.size(); ++b) {
      double d = distance_m(stops[a].pos, stops[b].pos);
      if (d > 0.0 && d <= radius_m) {
        out.push_back({static_cast<int>(a), static_cast<int>(b), d});
        out.push_back({static_cast<int>(b), static_cast<int>(a), d});
      }
    }
  }
  return out;
}

}  // namespace heatpath
