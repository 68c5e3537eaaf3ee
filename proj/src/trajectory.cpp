#include "heatpath/trajectory.hpp"

#include <algorithm>

#include "heatpath/errors.hpp"

namespace heatpath {

Mode parse_mode(const std::string& s) {
  if (s == "walk") return Mode::walk;
  if (s == "bike") return Mode::bike;
  if (s == "wheelchair") return Mode::wheelchair;
  if (s == "micromobility") return Mode::micromobility;
  if (s == "auto" || s == "automobile") return Mode::automobile;
  if (s == "wait") return Mode::wait;
  if (s == "ride" || s == "transit") return Mode::ride;
  throw InputError("unknown mode '" + s + "'");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::walk: return "walk";
    case Mode::bike: return "bike";
    case Mode::wheelchair: return "wheelchair";
    case Mode::micromobility: return "micromobility";
    case Mode::automobile: return "auto";
    case Mode::wait: return "wait";
    case Mode::ride: return "ride";
  }
  return "?";
}

bool mode_conditioned(Mode m) {
  return m == Mode::ride || m == Mode::automobile;
}

Point Period::position_at(int sec) const {
  sec = std::clamp(sec, 0, duration_s);
  switch (geometry) {
    case Geometry::point:
      return from;
    case Geometry::segment: {
      if (duration_s == 0) return from;
      double f = static_cast<double>(sec) / duration_s;
      return {from.x + (to.x - from.x) * f, from.y + (to.y - from.y) * f};
    }
    case Geometry::knots: {
      if (knots.empty()) return from;
      if (sec <= knots.front().offset_s) return knots.front().p;
      for (std::size_t i = 1; i < knots.size(); ++i) {
        if (sec <= knots[i].offset_s) {
          const PathKnot& a = knots[i - 1];
          const PathKnot& b = knots[i];
          int span = b.offset_s - a.offset_s;
          if (span <= 0) return b.p;
          double f = static_cast<double>(sec - a.offset_s) / span;
          return {a.p.x + (b.p.x - a.p.x) * f, a.p.y + (b.p.y - a.p.y) * f};
        }
      }
      return knots.back().p;
    }
  }
  return from;
}

int Trajectory::total_seconds() const {
  int total = 0;
  for (const auto& p : periods) total += p.duration_s;
  return total;
}

void Trajectory::validate() const {
  if (periods.empty()) return;  // zero-duration trips trace to nothing
  EpochSeconds t = periods.front().start;
  for (const auto& p : periods) {
    if (p.duration_s <= 0)
      throw DomainError("trajectory '" + trip_id + "': non-positive period duration");
    if (p.start != t)
      throw DomainError("trajectory '" + trip_id + "': periods not contiguous");
    t = p.end();
  }
}

}  // namespace heatpath
