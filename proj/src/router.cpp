#include "heatpath/router.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "heatpath/errors.hpp"

namespace heatpath {

double RouterOptions::speed_for(Mode m) const {
  switch (m) {
    case Mode::walk: return walk_speed_mps;
    case Mode::bike: return bike_speed_mps;
    case Mode::wheelchair: return wheelchair_speed_mps;
    case Mode::micromobility: return micromobility_speed_mps;
    case Mode::automobile: return auto_speed_mps;
    default:
      throw DomainError("mode '" + to_string(m) + "' is not an access mode");
  }
}

namespace {

constexpr EpochSeconds kUnreached = std::numeric_limits<EpochSeconds>::max() / 4;

int travel_seconds(double meters, double speed_mps) {
  return static_cast<int>(std::llround(meters / speed_mps));
}

struct Label {
  EpochSeconds arrival = kUnreached;
  enum class How { none, access, footpath, ride } how = How::none;
  int from_stop = -1;          // footpath/ride predecessor stop
  EpochSeconds from_time = 0;  // predecessor readiness time
  int trip = -1;               // ride fields
  std::int64_t service_day = 0;
  int board_pos = -1;
  int alight_pos = -1;
  EpochSeconds board_dep = 0;
};

struct Boarding {
  int trip = -1;
  std::int64_t day = 0;
  EpochSeconds dep = kUnreached;
};

/// Earliest catchable (trip, service day) of `pat` at position `pos`
/// departing at or after `ready`.
Boarding earliest_boarding(const TransitNetwork& net, const RoutePattern& pat,
                           int pos, EpochSeconds ready) {
  Boarding best;
  const std::int64_t day0 = ready / 86400;
  for (std::int64_t day = day0 - 1; day <= day0 + 1; ++day) {
    for (int trip_idx : pat.trips) {
      const TripSchedule& trip = net.trips[static_cast<std::size_t>(trip_idx)];
      if (!net.calendar.active(trip.service_id, day)) continue;
      EpochSeconds dep =
          day * 86400 + trip.times[static_cast<std::size_t>(pos)].departure_s;
      if (dep < ready) continue;
      if (dep < best.dep || (dep == best.dep && trip_idx < best.trip)) {
        best = {trip_idx, day, dep};
      }
    }
  }
  return best;
}

}  // namespace

std::optional<Itinerary> plan_trip(const TransitNetwork& net, Point origin,
                                   Point dest, EpochSeconds depart,
                                   Mode access_mode, Mode egress_mode,
                                   const RouterOptions& opts) {
  const int n = static_cast<int>(net.stops.size());
  const double access_speed = opts.speed_for(access_mode);
  const double egress_speed = opts.speed_for(egress_mode);

  // Access/egress candidates: nearest stops within reach.
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  auto nearest = [&](Point p) {
    std::vector<std::pair<double, int>> d;
    d.reserve(order.size());
    for (int i : order) {
      double dist = distance_m(p, net.stop(i).pos);
      if (dist <= opts.max_access_m) d.emplace_back(dist, i);
    }
    std::sort(d.begin(), d.end());
    if (static_cast<int>(d.size()) > opts.access_candidates)
      d.resize(static_cast<std::size_t>(opts.access_candidates));
    return d;
  };
  const auto access = nearest(origin);
  const auto egress = nearest(dest);

  const int rounds = std::max(0, opts.max_rounds);
  std::vector<std::vector<Label>> label(
      static_cast<std::size_t>(rounds) + 1,
      std::vector<Label>(static_cast<std::size_t>(n)));

  // Round 0: access legs, then one footpath relaxation.
  std::vector<char> marked(static_cast<std::size_t>(n), 0);
  std::vector<int> improved;
  for (const auto& [dist, s] : access) {
    EpochSeconds t = depart + travel_seconds(dist, access_speed);
    Label& l = label[0][static_cast<std::size_t>(s)];
    if (t < l.arrival) {
      l = Label{};
      l.arrival = t;
      l.how = Label::How::access;
      l.from_time = depart;
      if (!marked[static_cast<std::size_t>(s)]) {
        marked[static_cast<std::size_t>(s)] = 1;
        improved.push_back(s);
      }
    }
  }
  std::sort(improved.begin(), improved.end());
  auto relax_footpaths = [&](std::vector<Label>& lab,
                             std::vector<int>& sources) {
    std::vector<int> extra;
    for (int s : sources) {
      const EpochSeconds base = lab[static_cast<std::size_t>(s)].arrival;
      for (int f : net.footpaths_from[static_cast<std::size_t>(s)]) {
        const Footpath& fp = net.footpaths[static_cast<std::size_t>(f)];
        EpochSeconds t = base + travel_seconds(fp.length_m, opts.walk_speed_mps);
        Label& dst = lab[static_cast<std::size_t>(fp.to)];
        if (t < dst.arrival) {
          dst = Label{};
          dst.arrival = t;
          dst.how = Label::How::footpath;
          dst.from_stop = s;
          dst.from_time = base;
          extra.push_back(fp.to);
        }
      }
    }
    sources.insert(sources.end(), extra.begin(), extra.end());
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  };
  relax_footpaths(label[0], improved);

  // Rounds 1..K: scan patterns touched by the previous round's improvements.
  std::vector<int> frontier = improved;
  for (int k = 1; k <= rounds; ++k) {
    label[static_cast<std::size_t>(k)] = label[static_cast<std::size_t>(k - 1)];
    std::map<int, int> queue;  // pattern -> earliest touched position
    for (int s : frontier) {
      for (const auto& [pat, pos] : net.patterns_at_stop[static_cast<std::size_t>(s)]) {
        auto it = queue.find(pat);
        if (it == queue.end() || pos < it->second) queue[pat] = pos;
      }
    }
    std::vector<int> ride_improved;
    for (const auto& [pat_idx, start_pos] : queue) {
      const RoutePattern& pat = net.patterns[static_cast<std::size_t>(pat_idx)];
      Boarding current;
      int board_pos = -1;
      EpochSeconds board_ready = 0;
      for (int pos = start_pos; pos < static_cast<int>(pat.stops.size()); ++pos) {
        const int s = pat.stops[static_cast<std::size_t>(pos)];
        if (current.trip >= 0 && pos > board_pos) {
          const TripSchedule& trip =
              net.trips[static_cast<std::size_t>(current.trip)];
          EpochSeconds arr = current.day * 86400 +
                             trip.times[static_cast<std::size_t>(pos)].arrival_s;
          Label& dst = label[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)];
          if (arr < dst.arrival) {
            dst = Label{};
            dst.arrival = arr;
            dst.how = Label::How::ride;
            dst.from_stop = pat.stops[static_cast<std::size_t>(board_pos)];
            dst.from_time = board_ready;
            dst.trip = current.trip;
            dst.service_day = current.day;
            dst.board_pos = board_pos;
            dst.alight_pos = pos;
            dst.board_dep = current.dep;
            ride_improved.push_back(s);
          }
        }
        const EpochSeconds ready =
            label[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(s)].arrival;
        if (ready < kUnreached) {
          Boarding cand = earliest_boarding(net, pat, pos, ready);
          if (cand.trip >= 0) {
            bool take = current.trip < 0;
            if (!take && cand.dep <
                             current.day * 86400 +
                                 net.trips[static_cast<std::size_t>(current.trip)]
                                     .times[static_cast<std::size_t>(pos)]
                                     .departure_s)
              take = true;
            if (take) {
              current = cand;
              board_pos = pos;
              board_ready = ready;
            }
          }
        }
      }
    }
    std::sort(ride_improved.begin(), ride_improved.end());
    ride_improved.erase(std::unique(ride_improved.begin(), ride_improved.end()),
                        ride_improved.end());
    relax_footpaths(label[static_cast<std::size_t>(k)], ride_improved);
    frontier = ride_improved;
    if (frontier.empty()) break;
  }

  // Journey selection over (arrival, rounds, stop id), plus the direct leg.
  EpochSeconds best_arr = kUnreached;
  int best_k = -1, best_stop = -1;
  for (int k = 0; k <= rounds; ++k) {
    for (const auto& [dist, s] : egress) {
      const Label& l = label[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)];
      if (l.arrival >= kUnreached) continue;
      EpochSeconds arr = l.arrival + travel_seconds(dist, egress_speed);
      if (arr < best_arr) {
        best_arr = arr;
        best_k = k;
        best_stop = s;
      }
    }
  }

  const double direct_dist = distance_m(origin, dest);
  const bool direct_ok = direct_dist <= opts.max_access_m;
  const EpochSeconds direct_arr =
      direct_ok ? depart + travel_seconds(direct_dist, access_speed) : kUnreached;

  if (best_arr >= kUnreached && !direct_ok) return std::nullopt;

  Itinerary it;
  it.depart = depart;
  if (direct_arr <= best_arr) {  // equal arrival: fewer legs wins
    Leg leg;
    leg.type = Leg::Type::access;
    leg.mode = access_mode;
    leg.start = depart;
    leg.duration_s = static_cast<int>(direct_arr - depart);
    leg.from = origin;
    leg.to = dest;
    it.legs.push_back(leg);
    it.arrive = direct_arr;
    return it;
  }

  // Reconstruct backwards from (best_k, best_stop). `suffix_start` is the
  // time the already-emitted suffix begins; any gap between a label's
  // arrival and it becomes a wait at that stop (labels only improve as they
  // are copied across rounds, so gaps can open up).
  std::vector<Leg> rev;
  int k = best_k;
  int stop = best_stop;
  EpochSeconds suffix_start =
      label[static_cast<std::size_t>(k)][static_cast<std::size_t>(stop)].arrival;
  {
    Leg leg;
    leg.type = Leg::Type::egress;
    leg.mode = egress_mode;
    leg.start = suffix_start;
    leg.duration_s = static_cast<int>(best_arr - suffix_start);
    leg.from_stop = best_stop;
    leg.from = net.stop(best_stop).pos;
    leg.to = dest;
    rev.push_back(leg);
  }
  bool ride_wait_due = false;
  while (true) {
    const Label& l = label[static_cast<std::size_t>(k)][static_cast<std::size_t>(stop)];
    if (suffix_start > l.arrival || ride_wait_due) {
      Leg wait;
      wait.type = Leg::Type::wait;
      wait.mode = Mode::wait;
      wait.start = l.arrival;
      wait.duration_s = static_cast<int>(suffix_start - l.arrival);
      wait.from_stop = wait.to_stop = stop;
      wait.from = wait.to = net.stop(stop).pos;
      rev.push_back(wait);
      ride_wait_due = false;
    }
    if (l.how == Label::How::access) {
      Leg leg;
      leg.type = Leg::Type::access;
      leg.mode = access_mode;
      leg.start = l.from_time;
      leg.duration_s = static_cast<int>(l.arrival - l.from_time);
      leg.to_stop = stop;
      leg.from = origin;
      leg.to = net.stop(stop).pos;
      rev.push_back(leg);
      break;
    } else if (l.how == Label::How::footpath) {
      Leg leg;
      leg.type = Leg::Type::transfer;
      leg.mode = Mode::walk;
      leg.start = l.from_time;
      leg.duration_s = static_cast<int>(l.arrival - l.from_time);
      leg.from_stop = l.from_stop;
      leg.to_stop = stop;
      leg.from = net.stop(l.from_stop).pos;
      leg.to = net.stop(stop).pos;
      rev.push_back(leg);
      stop = l.from_stop;
      suffix_start = l.from_time;
    } else if (l.how == Label::How::ride) {
      Leg leg;
      leg.type = Leg::Type::ride;
      leg.mode = Mode::ride;
      leg.start = l.board_dep;
      leg.duration_s = static_cast<int>(l.arrival - l.board_dep);
      leg.from_stop = l.from_stop;
      leg.to_stop = stop;
      leg.from = net.stop(l.from_stop).pos;
      leg.to = net.stop(stop).pos;
      leg.trip_index = l.trip;
      leg.board_pos = l.board_pos;
      leg.alight_pos = l.alight_pos;
      leg.service_day = l.service_day;
      rev.push_back(leg);
      ++it.rides;
      stop = l.from_stop;
      suffix_start = l.board_dep;
      ride_wait_due = true;  // a wait precedes every boarding, even if empty
      k -= 1;
    } else {
      throw DomainError("journey reconstruction hit an unreachable label");
    }
  }
  std::reverse(rev.begin(), rev.end());
  it.legs = std::move(rev);
  it.arrive = best_arr;
  return it;
}

Trajectory trace_trajectory(const TransitNetwork& net, const Itinerary& it,
                            const std::string& trip_id) {
  Trajectory traj;
  traj.trip_id = trip_id;
  auto stop_id = [&](int idx) -> const std::string& {
    if (idx < 0 || idx >= static_cast<int>(net.stops.size()))
      throw DomainError("itinerary references unknown stop index " +
                        std::to_string(idx));
    return net.stop(idx).id;
  };

  for (const Leg& leg : it.legs) {
    if (leg.duration_s <= 0) continue;
    Period p;
    p.start = leg.start;
    p.duration_s = leg.duration_s;
    p.from = leg.from;
    p.to = leg.to;
    switch (leg.type) {
      case Leg::Type::access:
      case Leg::Type::egress:
      case Leg::Type::transfer: {
        p.mode = leg.mode;
        p.conditioned = mode_conditioned(leg.mode);
        p.geometry = Period::Geometry::segment;
        p.asset.kind = AssetTag::Kind::footpath;
        p.asset.length_m = distance_m(leg.from, leg.to);
        if (leg.type == Leg::Type::access && leg.to_stop < 0) {
          p.asset.id = "direct";  // walk-only trip, no transit touched
        } else if (leg.type == Leg::Type::access) {
          p.asset.id = "ingress:" + stop_id(leg.to_stop);
        } else if (leg.type == Leg::Type::egress) {
          p.asset.id = "egress:" + stop_id(leg.from_stop);
        } else {
          const std::string& a = stop_id(leg.from_stop);
          const std::string& b = stop_id(leg.to_stop);
          p.asset.id = "transfer:" + std::min(a, b) + "--" + std::max(a, b);
        }
        break;
      }
      case Leg::Type::wait: {
        p.mode = Mode::wait;
        p.conditioned = false;
        p.geometry = Period::Geometry::point;
        p.asset.kind = AssetTag::Kind::station;
        p.asset.id = stop_id(leg.from_stop);
        break;
      }
      case Leg::Type::ride: {
        p.mode = Mode::ride;
        p.conditioned = true;
        p.geometry = Period::Geometry::knots;
        if (leg.trip_index < 0 ||
            leg.trip_index >= static_cast<int>(net.trips.size()))
          throw DomainError("itinerary references unknown trip index " +
                            std::to_string(leg.trip_index));
        const TripSchedule& trip =
            net.trips[static_cast<std::size_t>(leg.trip_index)];
        const RoutePattern& pat =
            net.patterns[static_cast<std::size_t>(trip.pattern)];
        for (int pos = leg.board_pos; pos <= leg.alight_pos; ++pos) {
          const StopTimeEntry& st = trip.times[static_cast<std::size_t>(pos)];
          const Point sp = net.stop(pat.stops[static_cast<std::size_t>(pos)]).pos;
          EpochSeconds arr = leg.service_day * 86400 + st.arrival_s;
          EpochSeconds dep = leg.service_day * 86400 + st.departure_s;
          if (pos > leg.board_pos)
            p.knots.push_back({static_cast<int>(arr - leg.start), sp});
          if (pos < leg.alight_pos)
            p.knots.push_back({static_cast<int>(dep - leg.start), sp});
        }
        break;
      }
    }
    traj.periods.push_back(std::move(p));
  }
  traj.validate();
  return traj;
}

}  // namespace heatpath
