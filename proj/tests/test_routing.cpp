#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "heatpath/gtfs.hpp"
#include "heatpath/router.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace heatpath;
namespace fs = std::filesystem;

namespace {

const TransitNetwork& example_network() {
  static TransitNetwork net = [] {
    fs::path dir = fs::temp_directory_path() / "hp_example_routing";
    fs::remove_all(dir);
    fixtures::write_example_bundle(dir.string());
    return load_gtfs((dir / "gtfs").string());
  }();
  return net;
}

}  // namespace

TEST_SUITE("routing") {
  TEST_CASE("worked-example journey is reconstructed leg by leg") {
    const TransitNetwork& net = example_network();
    EpochSeconds depart = parse_iso8601("2019-08-14T14:43:00");
    auto it = plan_trip(net, {0.0, 0.0}, {27753.0, 0.0}, depart, Mode::bike,
                        Mode::walk);
    REQUIRE(it.has_value());
    CHECK(it->rides == 2);
    CHECK(it->transfers() == 1);
    CHECK(format_iso8601(it->arrive) == "2019-08-14T15:55:06");

    Trajectory traj = trace_trajectory(net, *it, "demo");
    REQUIRE(traj.periods.size() == 7);
    const int expected[7] = {72, 900, 1020, 324, 642, 1320, 48};
    const Mode modes[7] = {Mode::bike, Mode::wait, Mode::ride, Mode::walk,
                           Mode::wait, Mode::ride, Mode::walk};
    for (int i = 0; i < 7; ++i) {
      CHECK(traj.periods[static_cast<std::size_t>(i)].duration_s == expected[i]);
      CHECK(traj.periods[static_cast<std::size_t>(i)].mode == modes[i]);
    }
    CHECK(traj.total_seconds() ==
          static_cast<int>(it->arrive - it->depart));
    // asset references: waits at stations, walks on footpaths
    CHECK(traj.periods[1].asset.kind == AssetTag::Kind::station);
    CHECK(traj.periods[1].asset.id == "A");
    CHECK(traj.periods[3].asset.kind == AssetTag::Kind::footpath);
    CHECK(traj.periods[3].asset.id == "transfer:B--C");
    CHECK(traj.periods[0].asset.id == "ingress:A");
    CHECK(traj.periods[6].asset.id == "egress:D");
    // conditioned flags follow the mode
    CHECK(traj.periods[2].conditioned);
    CHECK_FALSE(traj.periods[3].conditioned);
  }

  TEST_CASE("origin equals destination yields a walk-only itinerary") {
    const TransitNetwork& net = example_network();
    EpochSeconds depart = parse_iso8601("2019-08-14T10:00:00");
    auto it = plan_trip(net, {100.0, 0.0}, {100.0, 0.0}, depart, Mode::walk,
                        Mode::walk);
    REQUIRE(it.has_value());
    CHECK(it->rides == 0);
    CHECK(it->arrive == depart);
  }

  TEST_CASE("unreachable is a typed result, not a crash") {
    const TransitNetwork& net = example_network();
    // Departure after the calendar's last service, origin too far to walk.
    EpochSeconds depart = parse_iso8601("2019-08-31T22:00:00");
    auto it = plan_trip(net, {0.0, 0.0}, {27753.0, 0.0}, depart, Mode::walk,
                        Mode::walk);
    CHECK_FALSE(it.has_value());
    // And with no stop in reach at all:
    auto far = plan_trip(net, {0.0, 90000.0}, {27753.0, 90000.0}, depart,
                         Mode::walk, Mode::walk);
    CHECK_FALSE(far.has_value());
  }

  TEST_CASE("trajectory positions are continuous within legs") {
    const TransitNetwork& net = example_network();
    EpochSeconds depart = parse_iso8601("2019-08-14T14:43:00");
    auto it = plan_trip(net, {0.0, 0.0}, {27753.0, 0.0}, depart, Mode::bike,
                        Mode::walk);
    REQUIRE(it.has_value());
    Trajectory traj = trace_trajectory(net, *it, "demo");
    RouterOptions opts;
    for (const auto& p : traj.periods) {
      double max_speed = p.mode == Mode::ride
                             ? 40.0
                             : (p.mode == Mode::wait
                                    ? 0.0
                                    : opts.speed_for(p.mode));
      for (int s = 0; s + 1 <= p.duration_s; ++s) {
        Point a = p.position_at(s);
        Point b = p.position_at(s + 1);
        CHECK(distance_m(a, b) <= max_speed * 1.0 + 1e-6);
      }
      // legs start and end where their geometry says
      Point start = p.position_at(0);
      Point end = p.position_at(p.duration_s);
      CHECK(distance_m(start, p.from) <= 1e-6);
      if (p.geometry == Period::Geometry::segment)
        CHECK(distance_m(end, p.to) <= 1e-6);
    }
  }

  TEST_CASE("arrival is non-increasing in the round budget") {
    const TransitNetwork& net = example_network();
    EpochSeconds depart = parse_iso8601("2019-08-14T14:43:00");
    EpochSeconds prev = -1;
    for (int rounds = 1; rounds <= 5; ++rounds) {
      RouterOptions opts;
      opts.max_rounds = rounds;
      auto it = plan_trip(net, {0.0, 0.0}, {27753.0, 0.0}, depart, Mode::bike,
                          Mode::walk, opts);
      if (!it) continue;
      if (prev >= 0) CHECK(it->arrive <= prev);
      prev = it->arrive;
    }
  }

  TEST_CASE("optimality against exhaustive enumeration on random feeds") {
    RouterOptions opts;
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> coord(-500.0, 3500.0);
    std::uniform_int_distribution<int> hour(6 * 3600, 23 * 3600);
    EpochSeconds day = civil_to_epoch({2019, 8, 14, 0, 0, 0});
    for (int feed = 0; feed < 2; ++feed) {
      TransitNetwork net = fixtures::random_network(rng, 10, 20);
      for (int q = 0; q < 50; ++q) {
        Point o{coord(rng), coord(rng)};
        Point d{coord(rng), coord(rng)};
        EpochSeconds depart = day + hour(rng);
        auto got = plan_trip(net, o, d, depart, Mode::walk, Mode::walk, opts);
        auto want = oracle::earliest_arrival(net, o, d, depart, Mode::walk,
                                             Mode::walk, opts);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
          CHECK(got->arrive == *want);
          // and the itinerary is self-consistent
          Trajectory traj = trace_trajectory(net, *got, "q");
          if (!traj.periods.empty()) {
            CHECK(traj.depart() == got->depart);
            CHECK(traj.arrive() == got->arrive);
          }
        }
      }
    }
  }

  TEST_CASE("waits precede every ride") {
    const TransitNetwork& net = example_network();
    EpochSeconds depart = parse_iso8601("2019-08-14T14:43:00");
    auto it = plan_trip(net, {0.0, 0.0}, {27753.0, 0.0}, depart, Mode::bike,
                        Mode::walk);
    REQUIRE(it.has_value());
    for (std::size_t i = 0; i < it->legs.size(); ++i) {
      if (it->legs[i].type == Leg::Type::ride) {
        REQUIRE(i > 0);
        CHECK(it->legs[i - 1].type == Leg::Type::wait);
        CHECK(it->legs[i - 1].from_stop == it->legs[i].from_stop);
      }
    }
  }
}
