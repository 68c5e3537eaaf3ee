#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "heatpath/errors.hpp"
#include "heatpath/resilience.hpp"

using namespace heatpath;

namespace {

AssetTag station(const std::string& id) {
  return {AssetTag::Kind::station, id, 0.0};
}
AssetTag footpath(const std::string& id, double len) {
  return {AssetTag::Kind::footpath, id, len};
}

TripContribution trip(const std::string& id, double weight, bool flagged,
                      std::vector<TripContribution::Part> parts) {
  TripContribution c;
  c.trip_id = id;
  c.weight = weight;
  c.flagged = flagged;
  c.parts = std::move(parts);
  return c;
}

}  // namespace

TEST_SUITE("resilience") {
  TEST_CASE("two-trip station example") {
    // waits of 10 and 20 minutes, deficit rate 0.5/min, one trip flagged
    std::vector<TripContribution> trips = {
        trip("t1", 1.0, true, {{station("A"), 10.0, 5.0}}),
        trip("t2", 1.0, false, {{station("A"), 20.0, 10.0}}),
    };
    auto stats = accumulate(trips);
    AssetKey key{AssetTag::Kind::station, "A"};
    REQUIRE(stats.count(key) == 1);
    const AssetStats& s = stats.at(key);
    CHECK(s.criticality_min == 30.0);
    CHECK(s.exposure_per_min == 0.5);
    CHECK(s.vulnerability == 0.5);
    CHECK(s.incident_count == 2.0);
    auto scores = prioritize(stats);
    CHECK(scores.at(key).mitigation == 15.0);
    CHECK(scores.at(key).adaptation == 1.0);
    CHECK(scores.at(key).rank_mitigation == 1);
  }

  TEST_CASE("weighted vulnerability") {
    // weights 2 and 1, flagged trip has weight 2 -> vulnerability 2/3
    std::vector<TripContribution> trips = {
        trip("t1", 2.0, true, {{station("A"), 10.0, 0.0}}),
        trip("t2", 1.0, false, {{station("A"), 10.0, 0.0}}),
    };
    auto stats = accumulate(trips);
    CHECK(stats.at({AssetTag::Kind::station, "A"}).vulnerability ==
          doctest::Approx(2.0 / 3.0));
  }

  TEST_CASE("untouched assets are absent") {
    std::vector<TripContribution> trips = {
        trip("t1", 1.0, false, {{station("A"), 5.0, 0.0}})};
    auto stats = accumulate(trips);
    CHECK(stats.size() == 1);
    CHECK(stats.count({AssetTag::Kind::station, "B"}) == 0);
  }

  TEST_CASE("weight scaling leaves ratios and rankings unchanged") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> mins(1.0, 40.0);
    std::uniform_real_distribution<double> rate(0.0, 1.0);
    std::vector<TripContribution> trips;
    const char* stations[4] = {"A", "B", "C", "D"};
    for (int i = 0; i < 24; ++i) {
      double m = mins(rng);
      trips.push_back(trip(
          "t" + std::to_string(i), 1.0 + (i % 3), rng() % 4 == 0,
          {{station(stations[i % 4]), m, m * rate(rng)},
           {footpath("transfer:X--Y", 400.0), m / 2.0, m * rate(rng) / 2.0}}));
    }
    auto stats1 = accumulate(trips);
    auto scores1 = prioritize(stats1);
    const double c = 7.5;
    for (auto& t : trips) t.weight *= c;
    auto stats2 = accumulate(trips);
    auto scores2 = prioritize(stats2);
    REQUIRE(stats1.size() == stats2.size());
    for (const auto& [key, s1] : stats1) {
      const AssetStats& s2 = stats2.at(key);
      CHECK(s2.criticality_min == doctest::Approx(c * s1.criticality_min));
      CHECK(s2.incident_count == doctest::Approx(c * s1.incident_count));
      CHECK(s2.exposure_per_min == doctest::Approx(s1.exposure_per_min));
      CHECK(s2.vulnerability == doctest::Approx(s1.vulnerability));
      CHECK(scores2.at(key).mitigation ==
            doctest::Approx(c * scores1.at(key).mitigation));
      CHECK(scores2.at(key).adaptation ==
            doctest::Approx(c * scores1.at(key).adaptation));
      CHECK(scores2.at(key).rank_mitigation == scores1.at(key).rank_mitigation);
      CHECK(scores2.at(key).rank_adaptation == scores1.at(key).rank_adaptation);
    }
  }

  TEST_CASE("criticality conserves weighted out-of-vehicle minutes") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> mins(1.0, 30.0);
    std::vector<TripContribution> trips;
    double expected = 0.0;
    for (int i = 0; i < 30; ++i) {
      double w = 1.0 + (i % 4);
      double m1 = mins(rng), m2 = mins(rng);
      expected += w * (m1 + m2);
      trips.push_back(trip("t" + std::to_string(i), w, false,
                           {{station(i % 2 ? "A" : "B"), m1, 0.0},
                            {footpath("ingress:A", 120.0), m2, 0.0}}));
    }
    auto stats = accumulate(trips);
    double total = 0.0;
    for (const auto& [key, s] : stats) total += s.criticality_min;
    CHECK(total == doctest::Approx(expected).epsilon(1e-12));
  }

  TEST_CASE("rankings are deterministic under input permutation") {
    std::vector<TripContribution> trips;
    for (int i = 0; i < 12; ++i)
      trips.push_back(trip("t" + std::to_string(i), 1.0, i % 3 == 0,
                           {{station(std::string(1, char('A' + i % 5))),
                             double(i + 1), double(i) / 3.0}}));
    auto scores1 = prioritize(accumulate(trips));
    std::mt19937 rng(5);
    std::shuffle(trips.begin(), trips.end(), rng);
    auto scores2 = prioritize(accumulate(trips));
    REQUIRE(scores1.size() == scores2.size());
    for (const auto& [key, p1] : scores1) {
      CHECK(scores2.at(key).rank_mitigation == p1.rank_mitigation);
      CHECK(scores2.at(key).rank_adaptation == p1.rank_adaptation);
    }
  }

  TEST_CASE("equal exposure makes mitigation ranking follow criticality") {
    std::vector<TripContribution> trips = {
        trip("t1", 1.0, false, {{station("A"), 30.0, 15.0}}),
        trip("t2", 1.0, false, {{station("B"), 10.0, 5.0}}),
        trip("t3", 1.0, false, {{station("C"), 20.0, 10.0}}),
    };
    auto stats = accumulate(trips);
    auto scores = prioritize(stats);
    CHECK(scores.at({AssetTag::Kind::station, "A"}).rank_mitigation == 1);
    CHECK(scores.at({AssetTag::Kind::station, "C"}).rank_mitigation == 2);
    CHECK(scores.at({AssetTag::Kind::station, "B"}).rank_mitigation == 3);
  }

  TEST_CASE("zero vulnerability zeroes adaptation regardless of traffic") {
    std::vector<TripContribution> trips;
    for (int i = 0; i < 50; ++i)
      trips.push_back(
          trip("t" + std::to_string(i), 3.0, false, {{station("HUB"), 25.0, 1.0}}));
    auto scores = prioritize(accumulate(trips));
    CHECK(scores.at({AssetTag::Kind::station, "HUB"}).adaptation == 0.0);
  }

  TEST_CASE("missing asset reference names the trip") {
    Trajectory traj;
    traj.trip_id = "broken";
    Period p;
    p.start = 0;
    p.duration_s = 60;
    p.mode = Mode::walk;
    p.conditioned = false;
    traj.periods = {p};
    HeatLedger led;
    led.periods.resize(1);
    CHECK_THROWS_WITH_AS(make_contribution(traj, led, 1.0),
                         doctest::Contains("'broken'"), DomainError);
  }

  TEST_CASE("footpath criticality is reported per mile") {
    std::vector<TripContribution> trips = {
        trip("t1", 1.0, false, {{footpath("transfer:A--B", 804.672), 10.0, 0.0}})};
    auto stats = accumulate(trips);
    AssetKey key{AssetTag::Kind::footpath, "transfer:A--B"};
    // half a mile: per-mile criticality doubles the raw minutes
    CHECK(reported_criticality(key, stats.at(key)) == doctest::Approx(20.0));
  }
}
