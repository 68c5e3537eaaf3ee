#include <doctest.h>

#include <cmath>

#include "heatpath/errors.hpp"
#include "heatpath/thermal.hpp"

using namespace heatpath;

TEST_SUITE("thermal") {
  TEST_CASE("heat index reference points") {
    // 96 F / 65% sits at 121 F on the published chart.
    CHECK(heat_index({96.0, 65.0, 0.0}) == doctest::Approx(121.0).epsilon(0.01));
    // Below the regression floor the simple formula applies.
    CHECK(heat_index({75.0, 50.0, 0.0}) == doctest::Approx(74.55));
    CHECK(std::fabs(heat_index({75.0, 50.0, 0.0}) - 75.0) <= 1.0);
  }

  TEST_CASE("sub-80 policy switch") {
    ThermalOptions pass;
    pass.sub80 = Sub80Policy::passthrough;
    CHECK(heat_index({75.0, 50.0, 0.0}, pass) == 75.0);
    CHECK(heat_index({86.0, 50.0, 0.0}, pass) ==
          heat_index({86.0, 50.0, 0.0}));
  }

  TEST_CASE("humidity adjustments engage in their windows") {
    // Low-RH subtraction reduces the raw regression value.
    WeatherSample dry{95.0, 10.0, 0.0};
    WeatherSample dry13{95.0, 13.0, 0.0};
    CHECK(heat_index(dry) < heat_index(dry13));
    // High-RH addition raises it.
    WeatherSample humid{82.0, 95.0, 0.0};
    double raw = -42.379 + 2.04901523 * 82 + 10.14333127 * 95 -
                 0.22475541 * 82 * 95 - 0.00683783 * 82 * 82 -
                 0.05481717 * 95 * 95 + 0.00122874 * 82 * 82 * 95 +
                 0.00085282 * 82 * 95 * 95 - 0.00000199 * 82 * 82 * 95 * 95;
    CHECK(heat_index(humid) == doctest::Approx(raw + (95.0 - 85.0) / 10.0 *
                                                         (87.0 - 82.0) / 5.0));
  }

  TEST_CASE("wind chill reference points") {
    CHECK(wind_chill({0.0, 50.0, 15.0}) == doctest::Approx(-19.0).epsilon(0.03));
    CHECK(wind_chill({35.0, 50.0, 10.0}) == doctest::Approx(27.0).epsilon(0.02));
    SUBCASE("gates") {
      CHECK(wind_chill({35.0, 50.0, 2.0}) == 35.0);   // below wind gate
      CHECK(wind_chill({55.0, 50.0, 20.0}) == 55.0);  // above temp gate
    }
  }

  TEST_CASE("heat index monotone in temperature for RH >= 40") {
    for (int rh = 40; rh <= 100; ++rh) {
      double prev = -1e9;
      for (int t = 80; t <= 112; ++t) {
        double hi = heat_index({static_cast<double>(t),
                                static_cast<double>(rh), 0.0});
        CHECK(hi >= prev);
        prev = hi;
      }
    }
  }

  TEST_CASE("wind chill monotone and bounded by air temperature") {
    for (int t = -40; t <= 50; t += 5) {
      double prev = 1e9;
      for (int v = 3; v <= 60; ++v) {
        double wc = wind_chill({static_cast<double>(t),
                                50.0, static_cast<double>(v)});
        CHECK(wc <= prev + 1e-12);
        CHECK(wc <= t);
        prev = wc;
      }
    }
    for (int v = 3; v <= 60; v += 3) {
      double prev = -1e9;
      for (int t = -40; t <= 50; ++t) {
        double wc = wind_chill({static_cast<double>(t),
                                50.0, static_cast<double>(v)});
        CHECK(wc >= prev);
        prev = wc;
      }
    }
  }

  TEST_CASE("pure functions: identical inputs, identical bits") {
    WeatherSample s{93.7, 61.2, 8.4};
    CHECK(heat_index(s) == heat_index(s));
    CHECK(wind_chill(s) == wind_chill(s));
  }

  TEST_CASE("invalid samples rejected") {
    CHECK_THROWS_AS(heat_index({std::nan(""), 50.0, 0.0}), DomainError);
    CHECK_THROWS_AS(heat_index({90.0, 120.0, 0.0}), DomainError);
    CHECK_THROWS_AS(wind_chill({40.0, 50.0, -1.0}), DomainError);
  }
}
