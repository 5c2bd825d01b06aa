#include "catch_amalgamated.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "txpower/units.hpp"

using namespace txpower;
using namespace txpower::literals;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("dbm_to_mw reference values", "[units]") {
    CHECK(dbm_to_mw(0.0_dBm).value() == 1.0);
    CHECK_THAT(dbm_to_mw(10.0_dBm).value(), WithinRel(10.0, 1e-15));
    // 10^(-1.5), 30-digit reference
    CHECK_THAT(dbm_to_mw(-15.0_dBm).value(), WithinRel(0.0316227766016837933199889354443, 1e-15));
}

TEST_CASE("mw_to_dbm reference values", "[units]") {
    CHECK(mw_to_dbm(1.0_mW).value() == 0.0);
    CHECK_THAT(mw_to_dbm(0.5_mW).value(), WithinRel(-3.01029995663981195213738894725, 1e-15));
    for (int x = -40; x <= 20; ++x) {
        CHECK_THAT(mw_to_dbm(dbm_to_mw(PowerDbm(x))).value(), WithinAbs(x, 1e-12));
    }
}

TEST_CASE("unit conversion errors", "[units]") {
    CHECK_THROWS_AS(PowerDbm(std::numeric_limits<double>::quiet_NaN()), ValidationError);
    CHECK_THROWS_AS(PowerDbm(std::numeric_limits<double>::infinity()), ValidationError);
    CHECK_THROWS_AS(mw_to_dbm(0.0_mW), ValidationError);
    CHECK_THROWS_AS(PowerMilliwatt(-1.0), ValidationError);
    CHECK_THROWS_AS(FrequencyGhz(0.0), ValidationError);
    CHECK_THROWS_AS(FrequencyGhz(-5.0), ValidationError);
    CHECK_THROWS_AS(1.0_mW - 2.0_mW, ValidationError);
    CHECK((2.0_mW - 2.0_mW).value() == 0.0);
}

TEST_CASE("round trip, monotonicity and positivity over [-100, 100] dBm", "[units][property]") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> dist(-100.0, 100.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = dist(rng);
        const double y = dist(rng);
        const double mx = dbm_to_mw(PowerDbm(x)).value();
        CHECK(mx > 0.0);
        CHECK(std::fabs(mw_to_dbm(PowerMilliwatt(mx)).value() - x) < 1e-12);
        if (x < y) CHECK(mx < dbm_to_mw(PowerDbm(y)).value());
    }
}

TEST_CASE("literals", "[units]") {
    CHECK((-15.0_dBm).value() == -15.0);
    CHECK((60_GHz).value() == 60.0);
    CHECK(-5_dBm < 0_dBm);
}
