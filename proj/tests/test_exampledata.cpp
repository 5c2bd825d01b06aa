#include "catch_amalgamated.hpp"

#include <filesystem>

#include "txpower/exampledata.hpp"
#include "txpower/model_io.hpp"

using namespace txpower;
using namespace txpower::literals;

namespace fs = std::filesystem;

namespace {

const fs::path kExamples{TXPOWER_EXAMPLES_DIR};

}  // namespace

TEST_CASE("example bundle passes its own checks", "[exampledata]") {
    const auto report = validate_bundle(kExamples);
    for (const auto& c : report.checks) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
    CHECK(report.ok());
}

TEST_CASE("example bundle spans and fits", "[exampledata]") {
    const auto bundle = load_bundle(kExamples);
    CHECK(bundle.pa.kind() == BlockKind::PA);
    CHECK(bundle.osc.kind() == BlockKind::Oscillator);
    CHECK(bundle.mixer.kind() == BlockKind::Mixer);

    const auto fits = fit_bundle(bundle);
    CHECK(fits.pa.model.valid_lo.value() == 0.9);
    CHECK(fits.pa.model.valid_hi.value() == 309.3);
    CHECK(fits.osc.model.valid_lo.value() == 12.7);
    CHECK(fits.osc.model.valid_hi.value() == 310.0);
    CHECK(fits.mixer.model.valid_lo.value() == 0.9);
    CHECK(fits.mixer.model.valid_hi.value() == 140.0);
    CHECK(fits.pa.model.n_points == 14);
    CHECK(fits.osc.model.n_points == 12);
    CHECK(fits.mixer.model.n_points == 11);

    // frozen from an offline numpy fit of the same frontier points
    CHECK_THAT(fits.pa.model.a, Catch::Matchers::WithinRel(41.354, 1e-3));
    CHECK_THAT(fits.pa.model.b, Catch::Matchers::WithinRel(-0.006784, 1e-3));
    CHECK_THAT(fits.osc.model.b, Catch::Matchers::WithinRel(-0.004474, 1e-3));
    CHECK_THAT(fits.mixer.model.b, Catch::Matchers::WithinRel(-0.002979, 1e-3));
    REQUIRE(fits.pa.model.r_squared_log);
    CHECK(*fits.pa.model.r_squared_log > 0.5);
    CHECK(*fits.pa.model.r_squared_log < 0.7);

    const auto models = fits.models();
    const auto osc = osc_dc_power(models.osc, 150_GHz, 0_dBm);
    CHECK(osc.power.value() < kOscPowerCeilingMw);
}

TEST_CASE("calibration shares per level", "[exampledata]") {
    const auto models = fit_bundle(load_bundle(kExamples)).models();
    for (double level : kCalibrationLevelsDbm) {
        for (double f : {30.0, 60.0}) {
            const auto b = chain_breakdown(models, low_power_scenario(FrequencyGhz(f), PowerDbm(level)));
            CHECK(b.fractions.osc > kLowPowerOscShare);
        }
        for (double f : kKeyFrequenciesGhz) {
            const auto b = chain_breakdown(models, high_power_scenario(FrequencyGhz(f), PowerDbm(level)));
            CHECK(b.fractions.pa > kHighPowerPaShare);
        }
    }
}

TEST_CASE("bundle expectations parser", "[exampledata]") {
    const auto e = parse_bundle_expectations("x\nexpect: span PA 1 2\n  expect: points mixer 7\n");
    REQUIRE(e.size() == 2);
    CHECK(e[0].kind == BundleExpectation::Kind::Span);
    CHECK(e[0].hi == 2.0);
    CHECK(e[1].block == BlockKind::Mixer);
    CHECK(e[1].points == 7);
    CHECK_THROWS_AS(parse_bundle_expectations("expect: span FOO 1 2\n"), ValidationError);
    CHECK_THROWS_AS(parse_bundle_expectations("expect: width PA 1\n"), ValidationError);
}

TEST_CASE("broken bundle is reported, not thrown", "[exampledata]") {
    const fs::path dir = fs::temp_directory_path() / "txpower_broken_bundle";
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (auto name : {kPaSurveyFile, kOscSurveyFile, kMixerSurveyFile, kBundleReadme}) {
        fs::copy_file(kExamples / name, dir / name);
    }
    write_file(dir / kMixerSurveyFile, "block,frequency_ghz,metric,label\nPA,60,20,wrong-kind\n");
    const auto report = validate_bundle(dir);
    CHECK_FALSE(report.ok());
}
