#pragma once

// Shipped illustrative survey bundle (data/examples/) and its self-check.
//
// The bundle README declares machine-checked expectations, one per line:
//
//   expect: span PA 0.9 309.3
//   expect: points PA 14
//
// validate_bundle parses and fits the three surveys and checks those lines
// plus the fixed calibration targets below.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "txpower/regression.hpp"
#include "txpower/survey.hpp"
#include "txpower/txchain.hpp"

namespace txpower {

struct ExampleBundle {
    SurveyDataset pa;
    SurveyDataset osc;
    SurveyDataset mixer;
    std::string readme;
};

inline constexpr std::string_view kPaSurveyFile = "pa_survey.csv";
inline constexpr std::string_view kOscSurveyFile = "osc_survey.csv";
inline constexpr std::string_view kMixerSurveyFile = "mixer_survey.csv";
inline constexpr std::string_view kBundleReadme = "README.txt";

// Calibration targets for the shipped data.
inline constexpr double kLowPowerOscShare = 0.55;   // at 30 and 60 GHz, PA out 0 dBm
inline constexpr double kHighPowerPaShare = 0.65;   // at all key frequencies, PA out 5 dBm
inline constexpr double kOscPowerCeilingMw = 10.0;  // oscillator at 150 GHz, 0 dBm out
inline constexpr std::array<double, 3> kCalibrationLevelsDbm{-15.0, -10.0, -5.0};

ExampleBundle load_bundle(const std::filesystem::path& dir);

struct BundleExpectation {
    enum class Kind { Span, Points };
    Kind kind;
    BlockKind block;
    double lo = 0.0;  // Span: GHz
    double hi = 0.0;
    std::size_t points = 0;
};

std::vector<BundleExpectation> parse_bundle_expectations(std::string_view readme);

struct BundleFits {
    FitResult pa;
    FitResult osc;
    FitResult mixer;

    ChainModels models() const;
};

BundleFits fit_bundle(const ExampleBundle& bundle,
                      FrontierStrategy strategy = FrontierStrategy::pareto_upper());

/// Low-power (PA out 0 dBm) and high-power (PA out 5 dBm) scenario bases with
/// P_IF = -5 dBm and oscillator output 0 dBm.
ChainConfig low_power_scenario(FrequencyGhz f, PowerDbm mixer_out);
ChainConfig high_power_scenario(FrequencyGhz f, PowerDbm mixer_out);

struct BundleCheck {
    std::string name;
    bool passed;
    std::string detail;
};

struct BundleReport {
    std::vector<BundleCheck> checks;

    bool ok() const noexcept;
};

BundleReport validate_bundle(const std::filesystem::path& dir);

}  // namespace txpower
