#include "txpower/exampledata.hpp"

#include <sstream>

#include <fmt/core.h>

#include "csv_util.hpp"
#include "txpower/model_io.hpp"

namespace txpower {

ExampleBundle load_bundle(const std::filesystem::path& dir) {
    auto load = [&](std::string_view name) {
        try {
            return parse_survey_csv(read_file(dir / name));
        } catch (const Error& e) {
            throw ValidationError(fmt::format("{}: {}", name, e.what()));
        }
    };
    return ExampleBundle{load(kPaSurveyFile), load(kOscSurveyFile), load(kMixerSurveyFile),
                         read_file(dir / kBundleReadme)};
}

std::vector<BundleExpectation> parse_bundle_expectations(std::string_view readme) {
    std::vector<BundleExpectation> out;
    std::istringstream in{std::string(readme)};
    std::string line;
    while (std::getline(in, line)) {
        std::string_view t = detail::trim(line);
        constexpr std::string_view prefix = "expect:";
        if (!t.starts_with(prefix)) continue;
        std::istringstream fields{std::string(t.substr(prefix.size()))};
        std::string what;
        std::string block_token;
        fields >> what >> block_token;
        const auto block = parse_block_kind(block_token);
        if (!block) throw ValidationError(fmt::format("bad expectation line '{}'", t));
        if (what == "span") {
            double lo = 0.0;
            double hi = 0.0;
            if (!(fields >> lo >> hi)) throw ValidationError(fmt::format("bad span expectation '{}'", t));
            out.push_back({BundleExpectation::Kind::Span, *block, lo, hi, 0});
        } else if (what == "points") {
            std::size_t n = 0;
            if (!(fields >> n)) throw ValidationError(fmt::format("bad points expectation '{}'", t));
            out.push_back({BundleExpectation::Kind::Points, *block, 0.0, 0.0, n});
        } else {
            throw ValidationError(fmt::format("unknown expectation '{}'", what));
        }
    }
    return out;
}

ChainModels BundleFits::models() const {
    return ChainModels{PaModel(pa.model), OscModel(osc.model), MixerModel(mixer.model)};
}

BundleFits fit_bundle(const ExampleBundle& bundle, FrontierStrategy strategy) {
    return BundleFits{fit_survey(bundle.pa, strategy), fit_survey(bundle.osc, strategy),
                      fit_survey(bundle.mixer, strategy)};
}

ChainConfig low_power_scenario(FrequencyGhz f, PowerDbm mixer_out) {
    return level_config(ChainConfig{.frequency = f,
                                    .p_if_in = PowerDbm(-5.0),
                                    .p_mixer_out = mixer_out,
                                    .p_pa_out = PowerDbm(0.0),
                                    .p_osc_rf = PowerDbm(0.0)},
                        mixer_out);
}

ChainConfig high_power_scenario(FrequencyGhz f, PowerDbm mixer_out) {
    return level_config(ChainConfig{.frequency = f,
                                    .p_if_in = PowerDbm(-5.0),
                                    .p_mixer_out = mixer_out,
                                    .p_pa_out = PowerDbm(5.0),
                                    .p_osc_rf = PowerDbm(0.0)},
                        mixer_out);
}

bool BundleReport::ok() const noexcept {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

BundleReport validate_bundle(const std::filesystem::path& dir) {
    BundleReport report;
    auto check = [&](std::string name, bool passed, std::string detail) {
        report.checks.push_back({std::move(name), passed, std::move(detail)});
    };

    std::optional<ExampleBundle> bundle;
    try {
        bundle = load_bundle(dir);
        check("parse surveys", true, "3 files parsed");
    } catch (const Error& e) {
        check("parse surveys", false, e.what());
        return report;
    }
    check("PA file holds PA records", bundle->pa.kind() == BlockKind::PA, std::string(to_token(bundle->pa.kind())));
    check("OSC file holds OSC records", bundle->osc.kind() == BlockKind::Oscillator,
          std::string(to_token(bundle->osc.kind())));
    check("MIXER file holds MIXER records", bundle->mixer.kind() == BlockKind::Mixer,
          std::string(to_token(bundle->mixer.kind())));
    if (!report.ok()) return report;

    std::optional<BundleFits> fits;
    try {
        fits = fit_bundle(*bundle);
        check("fit surveys", true, "pareto_upper frontier, log-linear OLS");
    } catch (const Error& e) {
        check("fit surveys", false, e.what());
        return report;
    }

    auto fit_for = [&](BlockKind k) -> const ExpFitModel& {
        switch (k) {
            case BlockKind::PA: return fits->pa.model;
            case BlockKind::Oscillator: return fits->osc.model;
            case BlockKind::Mixer: break;
        }
        return fits->mixer.model;
    };

    std::vector<BundleExpectation> expectations;
    try {
        expectations = parse_bundle_expectations(bundle->readme);
        check("README expectations", !expectations.empty(), fmt::format("{} declared", expectations.size()));
    } catch (const Error& e) {
        check("README expectations", false, e.what());
    }
    for (const auto& e : expectations) {
        const auto& m = fit_for(e.block);
        if (e.kind == BundleExpectation::Kind::Span) {
            check(fmt::format("{} validity span", to_token(e.block)),
                  m.valid_lo.value() == e.lo && m.valid_hi.value() == e.hi,
                  fmt::format("fitted [{}, {}] GHz, declared [{}, {}] GHz", m.valid_lo.value(), m.valid_hi.value(),
                              e.lo, e.hi));
        } else {
            check(fmt::format("{} frontier size", to_token(e.block)), m.n_points == e.points,
                  fmt::format("fitted {} points, declared {}", m.n_points, e.points));
        }
    }

    for (BlockKind k : {BlockKind::PA, BlockKind::Oscillator, BlockKind::Mixer}) {
        const double b = fit_for(k).b;
        check(fmt::format("{} metric degrades with frequency", to_token(k)), b < 0.0, fmt::format("b = {} /GHz", b));
    }

    ChainModels models = fits->models();
    try {
        const auto osc = osc_dc_power(models.osc, FrequencyGhz(150.0), PowerDbm(0.0));
        check("oscillator P_DC at 150 GHz below 10 mW", osc.power.value() < kOscPowerCeilingMw,
              fmt::format("{:.4f} mW", osc.power.value()));
    } catch (const Error& e) {
        check("oscillator P_DC at 150 GHz below 10 mW", false, e.what());
    }

    for (double level : kCalibrationLevelsDbm) {
        for (double f : {30.0, 60.0}) {
            const std::string name = fmt::format("low-power oscillator share > 55% at {} GHz, mixer out {} dBm", f, level);
            try {
                const auto b = chain_breakdown(models, low_power_scenario(FrequencyGhz(f), PowerDbm(level)));
                check(name, b.fractions.osc > kLowPowerOscShare, fmt::format("{:.1f} %", 100.0 * b.fractions.osc));
            } catch (const Error& e) {
                check(name, false, e.what());
            }
        }
        for (double f : kKeyFrequenciesGhz) {
            const std::string name = fmt::format("5 dBm PA share > 65% at {} GHz, mixer out {} dBm", f, level);
            try {
                const auto b = chain_breakdown(models, high_power_scenario(FrequencyGhz(f), PowerDbm(level)));
                check(name, b.fractions.pa > kHighPowerPaShare, fmt::format("{:.1f} %", 100.0 * b.fractions.pa));
            } catch (const Error& e) {
                check(name, false, e.what());
            }
        }
    }
    return report;
}

}  // namespace txpower
