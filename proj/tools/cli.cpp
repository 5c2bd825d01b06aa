#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "txpower/exampledata.hpp"
#include "txpower/model_io.hpp"
#include "txpower/report_io.hpp"

#ifndef TXPOWER_VERSION
#define TXPOWER_VERSION "0.0.0"
#endif

namespace txpower::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModelPaths {
    std::string pa;
    std::string osc;
    std::string mixer;
};

struct Scenario {
    double p_if = -5.0;
    std::optional<double> p_pa_out;
    double p_osc_rf = 0.0;
};

void add_model_options(CLI::App* cmd, ModelPaths& paths) {
    cmd->add_option("--pa", paths.pa, "PA model JSON (required when --p-pa-out is given)");
    cmd->add_option("--osc", paths.osc, "oscillator model JSON")->required();
    cmd->add_option("--mixer", paths.mixer, "mixer model JSON")->required();
}

void add_scenario_options(CLI::App* cmd, Scenario& s) {
    cmd->add_option("--p-if", s.p_if, "mixer IF input power [dBm]")->capture_default_str();
    cmd->add_option("--p-pa-out", s.p_pa_out, "PA output power [dBm]; omit for no PA stage");
    cmd->add_option("--p-osc-rf", s.p_osc_rf, "oscillator RF output power [dBm]")->capture_default_str();
}

ChainModels load_models(const ModelPaths& paths, const Scenario& s) {
    if (s.p_pa_out && paths.pa.empty()) {
        throw UsageError("--p-pa-out requires --pa <model.json>");
    }
    std::optional<PaModel> pa;
    if (!paths.pa.empty()) pa = load_pa_model(paths.pa);
    return ChainModels{std::move(pa), load_osc_model(paths.osc), load_mixer_model(paths.mixer)};
}

std::map<std::string, std::string> digests_of(std::initializer_list<std::string> paths) {
    std::map<std::string, std::string> out;
    for (const auto& p : paths) {
        if (!p.empty()) out[p] = sha256_digest(read_file(p));
    }
    return out;
}

RunManifest manifest_for(std::string command, nlohmann::ordered_json params,
                         std::map<std::string, std::string> inputs) {
    return RunManifest{std::move(command), std::move(params), std::move(inputs), TXPOWER_VERSION, utc_timestamp()};
}

nlohmann::ordered_json scenario_json(const Scenario& s) {
    nlohmann::ordered_json j;
    j["p_if_dbm"] = s.p_if;
    j["p_pa_out_dbm"] = s.p_pa_out ? nlohmann::ordered_json(*s.p_pa_out) : nlohmann::ordered_json(nullptr);
    j["p_osc_rf_dbm"] = s.p_osc_rf;
    return j;
}

std::vector<double> parse_number_list(const std::string& text, std::string_view what) {
    std::vector<double> out;
    std::string_view rest = text;
    while (true) {
        const auto pos = rest.find(',');
        const auto token = rest.substr(0, pos);
        double v = 0.0;
        std::istringstream in{std::string(token)};
        if (!(in >> v) || !(in >> std::ws).eof()) {
            throw UsageError(fmt::format("malformed {} '{}'", what, text));
        }
        out.push_back(v);
        if (pos == std::string_view::npos) break;
        rest = rest.substr(pos + 1);
    }
    return out;
}

struct RangeSpec {
    double lo;
    double hi;
    std::optional<std::size_t> n;
};

RangeSpec parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3) {
        throw UsageError(fmt::format("malformed range '{}' (expected lo:hi or lo:hi:n)", text));
    }
    auto num = [&](const std::string& s) {
        double v = 0.0;
        std::istringstream ns(s);
        if (!(ns >> v) || !(ns >> std::ws).eof()) throw UsageError(fmt::format("malformed range '{}'", text));
        return v;
    };
    RangeSpec r{num(parts[0]), num(parts[1]), std::nullopt};
    if (parts.size() == 3) {
        const double n = num(parts[2]);
        if (n < 2 || n != static_cast<double>(static_cast<std::size_t>(n))) {
            throw UsageError(fmt::format("range point count in '{}' must be an integer >= 2", text));
        }
        r.n = static_cast<std::size_t>(n);
    }
    if (!(r.lo > 0.0) || !(r.lo < r.hi)) {
        throw UsageError(fmt::format("range '{}' must satisfy 0 < lo < hi", text));
    }
    return r;
}

std::vector<FrequencyGhz> to_frequencies(const std::vector<double>& values) {
    std::vector<FrequencyGhz> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0)) throw UsageError(fmt::format("frequency {} GHz must be > 0", values[i]));
        if (i > 0 && !(values[i - 1] < values[i])) {
            throw UsageError("--freqs must be strictly increasing");
        }
        out.emplace_back(values[i]);
    }
    return out;
}

std::string describe_config(const ChainConfig& c) {
    return fmt::format("P_IF {} dBm, mixer out {} dBm, PA out {}, osc RF {} dBm", c.p_if_in.value(),
                       c.p_mixer_out.value(), c.p_pa_out ? fmt::format("{} dBm", c.p_pa_out->value()) : "none",
                       c.p_osc_rf.value());
}

void print_breakdown(std::ostream& out, const PowerBreakdown& b) {
    auto row = [&](std::string_view name, PowerMilliwatt p, double share, bool extrapolated) {
        fmt::print(out, "  {:<11} {:>12.4f} mW {:>8.2f} %{}\n", name, p.value(), 100.0 * share,
                   extrapolated ? "  (extrapolated)" : "");
    };
    fmt::print(out, "TX breakdown at {} GHz ({})\n", b.config.frequency.value(), describe_config(b.config));
    row("PA", b.pa_mw, b.fractions.pa, b.extrapolated.pa);
    row("oscillator", b.osc_mw, b.fractions.osc, b.extrapolated.osc);
    row("mixer", b.mixer_mw, b.fractions.mixer, b.extrapolated.mixer);
    fmt::print(out, "  {:<11} {:>12.4f} mW {:>8.2f} %\n", "total", b.total_mw.value(), 100.0);
    fmt::print(out, "  dominant: {}\n", display_name(dominant_block(b)));
}

void warn_extrapolation(std::ostream& err, const PowerBreakdown& b, const ChainModels& models) {
    auto warn = [&](bool on, std::string_view name, const ExpFitModel& fit) {
        if (!on) return;
        fmt::print(err, "warning: {} model extrapolated at {} GHz (fitted {} GHz .. {} GHz)\n", name,
                   b.config.frequency.value(), fit.valid_lo.value(), fit.valid_hi.value());
    };
    if (models.pa) warn(b.extrapolated.pa, "PA", models.pa->pae_fit());
    warn(b.extrapolated.osc, "oscillator", models.osc.efficiency_fit());
    warn(b.extrapolated.mixer, "mixer", models.mixer.fom_fit());
}

// ---------------------------------------------------------------------------

struct FitArgs {
    std::string survey;
    std::string block;
    std::string strategy = "pareto_upper";
    std::string out;
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
    const auto kind = parse_block_kind(a.block);
    if (!kind) throw UsageError(fmt::format("unknown block '{}' (expected PA, OSC or MIXER)", a.block));
    const FrontierStrategy strategy = [&] {
        try {
            return FrontierStrategy::parse(a.strategy);
        } catch (const ValidationError& e) {
            throw UsageError(e.what());
        }
    }();

    const std::string raw = read_file(a.survey);
    const SurveyDataset data = parse_survey_csv(raw);
    if (data.kind() != *kind) {
        throw ValidationError(fmt::format("'{}' holds {} records, but --block is {}", a.survey, to_token(data.kind()),
                                          to_token(*kind)));
    }
    const FitResult fit = fit_survey(data, strategy);
    const StoredModel stored{*kind, fit.model, dataset_digest(data)};
    save_model(a.out, stored);

    nlohmann::ordered_json params;
    params["survey"] = a.survey;
    params["block"] = std::string(to_token(*kind));
    params["strategy"] = strategy.tag();
    params["out"] = a.out;
    write_manifest(a.out, manifest_for("fit", params, digests_of({a.survey})));

    const auto& m = fit.model;
    std::string_view unit = *kind == BlockKind::PA ? " %" : (*kind == BlockKind::Mixer ? " /mW" : "");
    auto r2 = [](const std::optional<double>& v) { return v ? fmt::format("{:.4f}", *v) : std::string("undefined"); };
    fmt::print(out, "fit {}: {} frontier points of {} records ({})\n", to_token(*kind), m.n_points, data.size(),
               strategy.tag());
    fmt::print(out, "  metric(f) = {:.6g}{} * exp({:.6g} /GHz * f)\n", m.a, unit, m.b);
    fmt::print(out, "  a = {}{}\n  b = {} /GHz\n", m.a, unit, m.b);
    fmt::print(out, "  validity range: {} GHz .. {} GHz\n", m.valid_lo.value(), m.valid_hi.value());
    fmt::print(out, "  R^2 (log domain): {}\n  R^2 (linear domain): {}\n", r2(m.r_squared_log),
               r2(m.r_squared_linear));
    fmt::print(out, "  model written to {}\n", a.out);
    return kExitOk;
}

struct BreakdownArgs {
    ModelPaths models;
    Scenario scenario;
    double freq = 0.0;
    double p_mixer_out = -10.0;
    std::string csv;
    std::string json;
    bool strict = false;
};

int cmd_breakdown(const BreakdownArgs& a, std::ostream& out, std::ostream& err) {
    const ChainModels models = load_models(a.models, a.scenario);
    if (!(a.freq > 0.0)) throw UsageError("--freq must be > 0 GHz");
    ChainConfig cfg{.frequency = FrequencyGhz(a.freq),
                    .p_if_in = PowerDbm(a.scenario.p_if),
                    .p_mixer_out = PowerDbm(a.p_mixer_out),
                    .p_pa_out = a.scenario.p_pa_out ? std::optional(PowerDbm(*a.scenario.p_pa_out)) : std::nullopt,
                    .p_osc_rf = PowerDbm(a.scenario.p_osc_rf)};
    const PowerBreakdown b = chain_breakdown(models, cfg);
    print_breakdown(out, b);
    warn_extrapolation(err, b, models);

    nlohmann::ordered_json params = scenario_json(a.scenario);
    params["frequency_ghz"] = a.freq;
    params["p_mixer_out_dbm"] = a.p_mixer_out;
    const auto inputs = digests_of({a.models.pa, a.models.osc, a.models.mixer});
    if (!a.csv.empty()) {
        write_file(a.csv, breakdowns_to_csv(std::span(&b, 1)));
        write_manifest(a.csv, manifest_for("breakdown", params, inputs));
    }
    if (!a.json.empty()) {
        write_file(a.json, breakdown_to_json(b).dump(2) + "\n");
        write_manifest(a.json, manifest_for("breakdown", params, inputs));
    }
    return a.strict && b.extrapolated.any() ? kExitExtrapolated : kExitOk;
}

struct SweepArgs {
    ModelPaths models;
    Scenario scenario;
    std::string freqs;
    std::string range;
    std::string levels = "-15,-10,-5,0";
    std::string out;
    std::string json;
    bool strict = false;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    if (a.freqs.empty() == a.range.empty()) {
        throw UsageError("give exactly one of --freqs f1,f2,... or --range lo:hi:n");
    }
    std::vector<FrequencyGhz> grid;
    if (!a.freqs.empty()) {
        grid = to_frequencies(parse_number_list(a.freqs, "frequency list"));
    } else {
        const RangeSpec r = parse_range(a.range);
        if (!r.n) throw UsageError("--range for sweep needs a point count: lo:hi:n");
        grid = uniform_grid(FrequencyGhz(r.lo), FrequencyGhz(r.hi), *r.n);
    }
    const std::vector<double> levels = parse_number_list(a.levels, "level list");
    const ChainModels models = load_models(a.models, a.scenario);

    const ChainConfig base{
        .frequency = grid.front(),
        .p_if_in = PowerDbm(a.scenario.p_if),
        .p_mixer_out = PowerDbm(levels.front()),
        .p_pa_out = a.scenario.p_pa_out ? std::optional(PowerDbm(*a.scenario.p_pa_out)) : std::nullopt,
        .p_osc_rf = PowerDbm(a.scenario.p_osc_rf)};

    std::vector<PowerBreakdown> rows;
    nlohmann::ordered_json json_levels = nlohmann::ordered_json::array();
    bool any_extrapolated = false;
    for (double level : levels) {
        const ChainConfig cfg = level_config(base, PowerDbm(level));
        const SweepResult result = sweep(models, cfg, grid);
        fmt::print(out, "mixer out {} dBm ({})\n", level, describe_config(cfg));
        fmt::print(out, "  {:>10}  {:>11}  {:>11}  {:>11}  {:>11}  {}\n", "f [GHz]", "PA [mW]", "osc [mW]",
                   "mixer [mW]", "total [mW]", "dominant");
        const auto dominance = dominance_report(result);
        for (std::size_t i = 0; i < result.size(); ++i) {
            const auto& b = result[i];
            fmt::print(out, "  {:>10g}  {:>11.4f}  {:>11.4f}  {:>11.4f}  {:>11.4f}  {} ({:.1f} %){}\n",
                       b.config.frequency.value(), b.pa_mw.value(), b.osc_mw.value(), b.mixer_mw.value(),
                       b.total_mw.value(), display_name(dominance[i].second), 100.0 * b.share(dominance[i].second),
                       b.extrapolated.any() ? "  [extrapolated: " + extrapolated_blocks(b.extrapolated) + "]" : "");
            warn_extrapolation(err, b, models);
            any_extrapolated = any_extrapolated || b.extrapolated.any();
            rows.push_back(b);
        }
        nlohmann::ordered_json lj;
        lj["p_mixer_out_dbm"] = level;
        lj["points"] = sweep_to_json(result);
        json_levels.push_back(lj);
    }

    nlohmann::ordered_json params = scenario_json(a.scenario);
    params["frequencies_ghz"] = nlohmann::ordered_json::array();
    for (const auto& f : grid) params["frequencies_ghz"].push_back(f.value());
    params["levels_dbm"] = levels;
    const auto inputs = digests_of({a.models.pa, a.models.osc, a.models.mixer});
    write_file(a.out, breakdowns_to_csv(rows));
    write_manifest(a.out, manifest_for("sweep", params, inputs));
    if (!a.json.empty()) {
        write_file(a.json, json_levels.dump(2) + "\n");
        write_manifest(a.json, manifest_for("sweep", params, inputs));
    }
    fmt::print(out, "{} rows written to {}\n", rows.size(), a.out);
    return a.strict && any_extrapolated ? kExitExtrapolated : kExitOk;
}

struct RecommendArgs {
    ModelPaths models;
    Scenario scenario;
    std::string range;
    std::size_t n_grid = 512;
    double p_mixer_out = -10.0;
    bool allow_extrapolation = false;
    std::string json;
};

int cmd_recommend(const RecommendArgs& a, std::ostream& out, std::ostream& err) {
    const RangeSpec r = parse_range(a.range);
    const std::size_t n = r.n.value_or(a.n_grid);
    if (n < 2) throw UsageError("--grid must be >= 2");
    const ChainModels models = load_models(a.models, a.scenario);
    const ChainConfig base{
        .frequency = FrequencyGhz(r.lo),
        .p_if_in = PowerDbm(a.scenario.p_if),
        .p_mixer_out = PowerDbm(a.p_mixer_out),
        .p_pa_out = a.scenario.p_pa_out ? std::optional(PowerDbm(*a.scenario.p_pa_out)) : std::nullopt,
        .p_osc_rf = PowerDbm(a.scenario.p_osc_rf)};
    const RecommendOptions opts{FrequencyGhz(r.lo), FrequencyGhz(r.hi), n, a.allow_extrapolation};
    const Recommendation rec = recommend_frequency(models, base, opts);

    fmt::print(out, "recommended frequency: {} GHz{}\n", rec.frequency.value(),
               rec.at_boundary ? " (boundary of the admissible range)" : " (interior minimum)");
    fmt::print(out, "grid: {} points over {} GHz .. {} GHz, {} admissible, {} rejected (metric out of range)\n", n,
               r.lo, r.hi, rec.n_admissible, rec.n_rejected);
    print_breakdown(out, rec.breakdown);
    warn_extrapolation(err, rec.breakdown, models);

    if (!a.json.empty()) {
        nlohmann::ordered_json j;
        j["frequency_ghz"] = rec.frequency.value();
        j["at_boundary"] = rec.at_boundary;
        j["n_grid"] = n;
        j["n_admissible"] = rec.n_admissible;
        j["n_rejected"] = rec.n_rejected;
        j["breakdown"] = breakdown_to_json(rec.breakdown);
        nlohmann::ordered_json params = scenario_json(a.scenario);
        params["range_ghz"] = {r.lo, r.hi};
        params["n_grid"] = n;
        params["p_mixer_out_dbm"] = a.p_mixer_out;
        params["allow_extrapolation"] = a.allow_extrapolation;
        write_file(a.json, j.dump(2) + "\n");
        write_manifest(a.json,
                       manifest_for("recommend", params, digests_of({a.models.pa, a.models.osc, a.models.mixer})));
    }
    return kExitOk;
}

int cmd_validate_bundle(const std::string& dir, std::ostream& out) {
    const BundleReport report = validate_bundle(dir);
    for (const auto& c : report.checks) {
        fmt::print(out, "[{}] {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
    }
    fmt::print(out, "{}\n", report.ok() ? "bundle OK" : "bundle FAILED");
    return report.ok() ? kExitOk : kExitData;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"TX front-end DC power models: fit survey data, evaluate and sweep chain budgets", "txpower"};
    app.require_subcommand(1);
    app.set_version_flag("--version", TXPOWER_VERSION);

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "fit an exponential frequency model to a survey CSV");
    fit_cmd->add_option("--survey", fit.survey, "survey CSV")->required();
    fit_cmd->add_option("--block", fit.block, "PA, OSC or MIXER")->required();
    fit_cmd->add_option("--strategy", fit.strategy, "pareto_upper or binned_max:<k>")->capture_default_str();
    fit_cmd->add_option("--out", fit.out, "output model JSON")->required();

    BreakdownArgs bd;
    auto* bd_cmd = app.add_subcommand("breakdown", "per-block DC power at one operating point");
    add_model_options(bd_cmd, bd.models);
    add_scenario_options(bd_cmd, bd.scenario);
    bd_cmd->add_option("--freq", bd.freq, "operating frequency [GHz]")->required();
    bd_cmd->add_option("--p-mixer-out", bd.p_mixer_out, "mixer output = PA input [dBm]")->capture_default_str();
    bd_cmd->add_option("--csv", bd.csv, "write plot-ready CSV");
    bd_cmd->add_option("--json", bd.json, "write JSON");
    bd_cmd->add_flag("--strict", bd.strict, "exit 3 if any block is extrapolated");

    SweepArgs sw;
    auto* sw_cmd = app.add_subcommand("sweep", "breakdowns over a frequency grid and mixer output levels");
    add_model_options(sw_cmd, sw.models);
    add_scenario_options(sw_cmd, sw.scenario);
    sw_cmd->add_option("--freqs", sw.freqs, "comma-separated frequencies [GHz]");
    sw_cmd->add_option("--range", sw.range, "lo:hi:n uniform grid [GHz]");
    sw_cmd->add_option("--levels", sw.levels, "comma-separated mixer output levels [dBm]")->capture_default_str();
    sw_cmd->add_option("--out", sw.out, "output CSV")->required();
    sw_cmd->add_option("--json", sw.json, "also write JSON");
    sw_cmd->add_flag("--strict", sw.strict, "exit 3 if any block is extrapolated");

    RecommendArgs rc;
    auto* rc_cmd = app.add_subcommand("recommend", "lowest-total-power frequency over a range");
    add_model_options(rc_cmd, rc.models);
    add_scenario_options(rc_cmd, rc.scenario);
    rc_cmd->add_option("--range", rc.range, "lo:hi[:n] [GHz]")->required();
    rc_cmd->add_option("--grid", rc.n_grid, "grid points when --range has no count")->capture_default_str();
    rc_cmd->add_option("--p-mixer-out", rc.p_mixer_out, "mixer output = PA input [dBm]")->capture_default_str();
    rc_cmd->add_flag("--allow-extrapolation", rc.allow_extrapolation, "admit points outside fitted ranges");
    rc_cmd->add_option("--json", rc.json, "write JSON");

    std::string bundle_dir = "data/examples";
    auto* vb_cmd = app.add_subcommand("validate-bundle", "check the example survey bundle");
    vb_cmd->add_option("--dir", bundle_dir, "bundle directory")->capture_default_str();

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    if (!argv_rev.empty()) argv_rev.pop_back();  // program name
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*fit_cmd) return cmd_fit(fit, out);
        if (*bd_cmd) return cmd_breakdown(bd, out, err);
        if (*sw_cmd) return cmd_sweep(sw, out, err);
        if (*rc_cmd) return cmd_recommend(rc, out, err);
        if (*vb_cmd) return cmd_validate_bundle(bundle_dir, out);
    } catch (const UsageError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const NoAdmissiblePoint& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitNoAdmissible;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace txpower::cli
