#include "txpower/report_io.hpp"

#include <istream>
#include <sstream>

#include <fmt/core.h>

#include "csv_util.hpp"

namespace txpower {

namespace {

constexpr std::string_view kColumns =
    "frequency_ghz,pa_mw,osc_mw,mixer_mw,total_mw,pa_frac,osc_frac,mixer_frac,extrapolated_blocks,"
    "p_if_dbm,p_mixer_out_dbm,p_pa_out_dbm,p_osc_rf_dbm";

}  // namespace

std::string breakdown_csv_header() { return std::string(kColumns) + "\n"; }

std::string extrapolated_blocks(const ExtrapolationFlags& flags) {
    std::string out;
    auto add = [&](bool on, BlockKind kind) {
        if (!on) return;
        if (!out.empty()) out += ';';
        out += to_token(kind);
    };
    add(flags.pa, BlockKind::PA);
    add(flags.osc, BlockKind::Oscillator);
    add(flags.mixer, BlockKind::Mixer);
    return out;
}

std::string breakdown_csv_row(const PowerBreakdown& b) {
    const auto& c = b.config;
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", c.frequency.value(), b.pa_mw.value(),
                       b.osc_mw.value(), b.mixer_mw.value(), b.total_mw.value(), b.fractions.pa, b.fractions.osc,
                       b.fractions.mixer, extrapolated_blocks(b.extrapolated), c.p_if_in.value(),
                       c.p_mixer_out.value(), c.p_pa_out ? fmt::format("{}", c.p_pa_out->value()) : std::string{},
                       c.p_osc_rf.value());
}

std::string breakdowns_to_csv(std::span<const PowerBreakdown> rows) {
    std::string out = breakdown_csv_header();
    for (const auto& b : rows) out += breakdown_csv_row(b);
    return out;
}

nlohmann::ordered_json breakdown_to_json(const PowerBreakdown& b) {
    const auto& c = b.config;
    nlohmann::ordered_json j;
    j["frequency_ghz"] = c.frequency.value();
    j["pa_mw"] = b.pa_mw.value();
    j["osc_mw"] = b.osc_mw.value();
    j["mixer_mw"] = b.mixer_mw.value();
    j["total_mw"] = b.total_mw.value();
    j["fractions"] = {{"pa", b.fractions.pa}, {"osc", b.fractions.osc}, {"mixer", b.fractions.mixer}};
    j["extrapolated"] = {{"pa", b.extrapolated.pa}, {"osc", b.extrapolated.osc}, {"mixer", b.extrapolated.mixer}};
    j["dominant"] = std::string(to_token(dominant_block(b)));
    nlohmann::ordered_json cfg;
    cfg["p_if_dbm"] = c.p_if_in.value();
    cfg["p_mixer_out_dbm"] = c.p_mixer_out.value();
    cfg["p_pa_out_dbm"] = c.p_pa_out ? nlohmann::ordered_json(c.p_pa_out->value()) : nlohmann::ordered_json(nullptr);
    cfg["p_osc_rf_dbm"] = c.p_osc_rf.value();
    j["config"] = cfg;
    return j;
}

nlohmann::ordered_json sweep_to_json(const SweepResult& sweep) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& b : sweep.points()) arr.push_back(breakdown_to_json(b));
    return arr;
}

std::vector<BreakdownRow> parse_breakdown_csv(std::istream& input) {
    std::vector<BreakdownRow> rows;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(input, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split_csv_line(line);
        if (!have_header) {
            if (detail::trim(line) != kColumns) {
                throw ParseError(line_no, "unexpected result CSV header");
            }
            have_header = true;
            continue;
        }
        if (fields.size() != 13) {
            throw ParseError(line_no, fmt::format("expected 13 fields, found {}", fields.size()));
        }
        auto num = [&](std::size_t i) {
            const auto v = detail::parse_double(fields[i]);
            if (!v) throw ParseError(line_no, fmt::format("field {} '{}' is not a number", i + 1, fields[i]));
            return *v;
        };
        ExtrapolationFlags flags;
        std::string_view list = detail::trim(fields[8]);
        while (!list.empty()) {
            const auto pos = list.find(';');
            const auto token = list.substr(0, pos);
            const auto kind = parse_block_kind(token);
            if (!kind) throw ParseError(line_no, fmt::format("unknown block '{}' in extrapolated_blocks", token));
            switch (*kind) {
                case BlockKind::PA: flags.pa = true; break;
                case BlockKind::Oscillator: flags.osc = true; break;
                case BlockKind::Mixer: flags.mixer = true; break;
            }
            list = pos == std::string_view::npos ? std::string_view{} : list.substr(pos + 1);
        }
        std::optional<PowerDbm> pa_out;
        if (!detail::trim(fields[11]).empty()) pa_out = PowerDbm(num(11));
        rows.push_back(BreakdownRow{
            .frequency_ghz = num(0),
            .pa_mw = num(1),
            .osc_mw = num(2),
            .mixer_mw = num(3),
            .total_mw = num(4),
            .pa_frac = num(5),
            .osc_frac = num(6),
            .mixer_frac = num(7),
            .extrapolated = flags,
            .config = ChainConfig{.frequency = FrequencyGhz(num(0)),
                                  .p_if_in = PowerDbm(num(9)),
                                  .p_mixer_out = PowerDbm(num(10)),
                                  .p_pa_out = pa_out,
                                  .p_osc_rf = PowerDbm(num(12))},
        });
    }
    if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "missing header line");
    return rows;
}

std::vector<BreakdownRow> parse_breakdown_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_breakdown_csv(in);
}

}  // namespace txpower
