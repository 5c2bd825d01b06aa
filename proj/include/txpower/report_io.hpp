#pragma once

// Breakdown and sweep serialisation.
//
// Plot-ready CSV columns:
//   frequency_ghz,pa_mw,osc_mw,mixer_mw,total_mw,pa_frac,osc_frac,mixer_frac,
//   extrapolated_blocks,p_if_dbm,p_mixer_out_dbm,p_pa_out_dbm,p_osc_rf_dbm
//
// `extrapolated_blocks` is a ';'-joined list of PA/OSC/MIXER (empty if none).
// The trailing config columns make multi-level sweeps self-describing;
// p_pa_out_dbm is empty when the PA is absent. Numbers use shortest
// round-trip formatting.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "txpower/txchain.hpp"

namespace txpower {

std::string breakdown_csv_header();
std::string breakdown_csv_row(const PowerBreakdown& b);

/// Header plus one row per breakdown, in order.
std::string breakdowns_to_csv(std::span<const PowerBreakdown> rows);

/// "PA;MIXER" style list.
std::string extrapolated_blocks(const ExtrapolationFlags& flags);

nlohmann::ordered_json breakdown_to_json(const PowerBreakdown& b);
nlohmann::ordered_json sweep_to_json(const SweepResult& sweep);

/// Row as read back from a result CSV.
struct BreakdownRow {
    double frequency_ghz;
    double pa_mw;
    double osc_mw;
    double mixer_mw;
    double total_mw;
    double pa_frac;
    double osc_frac;
    double mixer_frac;
    ExtrapolationFlags extrapolated;
    ChainConfig config;
};

std::vector<BreakdownRow> parse_breakdown_csv(std::istream& input);
std::vector<BreakdownRow> parse_breakdown_csv(std::string_view text);

}  // namespace txpower
