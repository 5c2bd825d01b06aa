#include "txpower/blockmodels.hpp"

#include <cmath>
#include <numbers>

#include <fmt/core.h>

namespace txpower {

namespace {

// Linear ratio 10^(dB/10) - 1 without cancellation for small dB differences.
double db_ratio_minus_one(double db) {
    return std::expm1(db * std::numbers::ln10 / 10.0);
}

PowerMilliwatt checked_power(double mw, std::string_view block, FrequencyGhz f) {
    if (!std::isfinite(mw) || mw <= 0.0) {
        throw DomainError(fmt::format("{} DC power at {} GHz is not a finite positive value", block, f.value()));
    }
    return PowerMilliwatt(mw);
}

}  // namespace

PaModel::PaModel(ExpFitModel pae_fit) : fit_(std::move(pae_fit)) { fit_.validate(); }
OscModel::OscModel(ExpFitModel efficiency_fit) : fit_(std::move(efficiency_fit)) { fit_.validate(); }
MixerModel::MixerModel(ExpFitModel fom_fit) : fit_(std::move(fom_fit)) { fit_.validate(); }

BlockPower pa_dc_power(const PaModel& model, FrequencyGhz f, PowerDbm p_in, PowerDbm p_out) {
    if (!(p_out > p_in)) {
        throw ValidationError(fmt::format("PA output {} dBm must exceed input {} dBm", p_out.value(), p_in.value()));
    }
    const auto pae = evaluate_fit(model.pae_fit(), f);
    if (!(pae.value > 0.0) || pae.value > 100.0) {
        throw DomainError(fmt::format("PAE {} % at {} GHz is outside (0, 100]{}", pae.value, f.value(),
                                      pae.extrapolated ? " (extrapolated)" : ""));
    }
    // P_out - P_in = P_in * (10^((out - in)/10) - 1)
    const double added_mw = dbm_to_mw(p_in).value() * db_ratio_minus_one(p_out.value() - p_in.value());
    return {checked_power(added_mw / (0.01 * pae.value), "PA", f), pae.extrapolated};
}

BlockPower osc_dc_power(const OscModel& model, FrequencyGhz f, PowerDbm p_rf) {
    const auto eff = evaluate_fit(model.efficiency_fit(), f);
    if (!(eff.value > 0.0) || eff.value > 1.0) {
        throw DomainError(fmt::format("oscillator efficiency {} at {} GHz is outside (0, 1]{}", eff.value, f.value(),
                                      eff.extrapolated ? " (extrapolated)" : ""));
    }
    return {checked_power(dbm_to_mw(p_rf).value() / eff.value, "oscillator", f), eff.extrapolated};
}

BlockPower mixer_dc_power(const MixerModel& model, FrequencyGhz f, PowerDbm p_if_in, PowerDbm p_rf_out) {
    const auto fom = evaluate_fit(model.fom_fit(), f);
    if (!(fom.value > 0.0) || !std::isfinite(fom.value)) {
        throw DomainError(fmt::format("mixer FoM {} /mW at {} GHz is not positive{}", fom.value, f.value(),
                                      fom.extrapolated ? " (extrapolated)" : ""));
    }
    const double cg_linear = dbm_to_mw(p_rf_out).value() / dbm_to_mw(p_if_in).value();
    return {checked_power(cg_linear / fom.value, "mixer", f), fom.extrapolated};
}

}  // namespace txpower
