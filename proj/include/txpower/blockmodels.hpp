#pragma once

// DC-power evaluation for the three TX front-end blocks.
//
//   PA:         P_DC = (P_out - P_in) / (0.01 * PAE(f))        PAE in percent
//   oscillator: P_DC = P_RF / eff(f)                            eff in (0, 1]
//   mixer:      P_DC = CG_lin / FoM(f),  CG_lin = P_RF,out / P_IF,in
//
// Powers are combined in milliwatts. A fitted metric that leaves its physical
// range at the requested frequency raises DomainError; nothing is clamped.

#include "txpower/regression.hpp"
#include "txpower/units.hpp"

namespace txpower {

struct BlockPower {
    PowerMilliwatt power;
    bool extrapolated;
};

class PaModel {
public:
    explicit PaModel(ExpFitModel pae_fit);
    const ExpFitModel& pae_fit() const noexcept { return fit_; }

private:
    ExpFitModel fit_;
};

class OscModel {
public:
    explicit OscModel(ExpFitModel efficiency_fit);
    const ExpFitModel& efficiency_fit() const noexcept { return fit_; }

private:
    ExpFitModel fit_;
};

/// Mixer figure of merit: linear conversion gain per mW of DC power (1/mW).
class MixerModel {
public:
    explicit MixerModel(ExpFitModel fom_fit);
    const ExpFitModel& fom_fit() const noexcept { return fit_; }

private:
    ExpFitModel fit_;
};

/// Requires p_out > p_in. Errors if PAE(f) falls outside (0, 100].
BlockPower pa_dc_power(const PaModel& model, FrequencyGhz f, PowerDbm p_in, PowerDbm p_out);

/// Errors if eff(f) falls outside (0, 1]. Result is never below the RF output.
BlockPower osc_dc_power(const OscModel& model, FrequencyGhz f, PowerDbm p_rf);

BlockPower mixer_dc_power(const MixerModel& model, FrequencyGhz f, PowerDbm p_if_in, PowerDbm p_rf_out);

/// p_rf_out - p_if_in in dB. Negative for a lossy (passive) mixer.
inline double conversion_gain_db(PowerDbm p_if_in, PowerDbm p_rf_out) {
    return p_rf_out.value() - p_if_in.value();
}

inline double conversion_loss_db(PowerDbm p_if_in, PowerDbm p_rf_out) {
    return -conversion_gain_db(p_if_in, p_rf_out);
}

}  // namespace txpower
