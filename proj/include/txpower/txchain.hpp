#pragma once

// TX front-end composition: the mixer (driven by the oscillator LO) feeds the
// PA. Mixer output power and PA input power are one parameter.
//
// Sweeps and the recommendation grid evaluate points independently. The
// default entry points run under OpenMP; the *_serial variants are the
// single-threaded reference and produce bit-identical results.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "txpower/blockmodels.hpp"
#include "txpower/survey.hpp"
#include "txpower/units.hpp"

namespace txpower {

/// Default key frequencies for breakdown reports. Only 60 and 243 GHz are
/// anchored in the source results; 30 and 140 GHz span the mixer data.
inline constexpr std::array<double, 4> kKeyFrequenciesGhz{30.0, 60.0, 140.0, 243.0};

/// Default mixer output (= PA input) levels.
inline constexpr std::array<double, 4> kMixerOutLevelsDbm{-15.0, -10.0, -5.0, 0.0};

struct ChainConfig {
    FrequencyGhz frequency;
    PowerDbm p_if_in{-5.0};
    PowerDbm p_mixer_out;             // also the PA input
    std::optional<PowerDbm> p_pa_out;  // absent: no PA stage
    PowerDbm p_osc_rf{0.0};

    bool has_pa() const noexcept { return p_pa_out.has_value(); }

    /// Throws ValidationError unless p_pa_out > p_mixer_out when present.
    void validate() const;

    ChainConfig at(FrequencyGhz f) const {
        ChainConfig c = *this;
        c.frequency = f;
        return c;
    }
};

/// Config for one mixer output level of a PA-target scenario. A level equal to
/// the PA target means 0 dB PA gain, so the PA is dropped; a level above it is
/// rejected.
ChainConfig level_config(const ChainConfig& base, PowerDbm mixer_out);

struct BlockShares {
    double pa = 0.0;
    double osc = 0.0;
    double mixer = 0.0;
};

struct ExtrapolationFlags {
    bool pa = false;
    bool osc = false;
    bool mixer = false;

    bool any() const noexcept { return pa || osc || mixer; }
    friend bool operator==(const ExtrapolationFlags&, const ExtrapolationFlags&) = default;
};

struct PowerBreakdown {
    PowerMilliwatt pa_mw;  // 0 when the PA is absent
    PowerMilliwatt osc_mw;
    PowerMilliwatt mixer_mw;
    PowerMilliwatt total_mw;  // pa + osc + mixer, no renormalisation
    BlockShares fractions;
    ExtrapolationFlags extrapolated;
    ChainConfig config;

    double share(BlockKind kind) const noexcept;
};

struct ChainModels {
    std::optional<PaModel> pa;
    OscModel osc;
    MixerModel mixer;
};

PowerBreakdown chain_breakdown(const ChainModels& models, const ChainConfig& cfg);

class SweepResult {
public:
    SweepResult() = default;
    explicit SweepResult(std::vector<PowerBreakdown> points);

    std::span<const PowerBreakdown> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    FrequencyGhz frequency(std::size_t i) const { return points_.at(i).config.frequency; }
    const PowerBreakdown& operator[](std::size_t i) const { return points_[i]; }

private:
    std::vector<PowerBreakdown> points_;
};

/// One breakdown per frequency; frequencies must be non-empty and strictly
/// increasing. Block errors are rethrown naming the offending frequency.
SweepResult sweep(const ChainModels& models, const ChainConfig& base, std::span<const FrequencyGhz> frequencies);
SweepResult sweep_serial(const ChainModels& models, const ChainConfig& base,
                         std::span<const FrequencyGhz> frequencies);

/// n points uniformly spaced over [lo, hi], endpoints exact.
std::vector<FrequencyGhz> uniform_grid(FrequencyGhz lo, FrequencyGhz hi, std::size_t n);

/// Grid evaluation used by the recommender. A point whose blocks leave their
/// physical range is returned as nullopt instead of aborting the scan.
std::vector<std::optional<PowerBreakdown>> evaluate_grid(const ChainModels& models, const ChainConfig& base,
                                                         std::span<const FrequencyGhz> grid);
std::vector<std::optional<PowerBreakdown>> evaluate_grid_serial(const ChainModels& models, const ChainConfig& base,
                                                                std::span<const FrequencyGhz> grid);

struct RecommendOptions {
    FrequencyGhz lo;
    FrequencyGhz hi;
    std::size_t n_grid = 512;
    bool allow_extrapolation = false;
};

struct Recommendation {
    FrequencyGhz frequency;
    PowerBreakdown breakdown;
    bool at_boundary;          // argmin is the lowest or highest admissible grid point
    std::size_t n_admissible;  // grid points considered
    std::size_t n_rejected;    // grid points with an out-of-range block metric
};

/// Grid-search argmin of total DC power over admissible points (every block
/// inside its validity range, unless extrapolation is allowed). Ties go to the
/// lower frequency. Throws NoAdmissiblePoint when nothing qualifies.
Recommendation recommend_frequency(const ChainModels& models, const ChainConfig& base, const RecommendOptions& opts);

/// Largest share; ties resolved PA, then oscillator, then mixer.
BlockKind dominant_block(const PowerBreakdown& breakdown) noexcept;

std::vector<std::pair<FrequencyGhz, BlockKind>> dominance_report(const SweepResult& sweep);

}  // namespace txpower
