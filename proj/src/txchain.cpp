#include "txpower/txchain.hpp"

#include <exception>

#include <fmt/core.h>

namespace txpower {

void ChainConfig::validate() const {
    if (p_pa_out && !(*p_pa_out > p_mixer_out)) {
        throw ValidationError(fmt::format("PA output {} dBm must exceed mixer output {} dBm", p_pa_out->value(),
                                          p_mixer_out.value()));
    }
}

ChainConfig level_config(const ChainConfig& base, PowerDbm mixer_out) {
    ChainConfig c = base;
    c.p_mixer_out = mixer_out;
    if (c.p_pa_out && *c.p_pa_out == mixer_out) {
        c.p_pa_out.reset();
    }
    c.validate();
    return c;
}

double PowerBreakdown::share(BlockKind kind) const noexcept {
    switch (kind) {
        case BlockKind::PA: return fractions.pa;
        case BlockKind::Oscillator: return fractions.osc;
        case BlockKind::Mixer: return fractions.mixer;
    }
    return 0.0;
}

PowerBreakdown chain_breakdown(const ChainModels& models, const ChainConfig& cfg) {
    cfg.validate();
    const FrequencyGhz f = cfg.frequency;

    const BlockPower mixer = mixer_dc_power(models.mixer, f, cfg.p_if_in, cfg.p_mixer_out);
    const BlockPower osc = osc_dc_power(models.osc, f, cfg.p_osc_rf);
    BlockPower pa{PowerMilliwatt(0.0), false};
    if (cfg.p_pa_out) {
        if (!models.pa) {
            throw ValidationError("PA output power requested but no PA model supplied");
        }
        pa = pa_dc_power(*models.pa, f, cfg.p_mixer_out, *cfg.p_pa_out);
    }

    const PowerMilliwatt total = pa.power + osc.power + mixer.power;
    const double t = total.value();
    return PowerBreakdown{
        .pa_mw = pa.power,
        .osc_mw = osc.power,
        .mixer_mw = mixer.power,
        .total_mw = total,
        .fractions = {pa.power.value() / t, osc.power.value() / t, mixer.power.value() / t},
        .extrapolated = {pa.extrapolated, osc.extrapolated, mixer.extrapolated},
        .config = cfg,
    };
}

SweepResult::SweepResult(std::vector<PowerBreakdown> points) : points_(std::move(points)) {
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i - 1].config.frequency < points_[i].config.frequency)) {
            throw ValidationError("sweep frequencies must be strictly increasing");
        }
    }
}

namespace {

void check_grid(std::span<const FrequencyGhz> frequencies) {
    if (frequencies.empty()) {
        throw ValidationError("sweep needs at least one frequency");
    }
    for (std::size_t i = 1; i < frequencies.size(); ++i) {
        if (!(frequencies[i - 1] < frequencies[i])) {
            throw ValidationError(fmt::format("sweep frequencies must be strictly increasing ({} GHz after {} GHz)",
                                              frequencies[i].value(), frequencies[i - 1].value()));
        }
    }
}

[[noreturn]] void rethrow_at(std::exception_ptr error, FrequencyGhz f) {
    const std::string where = fmt::format("at {} GHz: ", f.value());
    try {
        std::rethrow_exception(error);
    } catch (const DomainError& e) {
        throw DomainError(where + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(where + e.what());
    }
}

SweepResult collect(std::vector<std::optional<PowerBreakdown>>& slots, std::vector<std::exception_ptr>& errors,
                    std::span<const FrequencyGhz> frequencies) {
    std::vector<PowerBreakdown> points;
    points.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (errors[i]) rethrow_at(errors[i], frequencies[i]);
        points.push_back(std::move(*slots[i]));
    }
    return SweepResult(std::move(points));
}

std::optional<PowerBreakdown> try_breakdown(const ChainModels& models, const ChainConfig& cfg) {
    try {
        return chain_breakdown(models, cfg);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

}  // namespace

SweepResult sweep(const ChainModels& models, const ChainConfig& base, std::span<const FrequencyGhz> frequencies) {
    check_grid(frequencies);
    base.validate();
    const auto n = static_cast<std::ptrdiff_t>(frequencies.size());
    std::vector<std::optional<PowerBreakdown>> slots(frequencies.size());
    std::vector<std::exception_ptr> errors(frequencies.size());

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            slots[i] = chain_breakdown(models, base.at(frequencies[i]));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    return collect(slots, errors, frequencies);
}

SweepResult sweep_serial(const ChainModels& models, const ChainConfig& base,
                         std::span<const FrequencyGhz> frequencies) {
    check_grid(frequencies);
    base.validate();
    std::vector<std::optional<PowerBreakdown>> slots(frequencies.size());
    std::vector<std::exception_ptr> errors(frequencies.size());
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        try {
            slots[i] = chain_breakdown(models, base.at(frequencies[i]));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    return collect(slots, errors, frequencies);
}

std::vector<FrequencyGhz> uniform_grid(FrequencyGhz lo, FrequencyGhz hi, std::size_t n) {
    if (!(lo < hi)) {
        throw ValidationError(fmt::format("grid range [{}, {}] GHz is empty or inverted", lo.value(), hi.value()));
    }
    if (n < 2) {
        throw ValidationError("grid needs at least 2 points");
    }
    std::vector<FrequencyGhz> grid;
    grid.reserve(n);
    const double span = hi.value() - lo.value();
    const double last = static_cast<double>(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        grid.emplace_back(lo.value() + span * (static_cast<double>(i) / last));
    }
    grid.push_back(hi);
    return grid;
}

std::vector<std::optional<PowerBreakdown>> evaluate_grid(const ChainModels& models, const ChainConfig& base,
                                                         std::span<const FrequencyGhz> grid) {
    base.validate();
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
    std::vector<std::optional<PowerBreakdown>> out(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = try_breakdown(models, base.at(grid[i]));
    }
    return out;
}

std::vector<std::optional<PowerBreakdown>> evaluate_grid_serial(const ChainModels& models, const ChainConfig& base,
                                                                std::span<const FrequencyGhz> grid) {
    base.validate();
    std::vector<std::optional<PowerBreakdown>> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = try_breakdown(models, base.at(grid[i]));
    }
    return out;
}

Recommendation recommend_frequency(const ChainModels& models, const ChainConfig& base, const RecommendOptions& opts) {
    const auto grid = uniform_grid(opts.lo, opts.hi, opts.n_grid);
    const auto samples = evaluate_grid(models, base, grid);

    std::optional<std::size_t> best;
    std::optional<std::size_t> first_admissible;
    std::size_t last_admissible = 0;
    std::size_t admissible = 0;
    std::size_t rejected = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!samples[i]) {
            ++rejected;
            continue;
        }
        if (!opts.allow_extrapolation && samples[i]->extrapolated.any()) continue;
        ++admissible;
        if (!first_admissible) first_admissible = i;
        last_admissible = i;
        // Strict less-than keeps the lower frequency on ties.
        if (!best || samples[i]->total_mw < samples[*best]->total_mw) best = i;
    }
    if (!best) {
        throw NoAdmissiblePoint(fmt::format(
            "no admissible grid point in [{}, {}] GHz ({} points, {} out of physical range){}", opts.lo.value(),
            opts.hi.value(), grid.size(), rejected,
            opts.allow_extrapolation ? "" : "; every point is outside a block's validity range"));
    }
    return Recommendation{
        .frequency = grid[*best],
        .breakdown = *samples[*best],
        .at_boundary = *best == *first_admissible || *best == last_admissible,
        .n_admissible = admissible,
        .n_rejected = rejected,
    };
}

BlockKind dominant_block(const PowerBreakdown& b) noexcept {
    BlockKind kind = BlockKind::PA;
    double share = b.fractions.pa;
    if (b.fractions.osc > share) {
        kind = BlockKind::Oscillator;
        share = b.fractions.osc;
    }
    if (b.fractions.mixer > share) {
        kind = BlockKind::Mixer;
    }
    return kind;
}

std::vector<std::pair<FrequencyGhz, BlockKind>> dominance_report(const SweepResult& sweep) {
    if (sweep.empty()) {
        throw ValidationError("dominance report needs a non-empty sweep");
    }
    std::vector<std::pair<FrequencyGhz, BlockKind>> out;
    out.reserve(sweep.size());
    for (const auto& b : sweep.points()) {
        out.emplace_back(b.config.frequency, dominant_block(b));
    }
    return out;
}

}  // namespace txpower
