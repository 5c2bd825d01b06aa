#pragma once

// Exponential frequency trend y(f) = a * exp(b * f), fitted by ordinary least
// squares on (f, ln y).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "txpower/survey.hpp"
#include "txpower/units.hpp"

namespace txpower {

struct ExpFitModel {
    double a;  // amplitude, metric units
    double b;  // rate, 1/GHz
    FrequencyGhz valid_lo;
    FrequencyGhz valid_hi;
    // nullopt when the observations have zero variance and R^2 is undefined.
    std::optional<double> r_squared_linear;
    std::optional<double> r_squared_log;
    std::size_t n_points = 0;
    // Frontier used to select the fitted points; nullopt for a direct fit.
    std::optional<FrontierStrategy> strategy;

    /// Throws ValidationError unless a > 0 (finite), b finite, valid_lo < valid_hi
    /// and n_points >= 2.
    void validate() const;
};

struct FitPoint {
    FrequencyGhz frequency;
    double metric;
};

struct FitDiagnostics {
    std::vector<double> residuals;  // ln(observed) - ln(predicted)
    std::vector<double> predicted;  // a * exp(b * f), metric units
};

struct FitResult {
    ExpFitModel model;
    FitDiagnostics diagnostics;
};

/// Log-linear OLS fit. Requires >= 2 distinct frequencies and positive metrics.
FitResult fit_exponential(std::span<const FitPoint> points);

/// Frontier extraction followed by `fit_exponential`; records the strategy.
FitResult fit_survey(const SurveyDataset& data, FrontierStrategy strategy = FrontierStrategy::pareto_upper());

/// 1 - SS_res / SS_tot. Returns 1 when every residual is zero, nullopt when the
/// observations have zero variance but the residuals do not vanish. May be
/// negative.
std::optional<double> r_squared(std::span<const double> observed, std::span<const double> predicted);

struct FitEvaluation {
    double value;
    bool extrapolated;  // f outside the closed range [valid_lo, valid_hi]
};

FitEvaluation evaluate_fit(const ExpFitModel& model, FrequencyGhz f);

inline bool in_validity_range(const ExpFitModel& model, FrequencyGhz f) {
    return model.valid_lo <= f && f <= model.valid_hi;
}

}  // namespace txpower
