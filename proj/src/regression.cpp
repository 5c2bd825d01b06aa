#include "txpower/regression.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace txpower {

void ExpFitModel::validate() const {
    if (!std::isfinite(a) || a <= 0.0) {
        throw ValidationError(fmt::format("fit amplitude a must be finite and > 0, got {}", a));
    }
    if (!std::isfinite(b)) {
        throw ValidationError("fit rate b must be finite");
    }
    if (!(valid_lo < valid_hi)) {
        throw ValidationError(fmt::format("fit validity range [{}, {}] GHz is empty", valid_lo.value(),
                                          valid_hi.value()));
    }
    if (n_points < 2) {
        throw ValidationError("fit must be built from at least 2 points");
    }
    for (const auto& r2 : {r_squared_linear, r_squared_log}) {
        if (r2 && (!std::isfinite(*r2) || *r2 > 1.0)) {
            throw ValidationError("R^2 must be finite and <= 1");
        }
    }
}

std::optional<double> r_squared(std::span<const double> observed, std::span<const double> predicted) {
    if (observed.size() != predicted.size()) {
        throw ValidationError("r_squared: observed and predicted lengths differ");
    }
    if (observed.empty()) {
        throw ValidationError("r_squared: no observations");
    }
    const double n = static_cast<double>(observed.size());
    double mean = 0.0;
    for (double y : observed) mean += y;
    mean /= n;

    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double r = observed[i] - predicted[i];
        const double d = observed[i] - mean;
        ss_res += r * r;
        ss_tot += d * d;
    }
    if (ss_res == 0.0) return 1.0;
    if (ss_tot == 0.0) return std::nullopt;
    return 1.0 - ss_res / ss_tot;
}

FitResult fit_exponential(std::span<const FitPoint> points) {
    if (points.size() < 2) {
        throw FitError("need >= 2 distinct frequencies to fit an exponential");
    }
    for (const auto& p : points) {
        if (!std::isfinite(p.metric) || p.metric <= 0.0) {
            throw FitError(fmt::format("metric {} at {} GHz is not positive; log undefined", p.metric,
                                       p.frequency.value()));
        }
    }
    const auto [lo_it, hi_it] = std::minmax_element(
        points.begin(), points.end(), [](const FitPoint& x, const FitPoint& y) { return x.frequency < y.frequency; });
    if (lo_it->frequency == hi_it->frequency) {
        throw FitError("need >= 2 distinct frequencies to fit an exponential");
    }

    const std::size_t n = points.size();
    std::vector<double> freqs(n);
    std::vector<double> logs(n);
    for (std::size_t i = 0; i < n; ++i) {
        freqs[i] = points[i].frequency.value();
        logs[i] = std::log(points[i].metric);
    }

    // Centred sums keep the normal equations well conditioned.
    double f_mean = 0.0;
    double l_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        f_mean += freqs[i];
        l_mean += logs[i];
    }
    f_mean /= static_cast<double>(n);
    l_mean /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double df = freqs[i] - f_mean;
        sxx += df * df;
        sxy += df * (logs[i] - l_mean);
    }
    const double b = sxy / sxx;
    const double log_a = l_mean - b * f_mean;
    const double a = std::exp(log_a);

    FitDiagnostics diag;
    diag.residuals.resize(n);
    diag.predicted.resize(n);
    std::vector<double> log_pred(n);
    std::vector<double> observed(n);
    for (std::size_t i = 0; i < n; ++i) {
        log_pred[i] = log_a + b * freqs[i];
        diag.predicted[i] = std::exp(log_pred[i]);
        diag.residuals[i] = logs[i] - log_pred[i];
        observed[i] = points[i].metric;
    }

    ExpFitModel model{
        .a = a,
        .b = b,
        .valid_lo = lo_it->frequency,
        .valid_hi = hi_it->frequency,
        .r_squared_linear = r_squared(observed, diag.predicted),
        .r_squared_log = r_squared(logs, log_pred),
        .n_points = n,
        .strategy = std::nullopt,
    };
    model.validate();
    return FitResult{std::move(model), std::move(diag)};
}

FitResult fit_survey(const SurveyDataset& data, FrontierStrategy strategy) {
    const SurveyDataset frontier = best_in_class(data, strategy);
    std::vector<FitPoint> points;
    points.reserve(frontier.size());
    for (const auto& r : frontier.records()) {
        points.push_back({r.frequency, r.metric});
    }
    FitResult result = fit_exponential(points);
    result.model.strategy = strategy;
    return result;
}

FitEvaluation evaluate_fit(const ExpFitModel& model, FrequencyGhz f) {
    return {model.a * std::exp(model.b * f.value()), !in_validity_range(model, f)};
}

}  // namespace txpower
