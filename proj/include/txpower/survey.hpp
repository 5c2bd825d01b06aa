#pragma once

// Survey datasets of fabricated prototypes and best-in-class frontier
// extraction.
//
// CSV schema (UTF-8, header required):
//
//   block,frequency_ghz,metric,label[,technology_node][,notes]
//
// `block` is PA, OSC or MIXER (case-insensitive). Metric semantics depend on
// the block: PAE in percent for PA, DC-to-RF efficiency ratio for OSC, linear
// conversion gain per mW of DC power for MIXER. Lines starting with '#' and
// blank lines are ignored.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "txpower/units.hpp"

namespace txpower {

enum class BlockKind { PA, Oscillator, Mixer };

/// File token: "PA", "OSC", "MIXER".
std::string_view to_token(BlockKind kind) noexcept;

/// Human-readable name used in reports: "PA", "oscillator", "mixer".
std::string_view display_name(BlockKind kind) noexcept;

/// Case-insensitive inverse of `to_token`.
std::optional<BlockKind> parse_block_kind(std::string_view token);

struct SurveyRecord {
    BlockKind block;
    FrequencyGhz frequency;
    double metric;
    std::string label;
    std::optional<std::string> technology_node;
    std::optional<std::string> notes;
};

/// Throws ValidationError if `metric` is outside the range allowed for `kind`.
void validate_metric(BlockKind kind, double metric);

/// Ordered, homogeneous collection of survey records with no duplicate
/// (frequency, metric, label) triples. May be empty (e.g. after filtering).
class SurveyDataset {
public:
    SurveyDataset(BlockKind kind, std::vector<SurveyRecord> records);

    BlockKind kind() const noexcept { return kind_; }
    std::span<const SurveyRecord> records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

private:
    BlockKind kind_;
    std::vector<SurveyRecord> records_;
};

struct FrontierStrategy {
    enum class Kind { ParetoUpper, BinnedMax };

    Kind kind = Kind::ParetoUpper;
    int bins = 0;  // BinnedMax only

    static FrontierStrategy pareto_upper() { return {}; }
    static FrontierStrategy binned_max(int bins) { return {Kind::BinnedMax, bins}; }

    /// "pareto_upper" or "binned_max:<k>".
    std::string tag() const;
    static FrontierStrategy parse(std::string_view tag);

    friend bool operator==(const FrontierStrategy&, const FrontierStrategy&) = default;
};

SurveyDataset parse_survey_csv(std::istream& input);
SurveyDataset parse_survey_csv(std::string_view text);

/// Canonical CSV form: full header, upper-case tokens, shortest round-trip
/// numbers, RFC 4180 quoting. parse(serialize(d)) reproduces d.
std::string serialize_survey_csv(const SurveyDataset& data);

/// Best-in-class subset used for fitting, in input order.
///
/// ParetoUpper keeps a record unless another record has equal-or-higher
/// frequency and equal-or-higher metric with at least one strict inequality;
/// among identical (frequency, metric) pairs only the first survives.
/// BinnedMax(k) keeps the maximum-metric record of each non-empty bin of k
/// log-spaced bins over [f_min, f_max].
SurveyDataset best_in_class(const SurveyDataset& data,
                            FrontierStrategy strategy = FrontierStrategy::pareto_upper());

/// Records with lo <= f <= hi, order preserved. Requires lo < hi.
SurveyDataset filter_frequency(const SurveyDataset& data, FrequencyGhz lo, FrequencyGhz hi);

}  // namespace txpower
