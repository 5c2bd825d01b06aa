#include "txpower/survey.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include <fmt/core.h>

#include "csv_util.hpp"

namespace txpower {

std::string_view to_token(BlockKind kind) noexcept {
    switch (kind) {
        case BlockKind::PA: return "PA";
        case BlockKind::Oscillator: return "OSC";
        case BlockKind::Mixer: return "MIXER";
    }
    return "?";
}

std::string_view display_name(BlockKind kind) noexcept {
    switch (kind) {
        case BlockKind::PA: return "PA";
        case BlockKind::Oscillator: return "oscillator";
        case BlockKind::Mixer: return "mixer";
    }
    return "?";
}

std::optional<BlockKind> parse_block_kind(std::string_view token) {
    const std::string upper = detail::to_upper(detail::trim(token));
    if (upper == "PA") return BlockKind::PA;
    if (upper == "OSC") return BlockKind::Oscillator;
    if (upper == "MIXER") return BlockKind::Mixer;
    return std::nullopt;
}

void validate_metric(BlockKind kind, double metric) {
    if (!std::isfinite(metric)) {
        throw ValidationError("metric must be finite");
    }
    switch (kind) {
        case BlockKind::PA:
            if (metric <= 0.0 || metric > 100.0) {
                throw ValidationError(fmt::format("PA metric (PAE %) must lie in (0, 100], got {}", metric));
            }
            break;
        case BlockKind::Oscillator:
            if (metric <= 0.0 || metric > 1.0) {
                throw ValidationError(
                    fmt::format("OSC metric (DC-to-RF efficiency) must lie in (0, 1], got {}", metric));
            }
            break;
        case BlockKind::Mixer:
            if (metric <= 0.0) {
                throw ValidationError(fmt::format("MIXER metric (CG per mW) must be > 0, got {}", metric));
            }
            break;
    }
}

SurveyDataset::SurveyDataset(BlockKind kind, std::vector<SurveyRecord> records)
    : kind_(kind), records_(std::move(records)) {
    std::map<std::tuple<double, double, std::string>, std::size_t> seen;
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        if (r.block != kind_) {
            throw ValidationError(fmt::format("heterogeneous block kinds: record {} is {} in a {} dataset", i + 1,
                                              to_token(r.block), to_token(kind_)));
        }
        validate_metric(kind_, r.metric);
        auto [it, inserted] = seen.emplace(std::tuple{r.frequency.value(), r.metric, r.label}, i);
        if (!inserted) {
            throw ValidationError(fmt::format("record {} duplicates record {} (frequency, metric, label)", i + 1,
                                              it->second + 1));
        }
    }
}

std::string FrontierStrategy::tag() const {
    if (kind == Kind::BinnedMax) {
        return fmt::format("binned_max:{}", bins);
    }
    return "pareto_upper";
}

FrontierStrategy FrontierStrategy::parse(std::string_view tag) {
    const std::string t = detail::to_lower(detail::trim(tag));
    if (t == "pareto_upper" || t == "pareto") {
        return pareto_upper();
    }
    constexpr std::string_view prefix = "binned_max:";
    if (t.starts_with(prefix)) {
        int k = 0;
        const char* first = t.data() + prefix.size();
        const char* last = t.data() + t.size();
        auto [ptr, ec] = std::from_chars(first, last, k);
        if (ec != std::errc{} || ptr != last || first == last) {
            throw ValidationError(fmt::format("bad bin count in strategy '{}'", tag));
        }
        if (k < 1) {
            throw ValidationError("BinnedMax requires at least one bin");
        }
        return binned_max(k);
    }
    throw ValidationError(fmt::format("unknown frontier strategy '{}'", tag));
}

namespace {

constexpr std::string_view kHeader[] = {"block", "frequency_ghz", "metric", "label", "technology_node", "notes"};

void check_header(const std::vector<std::string>& fields, std::size_t line) {
    if (fields.size() < 4 || fields.size() > 6) {
        throw ParseError(line, fmt::format("header must have 4 to 6 columns, found {}", fields.size()));
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (detail::to_lower(detail::trim(fields[i])) != kHeader[i]) {
            throw ParseError(line, fmt::format("header column {} must be '{}', found '{}'", i + 1, kHeader[i],
                                               detail::trim(fields[i])));
        }
    }
}

std::optional<std::string> optional_field(const std::vector<std::string>& fields, std::size_t index) {
    if (index >= fields.size()) return std::nullopt;
    std::string v(detail::trim(fields[index]));
    if (v.empty()) return std::nullopt;
    return v;
}

}  // namespace

SurveyDataset parse_survey_csv(std::istream& input) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t columns = 0;
    bool have_header = false;
    std::optional<BlockKind> kind;
    std::size_t kind_line = 0;
    std::vector<SurveyRecord> records;
    std::vector<std::size_t> record_lines;

    while (std::getline(input, line)) {
        ++line_no;
        if (line_no == 1) {
            detail::strip_bom(line);
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string_view trimmed = detail::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;

        std::vector<std::string> fields;
        try {
            fields = detail::split_csv_line(line);
        } catch (const ValidationError& e) {
            throw ParseError(line_no, e.what());
        }

        if (!have_header) {
            check_header(fields, line_no);
            columns = fields.size();
            have_header = true;
            continue;
        }
        if (fields.size() < 4 || fields.size() > columns) {
            throw ParseError(line_no, fmt::format("expected 4 to {} fields, found {}", columns, fields.size()));
        }

        const auto block = parse_block_kind(fields[0]);
        if (!block) {
            throw ParseError(line_no, fmt::format("unknown block kind '{}' (expected PA, OSC or MIXER)",
                                                  detail::trim(fields[0])));
        }
        if (!kind) {
            kind = block;
            kind_line = line_no;
        } else if (*kind != *block) {
            throw ParseError(line_no, fmt::format("heterogeneous block kinds: {} here but {} on row {}",
                                                  to_token(*block), to_token(*kind), kind_line));
        }

        const auto freq = detail::parse_double(fields[1]);
        if (!freq) {
            throw ParseError(line_no, fmt::format("frequency_ghz '{}' is not a number", detail::trim(fields[1])));
        }
        if (!std::isfinite(*freq) || *freq <= 0.0) {
            throw ParseError(line_no, fmt::format("frequency_ghz must be > 0, got {}", detail::trim(fields[1])));
        }
        const auto metric = detail::parse_double(fields[2]);
        if (!metric) {
            throw ParseError(line_no, fmt::format("metric '{}' is not a number", detail::trim(fields[2])));
        }
        try {
            validate_metric(*block, *metric);
        } catch (const ValidationError& e) {
            throw ParseError(line_no, e.what());
        }

        records.push_back(SurveyRecord{*block, FrequencyGhz(*freq), *metric, std::string(detail::trim(fields[3])),
                                       optional_field(fields, 4), optional_field(fields, 5)});
        record_lines.push_back(line_no);
    }

    if (!have_header) {
        throw ParseError(line_no == 0 ? 1 : line_no, "missing header line");
    }
    if (records.empty()) {
        throw ParseError(line_no, "survey contains no records");
    }
    // Duplicate detection with row numbers from the file.
    std::map<std::tuple<double, double, std::string>, std::size_t> seen;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        auto [it, inserted] = seen.emplace(std::tuple{r.frequency.value(), r.metric, r.label}, record_lines[i]);
        if (!inserted) {
            throw ParseError(record_lines[i],
                             fmt::format("duplicates row {} (frequency, metric, label)", it->second));
        }
    }
    return SurveyDataset(*kind, std::move(records));
}

SurveyDataset parse_survey_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_survey_csv(in);
}

std::string serialize_survey_csv(const SurveyDataset& data) {
    std::string out = "block,frequency_ghz,metric,label,technology_node,notes\n";
    for (const auto& r : data.records()) {
        out += fmt::format("{},{},{},{},{},{}\n", to_token(r.block), r.frequency.value(), r.metric,
                           detail::quote_csv(r.label), detail::quote_csv(r.technology_node.value_or("")),
                           detail::quote_csv(r.notes.value_or("")));
    }
    return out;
}

namespace {

SurveyDataset subset(const SurveyDataset& data, const std::vector<bool>& keep) {
    std::vector<SurveyRecord> out;
    const auto records = data.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (keep[i]) out.push_back(records[i]);
    }
    return SurveyDataset(data.kind(), std::move(out));
}

// Sweep from the highest frequency down, tracking the best metric seen at
// strictly higher frequencies. Within a frequency group only the first record
// carrying the group maximum can survive.
std::vector<bool> pareto_upper_mask(std::span<const SurveyRecord> records) {
    const std::size_t n = records.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double fa = records[a].frequency.value();
        const double fb = records[b].frequency.value();
        if (fa != fb) return fa > fb;
        if (records[a].metric != records[b].metric) return records[a].metric > records[b].metric;
        return a < b;
    });

    std::vector<bool> keep(n, false);
    double best_higher = -std::numeric_limits<double>::infinity();
    std::size_t g = 0;
    while (g < n) {
        const double freq = records[order[g]].frequency.value();
        std::size_t end = g;
        while (end < n && records[order[end]].frequency.value() == freq) ++end;
        // order[g] is the first-by-input record with the group's maximum metric.
        const double group_max = records[order[g]].metric;
        if (group_max > best_higher) {
            keep[order[g]] = true;
        }
        best_higher = std::max(best_higher, group_max);
        g = end;
    }
    return keep;
}

std::vector<bool> binned_max_mask(std::span<const SurveyRecord> records, int bins) {
    const std::size_t n = records.size();
    double f_min = records[0].frequency.value();
    double f_max = f_min;
    for (const auto& r : records) {
        f_min = std::min(f_min, r.frequency.value());
        f_max = std::max(f_max, r.frequency.value());
    }
    const double log_span = std::log(f_max / f_min);

    std::vector<std::optional<std::size_t>> champion(static_cast<std::size_t>(bins));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t bin = 0;
        if (log_span > 0.0) {
            const double pos = std::log(records[i].frequency.value() / f_min) / log_span;
            bin = static_cast<std::size_t>(std::floor(pos * bins));
            bin = std::min(bin, static_cast<std::size_t>(bins - 1));
        }
        auto& c = champion[bin];
        if (!c || records[i].metric > records[*c].metric) {
            c = i;
        }
    }
    std::vector<bool> keep(n, false);
    for (const auto& c : champion) {
        if (c) keep[*c] = true;
    }
    return keep;
}

}  // namespace

SurveyDataset best_in_class(const SurveyDataset& data, FrontierStrategy strategy) {
    if (data.empty()) {
        throw ValidationError("best_in_class requires a non-empty dataset");
    }
    switch (strategy.kind) {
        case FrontierStrategy::Kind::ParetoUpper:
            return subset(data, pareto_upper_mask(data.records()));
        case FrontierStrategy::Kind::BinnedMax:
            if (strategy.bins < 1) {
                throw ValidationError("BinnedMax requires at least one bin");
            }
            return subset(data, binned_max_mask(data.records(), strategy.bins));
    }
    throw ValidationError("unknown frontier strategy");
}

SurveyDataset filter_frequency(const SurveyDataset& data, FrequencyGhz lo, FrequencyGhz hi) {
    if (!(lo < hi)) {
        throw ValidationError(fmt::format("inverted frequency range [{}, {}] GHz", lo.value(), hi.value()));
    }
    std::vector<bool> keep;
    keep.reserve(data.size());
    for (const auto& r : data.records()) {
        keep.push_back(lo <= r.frequency && r.frequency <= hi);
    }
    return subset(data, keep);
}

}  // namespace txpower
