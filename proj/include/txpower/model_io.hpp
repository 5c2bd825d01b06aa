#pragma once

// Fitted-model persistence and run manifests.
//
// Model JSON fields: block, a, b, valid_lo_ghz, valid_hi_ghz, r2_linear,
// r2_log, n_points, strategy, source_dataset_digest. Undefined R^2 and direct
// (frontier-less) fits are written as null.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "json.hpp"

#include "txpower/blockmodels.hpp"
#include "txpower/regression.hpp"
#include "txpower/survey.hpp"

namespace txpower {

struct StoredModel {
    BlockKind block;
    ExpFitModel fit;
    std::string source_dataset_digest;
};

/// "sha256:<hex>" of the bytes given.
std::string sha256_digest(std::string_view bytes);

/// Digest of the canonical CSV form, so formatting-only edits do not change it.
std::string dataset_digest(const SurveyDataset& data);

nlohmann::ordered_json model_to_json(const StoredModel& model);
StoredModel model_from_json(const nlohmann::json& j);

/// Pretty-printed JSON with a trailing newline. Deterministic for equal models.
std::string model_to_string(const StoredModel& model);

void save_model(const std::filesystem::path& path, const StoredModel& model);
StoredModel load_model(const std::filesystem::path& path);

/// Typed loaders. Throw ValidationError when the stored block kind differs.
PaModel load_pa_model(const std::filesystem::path& path);
OscModel load_osc_model(const std::filesystem::path& path);
MixerModel load_mixer_model(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

struct RunManifest {
    std::string command;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    std::map<std::string, std::string> input_digests;  // path -> digest
    std::string tool_version;
    std::string timestamp;  // UTC, ISO 8601

    nlohmann::ordered_json to_json() const;
};

std::string utc_timestamp();

/// Writes `<output>.manifest.json` next to `output`.
void write_manifest(const std::filesystem::path& output, const RunManifest& manifest);

}  // namespace txpower
