#include "txpower/model_io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <fmt/core.h>
#include <openssl/evp.h>

namespace txpower {

std::string sha256_digest(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 digest failed");
    }
    std::string out = "sha256:";
    for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", md[i]);
    return out;
}

std::string dataset_digest(const SurveyDataset& data) { return sha256_digest(serialize_survey_csv(data)); }

namespace {

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::optional<double> read_optional_number(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) throw ValidationError(fmt::format("model field '{}' must be a number or null", key));
    return v.get<double>();
}

double read_number(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number()) throw ValidationError(fmt::format("model field '{}' must be a number", key));
    return v.get<double>();
}

}  // namespace

nlohmann::ordered_json model_to_json(const StoredModel& m) {
    nlohmann::ordered_json j;
    j["block"] = std::string(to_token(m.block));
    j["a"] = m.fit.a;
    j["b"] = m.fit.b;
    j["valid_lo_ghz"] = m.fit.valid_lo.value();
    j["valid_hi_ghz"] = m.fit.valid_hi.value();
    j["r2_linear"] = optional_number(m.fit.r_squared_linear);
    j["r2_log"] = optional_number(m.fit.r_squared_log);
    j["n_points"] = m.fit.n_points;
    j["strategy"] = m.fit.strategy ? nlohmann::ordered_json(m.fit.strategy->tag()) : nlohmann::ordered_json(nullptr);
    j["source_dataset_digest"] = m.source_dataset_digest;
    return j;
}

StoredModel model_from_json(const nlohmann::json& j) {
    try {
        const auto block = parse_block_kind(j.at("block").get<std::string>());
        if (!block) {
            throw ValidationError(fmt::format("unknown block kind '{}'", j.at("block").get<std::string>()));
        }
        const auto& n = j.at("n_points");
        if (!n.is_number_integer() || n.get<long long>() < 0) {
            throw ValidationError("model field 'n_points' must be a non-negative integer");
        }
        std::optional<FrontierStrategy> strategy;
        if (!j.at("strategy").is_null()) strategy = FrontierStrategy::parse(j.at("strategy").get<std::string>());

        ExpFitModel fit{
            .a = read_number(j, "a"),
            .b = read_number(j, "b"),
            .valid_lo = FrequencyGhz(read_number(j, "valid_lo_ghz")),
            .valid_hi = FrequencyGhz(read_number(j, "valid_hi_ghz")),
            .r_squared_linear = read_optional_number(j, "r2_linear"),
            .r_squared_log = read_optional_number(j, "r2_log"),
            .n_points = n.get<std::size_t>(),
            .strategy = strategy,
        };
        fit.validate();
        return StoredModel{*block, std::move(fit), j.value("source_dataset_digest", std::string{})};
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(fmt::format("malformed model JSON: {}", e.what()));
    }
}

std::string model_to_string(const StoredModel& model) { return model_to_json(model).dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError(fmt::format("cannot write '{}'", path.string()));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw ValidationError(fmt::format("write to '{}' failed", path.string()));
}

void save_model(const std::filesystem::path& path, const StoredModel& model) {
    write_file(path, model_to_string(model));
}

StoredModel load_model(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
    }
    try {
        return model_from_json(j);
    } catch (const Error& e) {
        throw ValidationError(fmt::format("'{}': {}", path.string(), e.what()));
    }
}

namespace {

ExpFitModel load_kind(const std::filesystem::path& path, BlockKind expected) {
    StoredModel m = load_model(path);
    if (m.block != expected) {
        throw ValidationError(fmt::format("'{}' holds a {} model, expected {}", path.string(), to_token(m.block),
                                          to_token(expected)));
    }
    return std::move(m.fit);
}

}  // namespace

PaModel load_pa_model(const std::filesystem::path& path) { return PaModel(load_kind(path, BlockKind::PA)); }
OscModel load_osc_model(const std::filesystem::path& path) {
    return OscModel(load_kind(path, BlockKind::Oscillator));
}
MixerModel load_mixer_model(const std::filesystem::path& path) {
    return MixerModel(load_kind(path, BlockKind::Mixer));
}

nlohmann::ordered_json RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["parameters"] = parameters;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [path, digest] : input_digests) inputs[path] = digest;
    j["input_digests"] = inputs;
    j["tool_version"] = tool_version;
    j["timestamp"] = timestamp;
    return j;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::filesystem::path& output, const RunManifest& manifest) {
    std::filesystem::path p = output;
    p += ".manifest.json";
    write_file(p, manifest.to_json().dump(2) + "\n");
}

}  // namespace txpower
