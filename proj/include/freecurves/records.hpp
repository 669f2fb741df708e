// Structured run records, canonical JSON/CSV export, and the append-only
// survey cache.
//
// Exports are bit-stable: keys sorted (nlohmann::json keeps std::map
// order), integers in decimal, rows newline-terminated, and the volatile
// fields (timestamp, elapsed) stripped, so identical records export to
// identical bytes.
#pragma once

#include <chrono>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "freecurves/survey.hpp"

namespace freecurves {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct RunRecord {
    std::string command;
    nlohmann::json parameters; ///< key-value map
    nlohmann::json payload;    ///< schema depends on command
    double elapsed_seconds = 0;
    std::string version = kArtifactVersion;
    std::string timestamp; ///< ISO-8601 UTC
};

inline std::string now_iso8601() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline nlohmann::json to_json(const RunRecord& r) {
    return nlohmann::json{{"command", r.command},   {"parameters", r.parameters},
                          {"payload", r.payload},   {"elapsed_seconds", r.elapsed_seconds},
                          {"version", r.version},   {"timestamp", r.timestamp}};
}

inline RunRecord record_from_json(const nlohmann::json& j) {
    RunRecord r;
    r.command = j.at("command").get<std::string>();
    r.parameters = j.value("parameters", nlohmann::json::object());
    r.payload = j.value("payload", nlohmann::json::object());
    r.elapsed_seconds = j.value("elapsed_seconds", 0.0);
    r.version = j.value("version", "");
    r.timestamp = j.value("timestamp", "");
    return r;
}

/// One JSON object per line.
inline void append_records(const std::string& path, const std::vector<RunRecord>& records) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open records file " + path);
    for (const auto& r : records) out << to_json(r).dump() << "\n";
}

inline std::vector<RunRecord> read_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open records file " + path);
    std::vector<RunRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(record_from_json(nlohmann::json::parse(line)));
    }
    return out;
}

/// The deterministic view of a record: volatile fields removed.
inline nlohmann::json canonical_record(const RunRecord& r) {
    return nlohmann::json{
        {"command", r.command}, {"parameters", r.parameters}, {"payload", r.payload},
        {"version", r.version}};
}

enum class ExportFormat { json, csv };

inline ExportFormat parse_format(const std::string& s) {
    if (s == "json") return ExportFormat::json;
    if (s == "csv") return ExportFormat::csv;
    throw std::invalid_argument("format must be json or csv");
}

/// Canonical export of a record list. JSON: a sorted-key array. CSV: the
/// summary row per survey-shaped record (header always present).
inline std::string export_records(const std::vector<RunRecord>& records, ExportFormat fmt) {
    if (fmt == ExportFormat::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : records) arr.push_back(canonical_record(r));
        return arr.dump(2) + "\n";
    }
    std::string out = "surface,series,k,max_len,min_i\n";
    for (const auto& r : records) {
        if (!r.payload.contains("surface") || !r.payload.contains("series")) continue;
        const auto& p = r.payload;
        out += p.value("surface", std::string{}) + "," + p.value("series", std::string{}) + "," +
               std::to_string(p.value("k", 0)) + "," + std::to_string(p.value("max_len", 0)) + ",";
        out += p.contains("min_i") && !p["min_i"].is_null()
                   ? std::to_string(p["min_i"].get<long long>())
                   : std::string("");
        out += "\n";
    }
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// ---------------------------------------------------------------------------
// Survey payloads and the cell-level CSV
// ---------------------------------------------------------------------------

inline nlohmann::json survey_payload(const SurveyResult& res, const SurfaceGenerators& sg) {
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [key, cell] : res.histogram)
        hist.push_back(nlohmann::json{{"length", key.first},
                                      {"weight", key.second},
                                      {"count", cell.count},
                                      {"min_i", cell.min_i}});
    return nlohmann::json{
        {"surface", res.request.surface.label()},
        {"series", to_string(res.request.series)},
        {"k", res.request.k},
        {"max_len", res.request.max_len},
        {"classes_scanned", res.classes_scanned},
        {"classes_matching", res.classes_matching},
        {"min_i", res.min_i ? nlohmann::json(*res.min_i) : nlohmann::json(nullptr)},
        {"witness",
         res.witness ? nlohmann::json(format_word(sg.gens, *res.witness)) : nlohmann::json(nullptr)},
        {"histogram", hist}};
}

/// One row per (length, weight) histogram cell.
inline std::string survey_cells_csv(const SurveyResult& res) {
    std::string out = "surface,series,k,max_len,length,weight,count,min_i\n";
    const std::string prefix = res.request.surface.label() + "," +
                               to_string(res.request.series) + "," + std::to_string(res.request.k) +
                               "," + std::to_string(res.request.max_len) + ",";
    for (const auto& [key, cell] : res.histogram)
        out += prefix + std::to_string(key.first) + "," + std::to_string(key.second) + "," +
               std::to_string(cell.count) + "," + std::to_string(cell.min_i) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Append-only survey cache, keyed by (surface, series, k, max_len)
// ---------------------------------------------------------------------------

inline std::string survey_cache_key(const SurveyRequest& req) {
    return "surface=" + req.surface.label() + ";series=" + to_string(req.series) +
           ";k=" + std::to_string(req.k) + ";max_len=" + std::to_string(req.max_len);
}

struct SurveyCache {
    std::string path;

    std::optional<nlohmann::json> lookup(const SurveyRequest& req) const {
        std::ifstream in(path);
        if (!in) return std::nullopt;
        const std::string key = survey_cache_key(req);
        std::optional<nlohmann::json> found;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line);
            if (j.value("key", std::string{}) == key) found = j.at("payload");
        }
        return found;
    }

    void append(const SurveyRequest& req, const nlohmann::json& payload) const {
        std::ofstream out(path, std::ios::app);
        if (!out) throw std::runtime_error("cannot open cache " + path);
        out << nlohmann::json{{"key", survey_cache_key(req)},
                              {"payload", payload},
                              {"version", kArtifactVersion}}
                   .dump()
            << "\n";
    }
};

} // namespace freecurves
