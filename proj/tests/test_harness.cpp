#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "freecurves/records.hpp"
#include "freecurves/reproduce.hpp"

using namespace freecurves;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("freecurves-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

ReproduceConfig tiny_config(int jobs) {
    ReproduceConfig cfg;
    cfg.max_len = 4;
    cfg.word_cap = 5;
    cfg.cfl_cap = 4;
    cfg.oracle_cap = 4;
    cfg.witness_k = 3;
    cfg.syllable_samples = 200;
    cfg.jobs = jobs;
    return cfg;
}

} // namespace

TEST_CASE("csv export of records") {
    CHECK(export_records({}, ExportFormat::csv) == "surface,series,k,max_len,min_i\n");

    RunRecord rec;
    rec.command = "survey";
    rec.payload = {{"surface", "1,1"}, {"series", "lcs"}, {"k", 2}, {"max_len", 4}, {"min_i", 0}};
    rec.timestamp = now_iso8601();
    const std::string csv = export_records({rec}, ExportFormat::csv);
    CHECK(csv == "surface,series,k,max_len,min_i\n1,1,lcs,2,4,0\n");
}

TEST_CASE("json export is canonical and newline terminated") {
    RunRecord rec;
    rec.command = "survey";
    rec.parameters = {{"k", 1}};
    rec.payload = {{"surface", "1,1"}, {"series", "lcs"}, {"min_i", nullptr}};
    rec.timestamp = "2020-01-01T00:00:00Z";
    rec.elapsed_seconds = 1.25;
    const std::string once = export_records({rec}, ExportFormat::json);
    RunRecord other = rec;
    other.timestamp = "2099-12-31T23:59:59Z"; // volatile fields must not leak
    other.elapsed_seconds = 99;
    CHECK(export_records({other}, ExportFormat::json) == once);
    CHECK(once.back() == '\n');
    CHECK(once.find("timestamp") == std::string::npos);
}

TEST_CASE("record files round trip") {
    TempDir tmp;
    RunRecord rec;
    rec.command = "lcs-weight";
    rec.parameters = {{"word", "a b a' b'"}};
    rec.payload = {{"weight", 2}};
    rec.timestamp = now_iso8601();
    append_records(tmp.file("records.jsonl"), {rec, rec});
    const auto back = read_records(tmp.file("records.jsonl"));
    REQUIRE(back.size() == 2);
    CHECK(back[0].command == "lcs-weight");
    CHECK(back[0].payload["weight"] == 2);
}

TEST_CASE("survey cache hits reproduce the computation") {
    TempDir tmp;
    const SurveyCache cache{tmp.file("cache.jsonl")};
    SurveyRequest req{SurfaceWithBoundary(1, 1), SeriesFilter::lcs, 2, 5, 1};
    CHECK_FALSE(cache.lookup(req).has_value());

    const auto sg = standard_generators(req.surface);
    const SurveyResult computed = survey_minimum(req);
    const nlohmann::json payload = survey_payload(computed, sg);
    cache.append(req, payload);

    const auto hit = cache.lookup(req);
    REQUIRE(hit.has_value());
    CHECK(*hit == payload);

    // Spot-check: a cached survey equals its recomputation.
    CHECK(*hit == survey_payload(survey_minimum(req), sg));

    // A different key misses.
    SurveyRequest other = req;
    other.max_len = 6;
    CHECK_FALSE(cache.lookup(other).has_value());
}

TEST_CASE("survey cell csv lists histogram cells") {
    SurveyRequest req{SurfaceWithBoundary(1, 1), SeriesFilter::lcs, 1, 3, 1};
    const SurveyResult res = survey_minimum(req);
    const std::string csv = survey_cells_csv(res);
    CHECK(csv.rfind("surface,series,k,max_len,length,weight,count,min_i\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + (long)res.histogram.size());
}

TEST_CASE("reproduction suite holds at reduced scale") {
    const ReproduceOutcome out = run_reproduction(tiny_config(1));
    CHECK(out.all_hold());
    CHECK(out.reports.size() >= 8);
    const std::string text = format_reports(out.reports);
    CHECK(text.find("VIOLATED") == std::string::npos);
}

TEST_CASE("reproduction exports are byte-identical across runs and workers") {
    const ReproduceOutcome base = run_reproduction(tiny_config(1));
    const ReproduceOutcome again = run_reproduction(tiny_config(1));
    const ReproduceOutcome wide = run_reproduction(tiny_config(8));
    const std::string j1 = export_records(base.records, ExportFormat::json);
    CHECK(j1 == export_records(again.records, ExportFormat::json));
    CHECK(j1 == export_records(wide.records, ExportFormat::json));
    const std::string c1 = export_records(base.records, ExportFormat::csv);
    CHECK(c1 == export_records(again.records, ExportFormat::csv));
    CHECK(c1 == export_records(wide.records, ExportFormat::csv));
}
