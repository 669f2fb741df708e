// Command-line front end.
//
// Exit codes: 0 success / all bounds hold, 2 a bound check failed,
// 3 the combinatorial and numeric self-intersection routes disagree,
// 1 usage or I/O errors.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "freecurves/freecurves.hpp"

using namespace freecurves;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 2;
constexpr int kExitOracle = 3;

SurfaceWithBoundary parse_surface(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--surface", "expected g,b (e.g. 1,1)");
    return SurfaceWithBoundary(std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1)));
}

GeneratorSet rank_generators(int rank) { return GeneratorSet(rank); }

std::string bigint_str(const BigInt& v) { return v.str(); }

std::string format_series(const GeneratorSet& gens, const TruncatedSeries& s) {
    if (s.coefficients().empty()) return "0";
    std::string out;
    for (const auto& [mono, coeff] : s.coefficients()) {
        const bool neg = coeff < 0;
        BigInt mag = neg ? BigInt(-coeff) : coeff;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string term;
        for (uint8_t g : mono) term += (term.empty() ? "" : " ") + ("X" + gens.name(g));
        if (mag != 1 || term.empty()) {
            out += bigint_str(mag);
            if (!term.empty()) out += " ";
        }
        out += term;
    }
    return out;
}

nlohmann::json series_json(const GeneratorSet& gens, const TruncatedSeries& s) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [mono, coeff] : s.coefficients()) {
        nlohmann::json names = nlohmann::json::array();
        for (uint8_t g : mono) names.push_back(gens.name(g));
        terms.push_back({{"monomial", names}, {"coefficient", bigint_str(coeff)}});
    }
    return terms;
}

void emit(const RunRecord& rec, const std::string& human, bool as_json,
          const std::string& out_path) {
    if (as_json)
        std::cout << canonical_record(rec).dump(2) << "\n";
    else
        std::cout << human;
    if (!out_path.empty()) append_records(out_path, {rec});
}

RunRecord make_record(const std::string& command, nlohmann::json params, nlohmann::json payload,
                      double elapsed) {
    RunRecord rec;
    rec.command = command;
    rec.parameters = std::move(params);
    rec.payload = std::move(payload);
    rec.elapsed_seconds = elapsed;
    rec.timestamp = now_iso8601();
    return rec;
}

ReproduceConfig load_config_file(const std::string& path) {
    ReproduceConfig cfg;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "surfaces") {
            cfg.surfaces.clear();
            std::istringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ';'))
                if (!item.empty()) cfg.surfaces.push_back(parse_surface(item));
        } else if (key == "max_len") cfg.max_len = std::stoi(val);
        else if (key == "word_cap") cfg.word_cap = std::stoi(val);
        else if (key == "cfl_cap") cfg.cfl_cap = std::stoi(val);
        else if (key == "oracle_cap") cfg.oracle_cap = std::stoi(val);
        else if (key == "witness_k") cfg.witness_k = std::stoi(val);
        else if (key == "syllable_samples") cfg.syllable_samples = std::stoi(val);
        else if (key == "seed") cfg.seed = std::stoull(val);
        else if (key == "jobs") cfg.jobs = std::stoi(val);
        else if (key == "out_dir") cfg.out_dir = val;
        else if (key == "cache") cfg.cache_path = val;
        else throw std::runtime_error("unknown config key '" + key + "'");
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"free-group word invariants and curve self-intersection numbers"};
    app.require_subcommand(1);

    std::string word_text, out_path, format = "text", seq_text, series = "derived";
    std::string surface_text = "1,1", cache_path, config_path, catalog_path, records_path;
    int rank = 2, cap = -1, level = 1, k = 1, max_len = 6, jobs = 1;
    bool certify = false, with_oracle = false;

    auto add_word_opts = [&](CLI::App* cmd) {
        cmd->add_option("word", word_text, "word in text syntax, e.g. \"a b a' b'\"")
            ->required();
        cmd->add_option("--rank", rank, "generator count (names a, b, c, ...)")
            ->default_val(2);
        cmd->add_option("--format", format, "text or json")->default_val("text");
        cmd->add_option("--out", out_path, "append the run record to this JSONL file");
    };

    auto* c_reduce = app.add_subcommand("reduce", "freely reduce a word");
    add_word_opts(c_reduce);

    auto* c_weight = app.add_subcommand("lcs-weight", "largest k with w in γ_k");
    add_word_opts(c_weight);

    auto* c_fox = app.add_subcommand("fox-derive", "iterated Fox derivative augmentation");
    add_word_opts(c_fox);
    c_fox->add_option("--seq", seq_text, "comma-separated generator names, outermost first")
        ->required();

    auto* c_magnus = app.add_subcommand("magnus", "truncated Magnus expansion");
    add_word_opts(c_magnus);
    c_magnus->add_option("--cap", cap, "degree cap (default: the word length)");

    auto* c_witness = app.add_subcommand("witness", "derived/lcs series witnesses");
    c_witness->add_option("--series", series, "derived or lcs")->default_val("derived");
    c_witness->add_option("--level", level, "series level k")->required();
    c_witness->add_flag("--certify", certify, "run and print the certificate");
    c_witness->add_option("--format", format, "text or json")->default_val("text");
    c_witness->add_option("--out", out_path, "append the run record to this JSONL file");

    auto* c_selfint = app.add_subcommand("selfint", "minimal self-intersection number");
    c_selfint->add_option("word", word_text, "class in surface generators")->required();
    c_selfint->add_option("--surface", surface_text, "g,b")->default_val("1,1");
    c_selfint->add_flag("--oracle", with_oracle, "also run the numeric oracle (exit 3 on mismatch)");
    c_selfint->add_option("--format", format, "text or json")->default_val("text");
    c_selfint->add_option("--out", out_path, "append the run record to this JSONL file");

    auto* c_survey = app.add_subcommand("survey", "minimum i(x) over short classes in a series");
    c_survey->add_option("--surface", surface_text, "g,b")->default_val("1,1");
    c_survey->add_option("--series", series, "lcs or derived2")->default_val("lcs");
    c_survey->add_option("--k", k, "series level")->default_val(1);
    c_survey->add_option("--max-len", max_len, "class length cap")->default_val(6);
    c_survey->add_option("--jobs", jobs, "worker count")->default_val(1);
    c_survey->add_option("--cache", cache_path, "append-only survey cache file");
    c_survey->add_option("--format", format, "text, json, or csv (histogram cells)")
        ->default_val("text");
    c_survey->add_option("--out", out_path, "output file (JSONL record, or CSV with --format csv)");

    auto* c_detect = app.add_subcommand("detect", "find a degree-8 quotient seeing the word");
    add_word_opts(c_detect);

    auto* c_cores = app.add_subcommand("verify-cores", "check core-index bounds on the catalog");
    c_cores->add_option("--catalog", catalog_path, "catalog text file (default: built-in)");
    c_cores->add_option("--format", format, "text or json")->default_val("text");
    c_cores->add_option("--out", out_path, "append the run record to this JSONL file");

    auto* c_repro = app.add_subcommand("reproduce", "run the full desk-scale bound suite");
    c_repro->add_option("--config", config_path, "key=value config file");
    c_repro->add_option("--max-len", max_len, "class length cap override");
    c_repro->add_option("--jobs", jobs, "worker count override");
    c_repro->add_option("--out", out_path, "output directory for records and exports");
    c_repro->add_option("--cache", cache_path, "survey cache file");

    auto* c_export = app.add_subcommand("export", "canonical export of a records file");
    c_export->add_option("records", records_path, "JSONL records file")->required();
    c_export->add_option("--format", format, "json or csv")->default_val("json");
    c_export->add_option("--out", out_path, "output file (default: stdout)");

    auto* c_dump = app.add_subcommand("dump-catalog", "print the group catalog in text format");
    c_dump->add_option("--out", out_path, "output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto t0 = std::chrono::steady_clock::now();
        auto elapsed = [&] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        };
        const bool as_json = format == "json";

        if (c_reduce->parsed()) {
            const GeneratorSet gens = rank_generators(rank);
            const Word w = parse_word(gens, word_text);
            emit(make_record("reduce", {{"word", word_text}, {"rank", rank}},
                             {{"reduced", format_word(gens, w)}, {"length", w.length()}},
                             elapsed()),
                 format_word(gens, w) + "\n", as_json, out_path);
        } else if (c_weight->parsed()) {
            const GeneratorSet gens = rank_generators(rank);
            const Word w = parse_word(gens, word_text);
            nlohmann::json payload;
            std::string human;
            if (w.trivial()) {
                payload = {{"word", word_text}, {"outcome", "identity"}};
                human = "identity (weight undefined: the word is trivial)\n";
            } else {
                const int weight = lcs_weight(w);
                payload = {{"word", format_word(gens, w)}, {"weight", weight}};
                human = "weight " + std::to_string(weight) + "\n";
            }
            emit(make_record("lcs-weight", {{"word", word_text}, {"rank", rank}}, payload,
                             elapsed()),
                 human, as_json, out_path);
        } else if (c_fox->parsed()) {
            const GeneratorSet gens = rank_generators(rank);
            const Word w = parse_word(gens, word_text);
            DerivativeSequence seq;
            std::istringstream ss(seq_text);
            std::string name;
            while (std::getline(ss, name, ',')) {
                auto idx = gens.index_of(name);
                if (!idx) throw std::runtime_error("unknown generator '" + name + "' in --seq");
                seq.push_back(*idx);
            }
            if (seq.empty()) throw std::runtime_error("--seq must name at least one generator");
            const BigInt value = iterated_derivative_augmentation(seq, w);
            nlohmann::json payload = {{"word", format_word(gens, w)},
                                      {"seq", seq_text},
                                      {"augmentation", bigint_str(value)}};
            std::string human = "augmentation " + bigint_str(value) + "\n";
            if (seq.size() == 1) {
                const GroupRingElement d = fox_derivative(seq[0], w);
                std::string el;
                for (const auto& [dw, c] : d.terms()) {
                    if (!el.empty()) el += " + ";
                    el += bigint_str(c) + "*(" +
                          (dw.trivial() ? "1" : format_word(gens, dw)) + ")";
                }
                if (el.empty()) el = "0";
                payload["derivative"] = el;
                human = "D_" + name + " = " + el + "\n" + human;
            }
            emit(make_record("fox-derive", {{"word", word_text}, {"seq", seq_text}}, payload,
                             elapsed()),
                 human, as_json, out_path);
        } else if (c_magnus->parsed()) {
            const GeneratorSet gens = rank_generators(rank);
            const Word w = parse_word(gens, word_text);
            const int degree = cap >= 0 ? cap : (int)w.length();
            const TruncatedSeries s = magnus_expand(w, degree);
            emit(make_record("magnus", {{"word", word_text}, {"cap", degree}},
                             {{"cap", degree}, {"terms", series_json(gens, s)}}, elapsed()),
                 format_series(gens, s) + "\n", as_json, out_path);
        } else if (c_witness->parsed()) {
            const GeneratorSet gens = rank_generators(2);
            nlohmann::json payload;
            std::string human;
            if (series == "derived") {
                const WitnessPair p = derived_witness(level);
                payload = {{"series", "derived"},
                           {"level", level},
                           {"x", format_word(gens, p.x)},
                           {"y", format_word(gens, p.y)},
                           {"length_x", p.x.length()}};
                human = "x_" + std::to_string(level) + " = " + format_word(gens, p.x) + "\n" +
                        "y_" + std::to_string(level) + " = " + format_word(gens, p.y) + "\n";
                if (certify) {
                    const WitnessCertificate c = certify_witness(p);
                    payload["certificate"] = {
                        {"length_bound", c.length_bound},
                        {"lengths_ok", c.lengths_ok},
                        {"commutator_nontrivial", c.commutator_nontrivial},
                        {"membership", c.membership},
                        {"weight_checked", c.weight_checked},
                        {"weight_lower_bound", c.weight_lower_bound},
                        {"weight_exact", c.weight_is_exact ? nlohmann::json(c.weight_value)
                                                           : nlohmann::json(nullptr)}};
                    human += "certificate: lengths <= " + std::to_string(c.length_bound) +
                             ", [x,y] != 1, membership " + c.membership;
                    if (c.weight_checked)
                        human += ", lcs weight " +
                                 std::string(c.weight_is_exact ? "= " : ">= ") +
                                 std::to_string(c.weight_is_exact ? c.weight_value
                                                                  : c.weight_lower_bound);
                    human += "\n";
                }
            } else if (series == "lcs") {
                const Word x = lcs_witness(level);
                payload = {{"series", "lcs"},
                           {"level", level},
                           {"derived_level", derived_level_for_lcs(level)},
                           {"x", format_word(gens, x)},
                           {"length", x.length()}};
                human = "x = " + format_word(gens, x) + "  (length " +
                        std::to_string(x.length()) + ", in γ_" + std::to_string(level) + ")\n";
            } else {
                throw std::runtime_error("--series must be derived or lcs");
            }
            emit(make_record("witness", {{"series", series}, {"level", level}}, payload,
                             elapsed()),
                 human, as_json, out_path);
        } else if (c_selfint->parsed()) {
            const SurfaceWithBoundary surface = parse_surface(surface_text);
            const SurfaceGenerators sg = standard_generators(surface);
            const Word w = parse_word(sg.gens, word_text);
            const CyclicWord cls = cyclic_reduce(w).cyclic;
            if (cls.trivial()) throw std::runtime_error("the class is trivial");
            const IntersectionResult res = self_intersection(sg, cls);
            nlohmann::json pairs = nlohmann::json::array();
            for (auto [i, j] : res.certificate) pairs.push_back({i, j});
            nlohmann::json payload = {{"surface", surface.label()},
                                      {"class", format_word(sg.gens, cls)},
                                      {"value", res.value},
                                      {"method", "combinatorial"},
                                      {"root_multiplicity", res.root_multiplicity},
                                      {"linked_pairs", pairs},
                                      {"length_bound", word_length_bound(cls.length())}};
            std::string human = "i = " + std::to_string(res.value) + "  (class " +
                                format_word(sg.gens, cls) + ", bound " +
                                std::to_string(word_length_bound(cls.length())) + ")\n";
            if (with_oracle) {
                const HyperbolicOracle oracle(sg);
                const uint64_t numeric = oracle.self_intersection(cls).value;
                payload["oracle_value"] = numeric;
                human += "oracle i = " + std::to_string(numeric) + "\n";
                if (numeric != res.value) {
                    std::cerr << "oracle disagreement: combinatorial " << res.value
                              << " vs numeric " << numeric << "\n";
                    return kExitOracle;
                }
            }
            emit(make_record("selfint",
                             {{"surface", surface.label()}, {"word", word_text}},
                             payload, elapsed()),
                 human, as_json, out_path);
        } else if (c_survey->parsed()) {
            const SurfaceWithBoundary surface = parse_surface(surface_text);
            SeriesFilter filter;
            if (series == "lcs") filter = SeriesFilter::lcs;
            else if (series == "derived2") filter = SeriesFilter::derived2;
            else throw std::runtime_error("--series must be lcs or derived2");
            const SurveyRequest req{surface, filter, k, max_len, jobs};
            const SurfaceGenerators sg = standard_generators(surface);

            nlohmann::json payload;
            bool from_cache = false;
            if (!cache_path.empty()) {
                const SurveyCache cache{cache_path};
                if (auto hit = cache.lookup(req)) {
                    payload = *hit;
                    from_cache = true;
                }
            }
            if (!from_cache) {
                const SurveyResult res = survey_minimum(req);
                payload = survey_payload(res, sg);
                if (!cache_path.empty()) SurveyCache{cache_path}.append(req, payload);
            }

            std::string human = "surface " + surface.label() + ", series " + series + ", k " +
                                std::to_string(k) + ", max_len " + std::to_string(max_len) +
                                (from_cache ? " [cached]" : "") + "\n";
            human += "classes scanned " + payload["classes_scanned"].dump() + ", matching " +
                     payload["classes_matching"].dump() + "\n";
            human += "min i = " + payload["min_i"].dump() + ", witness " +
                     payload["witness"].dump() + "\n";

            RunRecord rec = make_record(
                "survey",
                {{"surface", surface.label()}, {"series", series}, {"k", k},
                 {"max_len", max_len}},
                payload, elapsed());
            if (format == "csv") {
                // Cell-level CSV needs the full result; recompute if cached.
                const SurveyResult res = survey_minimum(req);
                const std::string csv = survey_cells_csv(res);
                if (out_path.empty()) std::cout << csv;
                else write_file(out_path, csv);
            } else {
                emit(rec, human, as_json, out_path);
            }
        } else if (c_detect->parsed()) {
            const GeneratorSet gens = rank_generators(rank);
            const Word w = parse_word(gens, word_text);
            const auto res = detect(w);
            nlohmann::json payload;
            std::string human;
            if (!res) {
                payload = {{"word", format_word(gens, w)}, {"found", false}};
                human = "none (no degree-8 quotient separates this word)\n";
            } else {
                nlohmann::json images;
                for (int i = 0; i < gens.rank(); ++i)
                    images[gens.name(i)] = res->hom.target->element_name(res->hom.images[i]);
                payload = {{"word", format_word(gens, w)},
                           {"found", true},
                           {"target", res->hom.target->name()},
                           {"images", images},
                           {"value", res->hom.target->element_name(res->value)},
                           {"surjective", res->surjective}};
                human = res->hom.target->name() + ": ";
                for (int i = 0; i < gens.rank(); ++i)
                    human += gens.name(i) + " -> " +
                             res->hom.target->element_name(res->hom.images[i]) +
                             (i + 1 < gens.rank() ? ", " : "");
                human += "; psi(w) = " + res->hom.target->element_name(res->value) +
                         (res->surjective ? " (surjective)" : " (not surjective)") + "\n";
            }
            emit(make_record("detect", {{"word", word_text}, {"rank", rank}}, payload, elapsed()),
                 human, as_json, out_path);
        } else if (c_cores->parsed()) {
            std::vector<FiniteGroup> cat;
            if (catalog_path.empty()) {
                cat = group_catalog();
            } else {
                std::ifstream in(catalog_path);
                if (!in) throw std::runtime_error("cannot read catalog " + catalog_path);
                cat = load_catalog(in);
            }
            const CoreBoundReport rep = verify_core_bounds(cat);
            nlohmann::json rows = nlohmann::json::array();
            std::string human;
            for (const auto& row : rep.rows) {
                rows.push_back({{"case", row.case_name},
                                {"lemma", row.lemma},
                                {"actual_exponent", row.actual_exponent},
                                {"bound_exponent", row.bound_exponent},
                                {"holds", row.holds}});
                human += (row.holds ? "holds   " : "VIOLATED") + std::string("  ") +
                         row.case_name + "  N = " + std::to_string(row.actual_exponent) +
                         " <= " + std::to_string(row.bound_exponent) + "  [" + row.lemma + "]\n";
            }
            emit(make_record("verify-cores", {{"groups", cat.size()}},
                             {{"rows", rows}, {"all_hold", rep.all_hold()}}, elapsed()),
                 human, as_json, out_path);
            if (!rep.all_hold()) return kExitViolation;
        } else if (c_repro->parsed()) {
            ReproduceConfig cfg;
            if (!config_path.empty()) cfg = load_config_file(config_path);
            if (c_repro->count("--max-len")) cfg.max_len = max_len;
            if (c_repro->count("--jobs")) cfg.jobs = jobs;
            if (c_repro->count("--out")) cfg.out_dir = out_path;
            if (c_repro->count("--cache")) cfg.cache_path = cache_path;
            if (const char* env = std::getenv("FREECURVES_OUT_DIR")) cfg.out_dir = env;

            ReproduceOutcome outcome;
            try {
                outcome = run_reproduction(cfg);
            } catch (const OracleDisagreement& e) {
                std::cerr << "oracle disagreement: " << e.what() << "\n";
                return kExitOracle;
            }
            std::cout << format_reports(outcome.reports);
            if (!cfg.out_dir.empty()) {
                std::filesystem::create_directories(cfg.out_dir);
                append_records(cfg.out_dir + "/records.jsonl", outcome.records);
                write_file(cfg.out_dir + "/report.json",
                           export_records(outcome.records, ExportFormat::json));
                write_file(cfg.out_dir + "/summary.csv",
                           export_records(outcome.records, ExportFormat::csv));
            }
            std::cout << (outcome.all_hold() ? "all bounds hold\n" : "BOUND VIOLATION\n");
            if (!outcome.all_hold()) return kExitViolation;
        } else if (c_export->parsed()) {
            const auto records = read_records(records_path);
            const std::string text = export_records(records, parse_format(format));
            if (out_path.empty()) std::cout << text;
            else write_file(out_path, text);
        } else if (c_dump->parsed()) {
            const std::string text = catalog_to_string(group_catalog());
            if (out_path.empty()) std::cout << text;
            else write_file(out_path, text);
        }
        return kExitOk;
    } catch (const OracleDegeneracy& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOracle;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
