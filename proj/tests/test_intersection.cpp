#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "freecurves/hyperbolic_oracle.hpp"
#include "freecurves/intersection.hpp"
#include "freecurves/survey.hpp"

using namespace freecurves;

namespace {

const SurfaceWithBoundary torus{1, 1};
const SurfaceWithBoundary pants{0, 3};

CyclicWord cls(const SurfaceGenerators& sg, const std::string& text) {
    return cyclic_reduce(parse_word(sg.gens, text)).cyclic;
}

Word random_word(std::mt19937_64& rng, int rank, int len) {
    std::vector<Letter> ls;
    for (int i = 0; i < len; ++i) {
        if (ls.empty()) {
            ls.push_back(Letter::from_code((int)(rng() % (2 * rank))));
        } else {
            int c = (int)(rng() % (2 * rank - 1));
            if (c >= ls.back().inverse().code()) ++c;
            ls.push_back(Letter::from_code(c));
        }
    }
    return Word::reduce(rank, ls);
}

} // namespace

TEST_CASE("length bound") {
    CHECK(word_length_bound(4) == 6);
    CHECK(word_length_bound(1) == 0);
    CHECK(word_length_bound(0) == 0);
    CHECK(word_length_bound(16) == 120);
}

TEST_CASE("pinned self-intersection values on the one-holed torus") {
    const auto sg = standard_generators(torus);
    CHECK(self_intersection(sg, cls(sg, "a1")).value == 0);
    CHECK(self_intersection(sg, cls(sg, "a1 b1 a1' b1'")).value == 0);
    CHECK(self_intersection(sg, cls(sg, "a1 a1")).value == 1);
    CHECK(self_intersection(sg, cls(sg, "a1 a1 a1")).value == 2);
    CHECK(self_intersection(sg, cls(sg, "a1 b1")).value == 0);
    CHECK(self_intersection(sg, cls(sg, "a1 a1 b1")).value == 0);
    CHECK(self_intersection(sg, cls(sg, "a1 a1 b1 b1")).value == 1);
    // Boundary square: one crossing (the class is a proper power).
    CHECK(self_intersection(sg, cls(sg, "a1 b1 a1' b1' a1 b1 a1' b1'")).value == 1);
    CHECK_THROWS_AS(self_intersection(sg, CyclicWord{}), std::domain_error);
}

TEST_CASE("method and certificate") {
    const auto sg = standard_generators(torus);
    const auto r = self_intersection(sg, cls(sg, "a1 a1 b1 b1"));
    CHECK(r.method == IntersectionMethod::combinatorial);
    CHECK(r.root_multiplicity == 1);
    REQUIRE(r.certificate.size() == 1);

    const auto p = self_intersection(sg, cls(sg, "a1 a1 a1"));
    CHECK(p.root_multiplicity == 3);
    CHECK(p.certificate.empty());
    CHECK(p.value == 2);
}

TEST_CASE("generators and boundaries are simple on several surfaces") {
    for (auto [g, b] : std::vector<std::pair<int, int>>{{1, 1}, {0, 3}, {1, 2}, {2, 1}, {0, 4}}) {
        const auto sg = standard_generators(SurfaceWithBoundary(g, b));
        for (int i = 0; i < sg.gens.rank(); ++i) {
            const auto c = cyclic_reduce(Word::generator(sg.gens.rank(), i)).cyclic;
            CHECK(self_intersection(sg, c).value == 0);
        }
        for (const Word& bw : sg.boundary_words) {
            if (bw.trivial()) continue;
            CHECK(self_intersection(sg, cyclic_reduce(bw).cyclic).value == 0);
        }
    }
}

TEST_CASE("conjugation and inversion invariance") {
    const auto sg = standard_generators(torus);
    std::mt19937_64 rng(53);
    for (int t = 0; t < 150; ++t) {
        const Word w = random_word(rng, 2, 1 + (int)(rng() % 7));
        if (cyclic_reduce(w).cyclic.trivial()) continue;
        const Word c = random_word(rng, 2, (int)(rng() % 5));
        const auto base = self_intersection(sg, cyclic_reduce(w).cyclic).value;
        CHECK(self_intersection(sg, cyclic_reduce(c * w * c.inverse()).cyclic).value == base);
        CHECK(self_intersection(sg, cyclic_reduce(w.inverse()).cyclic).value == base);
    }
}

TEST_CASE("envelope holds on random classes") {
    for (const auto& surface : {torus, pants}) {
        const auto sg = standard_generators(surface);
        std::mt19937_64 rng(59);
        for (int t = 0; t < 200; ++t) {
            const Word w = random_word(rng, 2, 1 + (int)(rng() % 8));
            const CyclicWord c = cyclic_reduce(w).cyclic;
            if (c.trivial()) continue;
            CHECK(self_intersection(sg, c).value <= word_length_bound(c.length()));
        }
    }
}

TEST_CASE("numeric oracle agrees exhaustively at small length") {
    for (const auto& surface : {torus, pants}) {
        const auto sg = standard_generators(surface);
        const HyperbolicOracle oracle(sg);
        uint64_t compared = 0;
        enumerate_words(sg.gens.rank(), 5, [&](const Word& w) {
            if (!detail::is_canonical_cyclic(w)) return;
            const CyclicWord c = CyclicWord::from_cyclically_reduced(w);
            const auto comb = self_intersection(sg, c).value;
            const auto num = oracle.self_intersection(c).value;
            INFO("surface " << surface.label() << " class " << format_word(sg.gens, c));
            REQUIRE(comb == num);
            ++compared;
        });
        CHECK(compared > 100);
    }
}

TEST_CASE("oracle reproduces the power law directly") {
    const auto sg = standard_generators(torus);
    const HyperbolicOracle oracle(sg);
    CHECK(oracle.self_intersection(cls(sg, "a1 a1")).value == 1);
    CHECK(oracle.self_intersection(cls(sg, "a1 a1 a1")).value == 2);
    CHECK(oracle.self_intersection(cls(sg, "a1 b1 a1' b1'")).value == 0);
}

TEST_CASE("power law on a simple nonperipheral class") {
    const auto sg = standard_generators(torus);
    const HyperbolicOracle oracle(sg);
    for (int n = 1; n <= 4; ++n) {
        const CyclicWord c = cyclic_reduce(power(Word::generator(2, 0), n)).cyclic;
        CHECK(self_intersection(sg, c).value == (uint64_t)(n - 1));
        CHECK(oracle.self_intersection(c).value == (uint64_t)(n - 1));
    }
}

TEST_CASE("rank mismatch is rejected") {
    const auto sg = standard_generators(torus);
    const auto other = standard_generators(SurfaceWithBoundary(2, 1));
    const CyclicWord foreign = cyclic_reduce(Word::generator(4, 3)).cyclic;
    CHECK_THROWS_AS(self_intersection(sg, foreign), std::invalid_argument);
    CHECK_THROWS_AS(
        self_intersection(sg, SurfaceCurve{SurfaceWithBoundary(2, 1), foreign}),
        std::invalid_argument);
}

TEST_CASE("survey minima on the one-holed torus") {
    SurveyRequest r1{torus, SeriesFilter::lcs, 1, 1, 1};
    const SurveyResult s1 = survey_minimum(r1);
    REQUIRE(s1.min_i.has_value());
    CHECK(*s1.min_i == 0);
    const auto sg = standard_generators(torus);
    REQUIRE(s1.witness.has_value());
    CHECK(format_word(sg.gens, *s1.witness) == "a1");

    SurveyRequest r2{torus, SeriesFilter::lcs, 2, 4, 1};
    const SurveyResult s2 = survey_minimum(r2);
    REQUIRE(s2.min_i.has_value());
    CHECK(*s2.min_i == 0);
    CHECK(format_word(sg.gens, *s2.witness) == "a1 b1 a1' b1'");

    // k = 3 within length 6: every matching class (if any) crosses itself.
    SurveyRequest r3{torus, SeriesFilter::lcs, 3, 6, 1};
    const SurveyResult s3 = survey_minimum(r3);
    if (s3.min_i) CHECK(*s3.min_i >= 1);

    // By length 8 a weight-3 class exists and still must cross itself.
    SurveyRequest r8{torus, SeriesFilter::lcs, 3, 8, 2};
    const SurveyResult s8 = survey_minimum(r8);
    REQUIRE(s8.min_i.has_value());
    CHECK(*s8.min_i >= 1);

    // derived2 agrees with the k = 2 lcs filter on matching counts.
    SurveyRequest rd{torus, SeriesFilter::derived2, 2, 4, 1};
    const SurveyResult sd = survey_minimum(rd);
    CHECK(sd.classes_matching == s2.classes_matching);
    CHECK(sd.min_i == s2.min_i);
}

TEST_CASE("survey is deterministic across worker counts") {
    SurveyRequest one{torus, SeriesFilter::lcs, 2, 6, 1};
    SurveyRequest four{torus, SeriesFilter::lcs, 2, 6, 4};
    const SurveyResult a = survey_minimum(one);
    const SurveyResult b = survey_minimum(four);
    CHECK(a.min_i == b.min_i);
    REQUIRE((a.witness.has_value() && b.witness.has_value()));
    CHECK(*a.witness == *b.witness);
    CHECK(a.classes_scanned == b.classes_scanned);
    CHECK(a.classes_matching == b.classes_matching);
    CHECK(a.histogram.size() == b.histogram.size());
    for (auto it = a.histogram.begin(), jt = b.histogram.begin(); it != a.histogram.end();
         ++it, ++jt) {
        CHECK(it->first == jt->first);
        CHECK(it->second.count == jt->second.count);
        CHECK(it->second.min_i == jt->second.min_i);
    }
}

TEST_CASE("survey rejects unsupported input") {
    CHECK_THROWS_AS(survey_minimum(SurveyRequest{SurfaceWithBoundary(0, 2),
                                                 SeriesFilter::lcs, 1, 3, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(survey_minimum(SurveyRequest{torus, SeriesFilter::derived2, 3, 3, 1}),
                    std::invalid_argument);
}
