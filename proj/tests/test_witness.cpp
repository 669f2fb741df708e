#include <catch2/catch_amalgamated.hpp>

#include "freecurves/witness.hpp"

using namespace freecurves;

namespace {
const GeneratorSet g2(2);
Word W(const std::string& text) { return parse_word(g2, text); }
} // namespace

TEST_CASE("witness recursion base and first levels") {
    const WitnessPair p1 = derived_witness(1);
    CHECK(p1.x == W("a"));
    CHECK(p1.y == W("b"));

    const WitnessPair p2 = derived_witness(2);
    CHECK(p2.x == W("a b a' b'"));
    CHECK(p2.x.length() == 4);
    CHECK(p2.y == W("a b' a' b"));

    const WitnessPair p3 = derived_witness(3);
    CHECK(p3.x.length() == 16);
}

TEST_CASE("witness guard range") {
    CHECK_THROWS_AS(derived_witness(0), std::out_of_range);
    CHECK_THROWS_AS(derived_witness(13), std::out_of_range);
    CHECK_NOTHROW(derived_witness(6));
}

TEST_CASE("lcs witness picks the smallest sufficient derived level") {
    CHECK(lcs_witness(1) == W("a"));
    CHECK(lcs_witness(2) == W("a b a' b'"));
    CHECK(derived_level_for_lcs(4) == 3);
    CHECK(lcs_witness(4) == derived_witness(3).x);
    CHECK(lcs_witness(4).length() == 16);
    CHECK(derived_level_for_lcs(5) == 4);
    CHECK(derived_level_for_lcs(8) == 4);
    CHECK(derived_level_for_lcs(9) == 5);
}

TEST_CASE("witness lengths and nontriviality up to level 6") {
    for (int k = 1; k <= 6; ++k) {
        const WitnessPair p = derived_witness(k);
        const uint64_t bound = uint64_t{1} << (2 * (k - 1));
        CHECK(p.x.length() <= bound);
        CHECK(p.y.length() <= bound);
        CHECK_FALSE(p.x.trivial());
        CHECK_FALSE(p.y.trivial());
        CHECK_FALSE(commutator(p.x, p.y).trivial());
    }
}

TEST_CASE("witness certificates") {
    const WitnessCertificate c1 = certify_witness(derived_witness(1));
    CHECK(c1.all_ok());
    CHECK(c1.weight_checked);
    CHECK(c1.weight_is_exact);
    CHECK(c1.weight_value == 1);

    const WitnessCertificate c2 = certify_witness(derived_witness(2));
    CHECK(c2.all_ok());
    CHECK(c2.weight_value == 2);

    const WitnessCertificate c3 = certify_witness(derived_witness(3));
    CHECK(c3.all_ok());
    CHECK(c3.weight_lower_bound == 4);

    const WitnessCertificate c4 = certify_witness(derived_witness(4));
    CHECK(c4.all_ok());
    CHECK(c4.weight_lower_bound == 8);
    CHECK(c4.length_x <= 64);

    // Level 5 skips the weight clause (4^{k-1} > 64) but checks the rest.
    const WitnessCertificate c5 = certify_witness(derived_witness(5));
    CHECK(c5.all_ok());
    CHECK_FALSE(c5.weight_checked);
}

TEST_CASE("a tampered pair fails certification") {
    WitnessPair bad = derived_witness(2);
    bad.x = Word(2); // trivial
    CHECK_THROWS_WITH(certify_witness(bad), Catch::Matchers::ContainsSubstring("trivial"));

    WitnessPair too_long = derived_witness(2);
    too_long.x = power(W("a"), 5); // length 5 > 4
    CHECK_THROWS_WITH(certify_witness(too_long),
                      Catch::Matchers::ContainsSubstring("length bound"));

    WitnessPair commuting = derived_witness(1);
    commuting.y = commuting.x; // [x, x] = 1
    CHECK_THROWS_WITH(certify_witness(commuting),
                      Catch::Matchers::ContainsSubstring("[x_k, y_k]"));
}
