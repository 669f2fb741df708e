#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "freecurves/words.hpp"

using namespace freecurves;

namespace {

const GeneratorSet g2(2);

Word W(const std::string& text) { return parse_word(g2, text); }

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

std::vector<Letter> random_raw(std::mt19937_64& rng, int rank, int len) {
    std::vector<Letter> ls;
    for (int i = 0; i < len; ++i) ls.push_back(Letter::from_code((int)(rng() % (2 * rank))));
    return ls;
}

} // namespace

TEST_CASE("free reduction") {
    CHECK(Word::reduce(2, {Letter(0, 1), Letter(0, -1)}).trivial());
    CHECK(Word::reduce(2, {Letter(0, 1), Letter(1, 1), Letter(1, -1), Letter(0, 1)}) == W("a a"));

    // x2 y2 x2^-1 y2^-1 concatenated letter by letter reduces with no
    // junction cancellation: 16 letters stay.
    const Word x2 = W("a b a' b'");
    const Word y2 = W("a b' a' b");
    const Word x2i = x2.inverse(), y2i = y2.inverse();
    std::vector<Letter> raw;
    for (const Word* p : {&x2, &y2, &x2i, &y2i})
        for (Letter l : p->letters()) raw.push_back(l);
    CHECK(Word::reduce(2, raw).length() == 16);
}

TEST_CASE("reduce is idempotent on random input") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
        auto raw = random_raw(rng, 2, (int)(rng() % 12));
        const Word once = Word::reduce(2, raw);
        CHECK(Word::reduce(2, once.letters()) == once);
    }
}

TEST_CASE("multiplication") {
    CHECK((W("a") * W("a'")).trivial());
    CHECK(W("a b") * W("b' a") == W("a a"));
    CHECK(W("a b a' b'") * W("a b' a' b") == W("a b a' b' a b' a' b"));
    CHECK_THROWS_AS(W("a") * Word::generator(3, 2), std::invalid_argument);
}

TEST_CASE("multiplication is associative up to reduction") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        const Word u = random_word(rng, 2, (int)(rng() % 8));
        const Word v = random_word(rng, 2, (int)(rng() % 8));
        const Word w = random_word(rng, 2, (int)(rng() % 8));
        CHECK((u * v) * w == u * (v * w));
    }
}

TEST_CASE("inversion") {
    CHECK(W("a").inverse() == W("a'"));
    CHECK(W("a b a' b'").inverse() == W("b a b' a'"));
    CHECK(Word(2).inverse().trivial());
    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        const Word u = random_word(rng, 3, (int)(rng() % 10));
        CHECK((u * u.inverse()).trivial());
        CHECK(u.inverse().length() == u.length());
    }
}

TEST_CASE("commutator") {
    CHECK(commutator(W("a"), W("b")) == W("a b a' b'"));
    CHECK(commutator(W("a"), W("a")).trivial());
    CHECK(commutator(W("a b a' b'"), W("a b' a' b")).length() == 16);
}

TEST_CASE("commutator length bound and cyclic-subgroup criterion") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        const Word u = random_word(rng, 2, (int)(rng() % 5));
        const Word v = random_word(rng, 2, (int)(rng() % 5));
        CHECK(commutator(u, v).length() <= 2 * u.length() + 2 * v.length());

        // Brute force: u and v lie in a cyclic subgroup iff some z of
        // length <= 4 has u = z^p and v = z^q (including trivial cases).
        bool cyclic = u.trivial() || v.trivial();
        for (uint64_t i = 1; !cyclic && i < word_count_upto(2, 4); ++i) {
            const Word z = word_at(2, i);
            bool up = false, vp = false;
            for (int p = -4; p <= 4; ++p) {
                if (power(z, p) == u) up = true;
                if (power(z, p) == v) vp = true;
            }
            cyclic = up && vp;
        }
        CHECK(commutator(u, v).trivial() == cyclic);
    }
}

TEST_CASE("cyclic reduction") {
    const auto r1 = cyclic_reduce(W("b a b'"));
    CHECK(r1.cyclic == CyclicWord::from_cyclically_reduced(W("a")));
    CHECK(r1.conjugator == W("b"));

    const auto r2 = cyclic_reduce(W("a b a' b'"));
    CHECK(r2.cyclic.to_word() == W("a b a' b'"));
    CHECK(r2.conjugator.trivial());

    // a^-1 (b a) a: the class of ba, whose least rotation is ab.
    const auto r3 = cyclic_reduce(W("a' b a a"));
    CHECK(r3.cyclic.to_word() == W("a b"));

    std::mt19937_64 rng(19);
    for (int t = 0; t < 300; ++t) {
        const Word w = random_word(rng, 2, (int)(rng() % 8));
        const Word c = random_word(rng, 2, (int)(rng() % 6));
        const auto base = cyclic_reduce(w);
        const auto conj = cyclic_reduce(c * w * c.inverse());
        CHECK(base.cyclic == conj.cyclic);
        // Round trip: u = conjugator * cyclic * conjugator^-1.
        const Word u = c * w * c.inverse();
        CHECK(conj.conjugator * conj.cyclic.to_word() * conj.conjugator.inverse() == u);
    }
}

TEST_CASE("canonical rotation matches a naive minimum") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 300; ++t) {
        Word w = random_word(rng, 2, 1 + (int)(rng() % 9));
        const auto core = cyclic_reduce(w).cyclic;
        if (core.trivial()) continue;
        // Naive least rotation.
        const auto& ls = core.letters();
        Word best = core.to_word();
        for (size_t r = 1; r < ls.size(); ++r) {
            std::vector<Letter> rot;
            for (size_t i = 0; i < ls.size(); ++i) rot.push_back(ls[(r + i) % ls.size()]);
            const Word cand = Word::reduce(2, rot);
            if (std::lexicographical_compare(cand.letters().begin(), cand.letters().end(),
                                             best.letters().begin(), best.letters().end()))
                best = cand;
        }
        CHECK(core.to_word() == best);
    }
}

TEST_CASE("conjugacy") {
    CHECK(is_conjugate(W("b a b'"), W("a")));
    CHECK_FALSE(is_conjugate(W("a"), W("b")));
    CHECK_FALSE(is_conjugate(W("a b a' b'"), W("b a b' a'")));
}

TEST_CASE("syllables") {
    const auto s1 = syllables(W("a a b b b a'"));
    REQUIRE(s1.size() == 3);
    CHECK((s1[0].generator == 0 && s1[0].exponent == 2));
    CHECK((s1[1].generator == 1 && s1[1].exponent == 3));
    CHECK((s1[2].generator == 0 && s1[2].exponent == -1));

    const auto s2 = syllables(W("a a a a a"));
    REQUIRE(s2.size() == 1);
    CHECK(s2[0].exponent == 5);

    const auto s3 = syllables(W("a b a' b'"));
    REQUIRE(s3.size() == 4);
    CHECK(s3[3].exponent == -1);

    CHECK_THROWS_AS(syllables(Word(2)), std::domain_error);
}

TEST_CASE("word parsing and formatting") {
    CHECK(parse_word(g2, "").trivial());
    CHECK(parse_word(g2, "a b^-1") == W("a b'"));
    CHECK_THROWS_AS(parse_word(g2, "a q"), std::invalid_argument);
    std::mt19937_64 rng(29);
    for (int t = 0; t < 100; ++t) {
        const Word w = random_word(rng, 2, (int)(rng() % 10));
        CHECK(parse_word(g2, format_word(g2, w)) == w);
    }
}

TEST_CASE("enumeration counts and order") {
    CHECK(word_count_of_length(2, 1) == 4);
    CHECK(word_count_of_length(2, 3) == 36);
    CHECK(word_count_upto(2, 8) == 13121);

    // No duplicates, all reduced, lengths weakly increasing.
    std::set<std::string> seen;
    size_t last_len = 0;
    enumerate_words(2, 5, [&](const Word& w) {
        CHECK(w.length() >= last_len);
        last_len = w.length();
        CHECK(Word::reduce(2, w.letters()) == w);
        CHECK(seen.insert(format_word(g2, w) + "|").second);
    });
    CHECK(seen.size() == word_count_upto(2, 5));

    // Block partitioning covers the same stream.
    std::vector<std::string> full, pieces;
    enumerate_words(2, 4, [&](const Word& w) { full.push_back(format_word(g2, w)); });
    const uint64_t total = word_count_upto(2, 4);
    for (uint64_t lo = 0; lo < total; lo += 37)
        enumerate_words_block(2, lo, std::min(total, lo + 37),
                              [&](const Word& w) { pieces.push_back(format_word(g2, w)); });
    CHECK(full == pieces);
}

TEST_CASE("generator set validation") {
    CHECK_THROWS_AS(GeneratorSet(0), std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSet({"a", "a"}), std::invalid_argument);
    CHECK(GeneratorSet(3).name(2) == "c");
}
