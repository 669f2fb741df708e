#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "freecurves/surfaces.hpp"

using namespace freecurves;

TEST_CASE("surface validation") {
    CHECK_THROWS_AS(SurfaceWithBoundary(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(SurfaceWithBoundary(-1, 1), std::invalid_argument);
    CHECK(SurfaceWithBoundary(1, 1).rank() == 2);
    CHECK(SurfaceWithBoundary(0, 3).rank() == 2);
    CHECK(SurfaceWithBoundary(2, 1).rank() == 4);
    CHECK_FALSE(SurfaceWithBoundary(0, 2).nonabelian());
    CHECK_THROWS_AS(standard_generators(SurfaceWithBoundary(0, 1)), std::invalid_argument);
}

TEST_CASE("standard generators of the one-holed torus") {
    const auto sg = standard_generators(SurfaceWithBoundary(1, 1));
    CHECK(sg.gens.rank() == 2);
    CHECK(sg.gens.name(0) == "a1");
    CHECK(sg.gens.name(1) == "b1");
    REQUIRE(sg.boundary_words.size() == 1);
    CHECK(sg.boundary_words[0] ==
          commutator(Word::generator(2, 0), Word::generator(2, 1)));
}

TEST_CASE("standard generators of the pair of pants") {
    const auto sg = standard_generators(SurfaceWithBoundary(0, 3));
    CHECK(sg.gens.rank() == 2);
    CHECK(sg.gens.name(0) == "x1");
    CHECK(sg.gens.name(1) == "x2");
    REQUIRE(sg.boundary_words.size() == 3);
    CHECK(sg.boundary_words[0] == Word::generator(2, 0));
    CHECK(sg.boundary_words[1] == Word::generator(2, 1));
    // ∂_3 = (x1 x2)^-1
    CHECK(sg.boundary_words[2] ==
          (Word::generator(2, 0) * Word::generator(2, 1)).inverse());
}

TEST_CASE("standard generators of the one-holed genus 2 surface") {
    const auto sg = standard_generators(SurfaceWithBoundary(2, 1));
    CHECK(sg.gens.rank() == 4);
    const Word c1 = commutator(Word::generator(4, 0), Word::generator(4, 1));
    const Word c2 = commutator(Word::generator(4, 2), Word::generator(4, 3));
    REQUIRE(sg.boundary_words.size() == 1);
    CHECK(sg.boundary_words[0] == c1 * c2);
}

TEST_CASE("ribbon boundary traces recover the boundary classes") {
    for (auto [g, b] : std::vector<std::pair<int, int>>{
             {1, 1}, {0, 3}, {1, 2}, {2, 1}, {0, 4}, {1, 3}, {2, 2}, {3, 1}, {0, 5}, {2, 3}}) {
        INFO("surface " << g << "," << b);
        const auto sg = standard_generators(SurfaceWithBoundary(g, b));
        CHECK(sg.ribbon.directions() == 2 * sg.gens.rank());
        auto traces = boundary_trace(sg);
        REQUIRE((int)traces.size() == b);
        // Each traced cycle equals exactly one boundary word, inverted
        // (the trace runs with the surface on the other side).
        std::multiset<CyclicWord> expected, got;
        for (const Word& bw : sg.boundary_words)
            expected.insert(cyclic_reduce(bw.inverse()).cyclic);
        for (const auto& t : traces) got.insert(t);
        CHECK(expected == got);
    }
}

TEST_CASE("boundary parallel classes") {
    const auto t11 = standard_generators(SurfaceWithBoundary(1, 1));
    const Word d = t11.boundary_words[0];
    CHECK(is_boundary_parallel(t11, cyclic_reduce(d).cyclic));
    CHECK(is_boundary_parallel(t11, cyclic_reduce(power(d, -3)).cyclic));
    CHECK_FALSE(is_boundary_parallel(t11, cyclic_reduce(Word::generator(2, 0)).cyclic));
    CHECK_THROWS_AS(is_boundary_parallel(t11, CyclicWord{}), std::domain_error);

    const auto p3 = standard_generators(SurfaceWithBoundary(0, 3));
    const Word d3 = p3.boundary_words[2];
    CHECK(is_boundary_parallel(p3, cyclic_reduce(power(d3, -2)).cyclic));
    CHECK(is_boundary_parallel(p3, cyclic_reduce(Word::generator(2, 0)).cyclic));
    const Word mixed = Word::generator(2, 0) * Word::generator(2, 1, -1);
    CHECK_FALSE(is_boundary_parallel(p3, cyclic_reduce(mixed).cyclic));
}

TEST_CASE("ribbon order rejects bad permutations") {
    CHECK_THROWS_AS(RibbonOrder({0, 0, 1, 2}), std::invalid_argument);
    const RibbonOrder rib({0, 2, 1, 3});
    CHECK(rib.position(Letter(0, 1)) == 0);
    CHECK(rib.position_after(Letter(0, 1), Letter(1, 1)) == 1);
    CHECK(rib.position_after(Letter(1, -1), Letter(0, 1)) == 1);
}
