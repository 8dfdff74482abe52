#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <hfp/hfp.hpp>

#include "oracles.hpp"

using namespace hfp;

namespace {

PlumbingGraph sigma237() { return sigma_2_3(1).graph; }

}  // namespace

TEST_CASE("build_graph validates structure") {
    CHECK_NOTHROW(build_graph({-1, -2, -3, -7}, {{1, 2}, {1, 3}, {1, 4}}));
    CHECK_NOTHROW(build_graph({-2}, {}));
    CHECK_THROWS_AS(build_graph({-2, -2}, {{1, 2}, {1, 2}}), MalformedInput);
    CHECK_THROWS_AS(build_graph({-2, -2}, {{1, 2}, {2, 1}}), MalformedInput);  // same edge
    CHECK_THROWS_AS(build_graph({-2, -2}, {{1, 1}}), MalformedInput);
    CHECK_THROWS_AS(build_graph({-2, -2}, {{1, 3}}), MalformedInput);
    CHECK_THROWS_AS(build_graph({-2, 0}, {{1, 2}}), InvalidWeight);
    CHECK_THROWS_AS(build_graph({-2, -2}, {}), DisconnectedGraph);
    CHECK_THROWS_AS(build_graph({}, {}), MalformedInput);
}

TEST_CASE("intersection matrix of sigma(2,3,7)") {
    const auto g = sigma237();
    const IntMatrix expected{{-1, 1, 1, 1}, {1, -2, 0, 0}, {1, 0, -3, 0}, {1, 0, 0, -7}};
    CHECK(intersection_matrix_of(g) == expected);

    const auto form = IntersectionForm::of(g);
    CHECK(form.det() == 1);
    CHECK(form.det() == oracle::leibniz_determinant(form.matrix()));
}

TEST_CASE("scalar inverse of A_1") {
    const auto form = IntersectionForm::of(a_chain(1));
    CHECK(form.det() == -2);
    CHECK(form.inverse(1, 1) == Rational(-1, 2));
}

TEST_CASE("determinant cross-checked against permutation sum on small corpus") {
    for (const auto& [name, g] : oracle::small_corpus()) {
        INFO(name);
        const IntMatrix q = intersection_matrix_of(g);
        CHECK(determinant(q) == oracle::leibniz_determinant(q));
        // Bareiss without swaps: the last pivot is the determinant.
        const auto minors = leading_principal_minors(q);
        REQUIRE(static_cast<int>(minors.size()) == g.size());
        CHECK(minors.back() == determinant(q));
    }
}

TEST_CASE("Q * Qinv is the identity, exactly, across the corpus") {
    for (const auto& [name, g] : oracle::full_corpus()) {
        INFO(name);
        CHECK(IntersectionForm::of(g).verify_inverse());
    }
}

TEST_CASE("negative definiteness by minor signs") {
    const auto rep = is_negative_definite(sigma237());
    CHECK(rep.negative_definite);
    CHECK(rep.minors == std::vector<Int>{-1, 1, -1, 1});
    CHECK_FALSE(rep.first_violation.has_value());

    const auto bad = is_negative_definite(build_graph({1}, {}));
    CHECK_FALSE(bad.negative_definite);
    CHECK(bad.first_violation == 1);
}

TEST_CASE("A_8 chain is negative definite, minors match the recurrence") {
    const auto rep = is_negative_definite(a_chain(8));
    CHECK(rep.negative_definite);
    CHECK(rep.minors == oracle::chain_minors(8));
}

TEST_CASE("definiteness agrees with the grid oracle on s <= 5") {
    std::vector<PlumbingGraph> graphs;
    for (int s = 1; s <= 5; ++s) graphs.push_back(a_chain(s));
    graphs.push_back(sigma237());
    graphs.push_back(sigma_2_3(2).graph);
    // Star with -1 center and four -2 legs: two is too many for the center.
    graphs.push_back(build_graph({-1, -2, -2, -2, -2}, {{1, 2}, {1, 3}, {1, 4}, {1, 5}}));
    graphs.push_back(build_graph({1}, {}));
    graphs.push_back(build_graph({-2, 3}, {{1, 2}}));
    for (const auto& g : graphs) {
        INFO(emit_graph_text(g));
        CHECK(is_negative_definite(g).negative_definite ==
              oracle::grid_negative_definite(intersection_matrix_of(g)));
    }
}

TEST_CASE("bad vertices") {
    CHECK(bad_vertices(sigma237()) == std::vector<int>{1});
    CHECK(bad_vertices(a_chain(5)).empty());
    const auto star = build_graph({-1, -2, -2, -2, -2}, {{1, 2}, {1, 3}, {1, 4}, {1, 5}});
    CHECK(bad_vertices(star) == std::vector<int>{1});
}

TEST_CASE("squares of characteristic vectors") {
    const auto g = sigma237();
    const auto form = IntersectionForm::of(g);
    CHECK(square(form, parse_char_vector("(1,0,-1,-5)")) == -4);
    CHECK(renormalized_length(form, parse_char_vector("(1,0,-1,-5)")) == 0);

    // Zero vector on an even graph.
    const auto a1 = IntersectionForm::of(a_chain(1));
    CHECK(square(a1, parse_char_vector("(0)")) == 0);

    // Independent route: solve Qx = xi, then xi . x.
    const auto f2 = sigma_2_3(2);
    const auto form2 = IntersectionForm::of(f2.graph);
    const auto xi = parse_char_vector("(1,0,-1,-3,0)");
    CHECK(square(form2, xi) == -5);
    CHECK(square(form2, xi) == oracle::square_by_solve(intersection_matrix_of(f2.graph), xi));
    CHECK(renormalized_length(form2, xi) == 0);
}

TEST_CASE("square shift identity under K -> K + 2PD[v]") {
    std::mt19937_64 rng(20140915);
    std::uniform_int_distribution<int> coord(-9, 9);
    for (const auto& [name, g] : oracle::small_corpus()) {
        INFO(name);
        const auto form = IntersectionForm::of(g);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<Int> evals(g.size());
            for (auto& e : evals) e = coord(rng);
            const CharVector xi{evals};
            for (int v = 1; v <= g.size(); ++v) {
                CharVector shifted = pull(g, xi, v);  // xi - 2 Q e_v
                CHECK(square(form, xi) - square(form, shifted) ==
                      Rational(4 * (shifted.at(v) + g.weight(v))));
            }
        }
    }
}

TEST_CASE("singular form is rejected") {
    // Weights chosen so det Q = 0: chain -2, -1, -2 with det 0.
    const auto g = build_graph({-1, -2, -1}, {{1, 2}, {2, 3}});
    if (determinant(intersection_matrix_of(g)) == 0)
        CHECK_THROWS_AS(IntersectionForm::of(g), SingularForm);
}
