#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include <hfp/hfp.hpp>

#include "oracles.hpp"

using namespace hfp;

namespace {

PlumbingGraph sigma237() { return sigma_2_3(1).graph; }

}  // namespace

TEST_CASE("vector text syntax round trip") {
    CHECK(format_char_vector(parse_char_vector("(1,0,-1,-5)")) == "(1,0,-1,-5)");
    CHECK(parse_char_vector(" ( 1 , 0 , -1 , -5 ) ") == parse_char_vector("(1,0,-1,-5)"));
    CHECK_THROWS_AS(parse_char_vector("1,0,-1"), MalformedInput);
    CHECK_THROWS_AS(parse_char_vector("(1,,2)"), MalformedInput);
    CHECK_THROWS_AS(parse_char_vector("(1,x)"), MalformedInput);
}

TEST_CASE("characteristic parity") {
    const auto g = sigma237();
    CHECK(is_characteristic(g, parse_char_vector("(1,0,-1,-5)")));
    CHECK_FALSE(is_characteristic(g, parse_char_vector("(0,0,-1,-5)")));
    CHECK(is_characteristic(a_chain(2), parse_char_vector("(2,0)")));
    CHECK_THROWS_AS(is_characteristic(g, parse_char_vector("(1,0)")), LengthMismatch);
}

TEST_CASE("candidate box membership") {
    const auto g = sigma237();
    CHECK(satisfies_cond13(g, parse_char_vector("(1,0,-1,-5)")));
    CHECK_FALSE(satisfies_cond13(g, parse_char_vector("(-3,2,5,1)")));  // 5 > 3
    // A -1 vertex pins its coordinate to exactly 1.
    const auto one = build_graph({-1}, {});
    CHECK(satisfies_cond13(one, parse_char_vector("(1)")));
    CHECK_FALSE(satisfies_cond13(one, parse_char_vector("(-1)")));
    CHECK_FALSE(satisfies_cond13(one, parse_char_vector("(3)")));
}

TEST_CASE("terminal box membership") {
    const auto g = sigma237();
    CHECK(satisfies_terminal(g, parse_char_vector("(-1,0,1,3)")));
    CHECK_FALSE(satisfies_terminal(g, parse_char_vector("(1,0,-1,-5)")));  // 1 > -1
    CHECK(satisfies_terminal(a_chain(1), parse_char_vector("(0)")));
    CHECK(satisfies_terminal(a_chain(1), parse_char_vector("(-2)")));
}

TEST_CASE("candidate box enumeration") {
    const Cond13Box box237(sigma237());
    CHECK(box237.size() == 42);  // 1 * 2 * 3 * 7

    const Cond13Box boxA1(a_chain(1));
    CHECK(boxA1.size() == 2);
    CHECK(boxA1.at(0) == parse_char_vector("(0)"));
    CHECK(boxA1.at(1) == parse_char_vector("(2)"));

    for (int n = 1; n <= 5; ++n) {
        const Cond13Box box(sigma_2_3(n).graph);
        CHECK(box.size() == Int(42) << (n - 1));
    }
}

TEST_CASE("enumeration is duplicate-free, in lexicographic order, and in the box") {
    for (const auto& [name, g] : oracle::small_corpus()) {
        INFO(name);
        const Cond13Box box(g);
        std::set<CharVector> seen;
        CharVector prev;
        Int count = 0;
        box.for_each([&](const CharVector& xi) {
            CHECK(is_characteristic(g, xi));
            CHECK(satisfies_cond13(g, xi));
            CHECK(seen.insert(xi).second);
            if (count > 0) CHECK(prev < xi);
            prev = xi;
            ++count;
        });
        CHECK(count == box.size());
        // Random access agrees with iteration order.
        if (box.size() > 3) {
            Int k = box.size() / 2;
            Int i = 0;
            CharVector at_k;
            box.for_each([&](const CharVector& xi) {
                if (i == k) at_k = xi;
                ++i;
            });
            CHECK(box.at(k) == at_k);
        }
    }
}

TEST_CASE("positive weights make the box empty") {
    const auto g = build_graph({-2, 3}, {{1, 2}});
    const Cond13Box box(g);
    CHECK(box.size() == 0);
    int visits = 0;
    box.for_each([&](const CharVector&) { ++visits; });
    CHECK(visits == 0);
}

TEST_CASE("push moves") {
    const auto g = sigma237();
    {
        const auto [vec, n] = push(g, parse_char_vector("(1,0,-1,-5)"), 1);
        CHECK(vec == parse_char_vector("(-1,2,1,-3)"));
        CHECK(n == 0);
    }
    {
        const auto [vec, n] = push(g, parse_char_vector("(-1,2,1,-3)"), 1);
        CHECK(vec == parse_char_vector("(-3,4,3,-1)"));
        CHECK(n == -1);
    }
    {
        const auto [vec, n] = push(a_chain(1), parse_char_vector("(2)"), 1);
        CHECK(vec == parse_char_vector("(-2)"));
        CHECK(n == 0);
    }
    CHECK_THROWS_AS(push(g, parse_char_vector("(1,0,-1,-5)"), 5), IndexOutOfRange);
    CHECK_THROWS_AS(push(g, parse_char_vector("(1,0,-1,-5)"), 0), IndexOutOfRange);
}

TEST_CASE("push preserves parity and shifts the square by 8n") {
    std::mt19937_64 rng(402653189);
    for (const auto& [name, g] : oracle::small_corpus()) {
        INFO(name);
        const auto form = IntersectionForm::of(g);
        const Cond13Box box(g);
        std::uniform_int_distribution<long long> pickidx(
            0, static_cast<long long>(box.size()) - 1);
        for (int trial = 0; trial < 20; ++trial) {
            const CharVector xi = box.at(pickidx(rng));
            for (int v = 1; v <= g.size(); ++v) {
                const auto [vec, n] = push(g, xi, v);
                CHECK(is_characteristic(g, vec));
                CHECK(square(form, vec) == square(form, xi) + Rational(8 * n));
                CHECK(pull(g, vec, v) == xi);
            }
        }
    }
}
