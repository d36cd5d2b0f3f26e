#include "doctest.h"

#include "../oracles/oracles.hpp"
#include "orbidegen/contact.hpp"
#include "orbidegen/errors.hpp"

using namespace orbidegen;
using namespace orbidegen::contact;

TEST_SUITE("contact") {

TEST_CASE("contact orders are not reduced") {
    ContactOrder a(2, 2), b(1, 1);
    CHECK(a.value() == b.value());
    CHECK_FALSE(a == b);
    CHECK(to_string(ContactOrder(3, 2)) == "3/2");
    CHECK_THROWS_AS(ContactOrder(0, 1), DomainError);
    CHECK_THROWS_AS(ContactOrder(1, 0), DomainError);
}

TEST_CASE("floor bracket") {
    CHECK(floor_bracket(Rational(2)) == 2);
    CHECK(floor_bracket(Rational(5, 3)) == 1);
    CHECK(floor_bracket(Rational(1, 2)) == 0);
}

TEST_CASE("contact sums") {
    CHECK(contact_sum_check({{1, 2}, {3, 2}}, Rational(2)).ok);
    auto r = contact_sum_check({{1, 2}, {1, 2}}, Rational(2));
    CHECK_FALSE(r.ok);
    CHECK(r.sum == Rational(1));
}

TEST_CASE("unit orders give compositions") {
    for (int N = 1; N <= 8; ++N) {
        for (int k = 1; k <= 4; ++k) {
            auto ps = enumerate_partitions(Rational(N), std::vector<std::int64_t>(k, 1));
            CHECK(static_cast<std::int64_t>(ps.size()) == oracle::composition_count(N, k));
        }
    }
}

TEST_CASE("half-integer slots") {
    auto ps = enumerate_partitions(Rational(2), {2, 2});
    REQUIRE(ps.size() == 3);
    CHECK(ps[0][0] == ContactOrder(1, 2));
    CHECK(ps[0][1] == ContactOrder(3, 2));
    CHECK(ps[1][0] == ContactOrder(2, 2));
    CHECK(enumerate_partitions(Rational(1, 3), {2}).empty());
    CHECK(enumerate_partitions(Rational(1), {}).empty());
    CHECK_THROWS_AS(enumerate_partitions(Rational(0), {1}), DomainError);
    CHECK_THROWS_AS(enumerate_partitions(Rational(1), {0}), DomainError);
}

TEST_CASE("automorphisms of insertion tuples") {
    std::vector<RelInsertion> ins{{{1, 1}, "0", "a"}, {{1, 1}, "0", "a"}, {{1, 1}, "0", "a"}, {{2, 1}, "0", "a"}};
    CHECK(aut_order(ins) == 6);
    ins[1].basis_label = "b";
    CHECK(aut_order(ins) == 2);
    CHECK(aut_order({}) == 1);
}

TEST_CASE("branch cover degree") {
    CHECK(branch_cover_degree(3) == 3);
    CHECK_THROWS_AS(branch_cover_degree(0), DomainError);
}

}
