#include "doctest.h"

#include <set>

#include "../oracles/oracles.hpp"
#include "orbidegen/errors.hpp"
#include "orbidegen/inertia.hpp"

using namespace orbidegen;
using namespace orbidegen::inertia;

namespace {

std::set<std::set<int>> as_sets(const std::vector<ConjugacyClass>& cs) {
    std::set<std::set<int>> out;
    for (const auto& c : cs) out.insert(std::set<int>(c.members.begin(), c.members.end()));
    return out;
}

}  // namespace

TEST_SUITE("inertia") {

TEST_CASE("cyclic classes are singletons") {
    for (int n : {1, 2, 3, 6, 12}) {
        auto g = FiniteGroupTable::cyclic(n);
        auto cs = conjugacy_classes(g);
        CHECK(cs.size() == static_cast<std::size_t>(n));
        CHECK(as_sets(cs) == oracle::conjugacy_classes(oracle::cyclic_table(n)));
        CHECK(cs[0].representative == g.identity());
    }
}

TEST_CASE("symmetric group classes match orbit computation") {
    for (int n : {2, 3, 4}) {
        auto g = FiniteGroupTable::symmetric(n);
        auto t = oracle::symmetric_table(n);
        CHECK(as_sets(conjugacy_classes(g)) == oracle::conjugacy_classes(t));
    }
    CHECK(conjugacy_classes(FiniteGroupTable::symmetric(3)).size() == 3);
    CHECK(conjugacy_classes(FiniteGroupTable::symmetric(4)).size() == 5);
}

TEST_CASE("direct product of S3 and Z2") {
    auto g = FiniteGroupTable::direct_product(FiniteGroupTable::symmetric(3), FiniteGroupTable::cyclic(2));
    CHECK(g.order() == 12);
    CHECK(conjugacy_classes(g).size() == 6);
}

TEST_CASE("element orders and inverse classes") {
    auto g = FiniteGroupTable::cyclic(6);
    CHECK(g.element_order(0) == 1);
    CHECK(g.element_order(1) == 6);
    CHECK(g.element_order(2) == 3);
    CHECK(g.element_order(3) == 2);
    auto cs = conjugacy_classes(g);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        auto j = inverse_class_index(g, cs, i);
        CHECK(inverse_class_index(g, cs, j) == i);
        CHECK((cs[i].representative + cs[j].representative) % 6 == 0);
    }
}

TEST_CASE("malformed tables are rejected") {
    auto build = [](std::vector<std::vector<int>> t) { return FiniteGroupTable(std::move(t)); };
    CHECK_THROWS_AS(build({{0, 1}, {1, 1}}), ValidationError);
    CHECK_THROWS_AS(build({{0, 1}, {1, 2}}), ValidationError);
    CHECK_THROWS_AS(build({{0, 1, 2}, {1, 2, 0}}), ValidationError);
    // closed, has a unit and inverses, not associative
    std::vector<std::vector<int>> bad = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK_THROWS_AS(build(bad), ValidationError);
    CHECK_THROWS_AS(FiniteGroupTable::cyclic(65), ResourceError);
}

TEST_CASE("degree shift") {
    std::vector<Rational> r{Rational(1, 3), Rational(1, 2)};
    CHECK(degree_shift(r) == Rational(5, 6));
    std::vector<Rational> bad{Rational(1)};
    CHECK_THROWS_AS(degree_shift(bad), ValidationError);
    std::vector<Rational> neg{Rational(-1, 2)};
    CHECK_THROWS_AS(degree_shift(neg), ValidationError);
}

TEST_CASE("shift integrality on Z3") {
    CRProfile p(FiniteGroupTable::cyclic(3), 1,
                {{0, {Rational(0)}, {{0, 1}, {2, 1}}, std::nullopt},
                 {1, {Rational(1, 3)}, {{0, 1}}, std::nullopt},
                 {2, {Rational(2, 3)}, {{0, 1}}, std::nullopt}});
    for (std::size_t i = 0; i < p.sectors().size(); ++i) {
        auto j = p.inverse_index(i);
        int nonzero = 0;
        for (const auto& r : p.sectors()[i].rotations) nonzero += r != Rational(0);
        CHECK(p.sectors()[i].shift + p.sectors()[j].shift == Rational(nonzero));
    }
    CHECK(pairing_check(p).ok());
    auto poly = cr_poincare_polynomial(p);
    REQUIRE(poly.size() == 4);
    CHECK(poly[0] == std::pair<Rational, std::int64_t>{Rational(0), 1});
    CHECK(poly[1] == std::pair<Rational, std::int64_t>{Rational(2, 3), 1});
    CHECK(poly[2] == std::pair<Rational, std::int64_t>{Rational(4, 3), 1});
    CHECK(poly[3] == std::pair<Rational, std::int64_t>{Rational(2), 1});
}

TEST_CASE("pairing violations are located") {
    CRProfile p(FiniteGroupTable::cyclic(3), 1,
                {{0, {Rational(0)}, {{0, 1}, {2, 1}}, std::nullopt},
                 {1, {Rational(1, 3)}, {{0, 1}}, std::nullopt},
                 {2, {Rational(1, 3)}, {{0, 1}}, std::nullopt}});
    auto rep = pairing_check(p);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].class_index == 1);
    CHECK_THROWS_AS(cr_poincare_polynomial(p), ValidationError);
}

TEST_CASE("menus") {
    auto m = ClassMenu::from_group(FiniteGroupTable::cyclic(4));
    CHECK(m.labels().size() == 4);
    CHECK(m.inverse("1") == "3");
    CHECK(m.order("2") == 2);
    CHECK(m.mutually_inverse("1", "3"));
    CHECK_FALSE(m.mutually_inverse("1", "1"));
    CHECK_THROWS_AS(ClassMenu({{"a", 2, "b"}}), ValidationError);
}

}
