#include "doctest.h"

#include <random>

#include "orbidegen/dimension.hpp"
#include "orbidegen/errors.hpp"

using namespace orbidegen;
using namespace orbidegen::dimension;
using orbidegen::contact::ContactOrder;

namespace {

// (n - 3)(1 - g) + c1(A) + m + k - sum of contact orders
Rational smooth_relative(int n, std::int64_t g, const Rational& c1A, std::int64_t m,
                         const std::vector<std::int64_t>& contacts) {
    std::int64_t s = 0;
    for (auto l : contacts) s += l;
    return Rational((n - 3) * (1 - g)) + c1A + Rational(m + static_cast<std::int64_t>(contacts.size()) - s);
}

ModuliSpec relative_spec(Flavor f, int n, std::int64_t g, const Rational& c1A, std::int64_t m,
                         const std::vector<std::int64_t>& contacts) {
    ModuliSpec s;
    s.flavor = f;
    s.n = n;
    s.g = g;
    s.c1A = c1A;
    for (std::int64_t i = 0; i < m; ++i) s.insertions.push_back({"0", Rational(0)});
    std::int64_t z = 0;
    for (auto l : contacts) {
        s.rel_insertions.push_back({ContactOrder(l, 1), "0", Rational(0)});
        z += l;
    }
    s.zA = Rational(z);
    return s;
}

}  // namespace

TEST_SUITE("dimension") {

TEST_CASE("absolute formulas") {
    ModuliSpec s;
    s.n = 3;
    s.g = 0;
    s.c1A = Rational(4);
    CHECK(virdim(s) == Rational(4));
    s.n = 1;
    s.g = 2;
    s.c1A = Rational(0);
    s.insertions = {{"0", Rational(0)}, {"0", Rational(0)}};
    CHECK(virdim(s) == Rational(4));
    s.flavor = Flavor::absolute_orbifold;
    s.insertions[0].shift = Rational(1, 3);
    CHECK(virdim(s) == Rational(11, 3));
}

TEST_CASE("orbifold relative with fractional contact") {
    ModuliSpec s;
    s.flavor = Flavor::relative_orbifold;
    s.n = 2;
    s.g = 0;
    s.c1A = Rational(3);
    s.rel_insertions = {{ContactOrder(3, 2), "1", Rational(1, 2)}};
    s.zA = Rational(3, 2);
    // 3 - 1 + 1 - 1/2 - 1
    CHECK(virdim(s) == Rational(3, 2));
}

TEST_CASE("smooth specialization on random specs") {
    std::mt19937_64 rng(31);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int trial = 0; trial < 500; ++trial) {
        const int n = uni(1, 5);
        const std::int64_t g = uni(0, 4);
        const Rational c1A(uni(-6, 12), uni(1, 3));
        const std::int64_t m = uni(0, 4);
        std::vector<std::int64_t> contacts(static_cast<std::size_t>(uni(1, 4)));
        for (auto& l : contacts) l = uni(1, 5);
        const auto expect = smooth_relative(n, g, c1A, m, contacts);
        CHECK(virdim(relative_spec(Flavor::relative_orbifold, n, g, c1A, m, contacts)) == expect);
        CHECK(virdim(relative_spec(Flavor::relative_smooth, n, g, c1A, m, contacts)) == expect);
    }
}

TEST_CASE("marked points and relative insertions shift the dimension") {
    auto s = relative_spec(Flavor::relative_orbifold, 3, 1, Rational(2), 1, {2});
    const auto base = virdim(s);
    s.insertions.push_back({"1", Rational(1, 4)});
    CHECK(virdim(s) - base == Rational(3, 4));
    auto t = relative_spec(Flavor::relative_smooth, 3, 1, Rational(2), 1, {2, 3});
    CHECK(virdim(t) - base == Rational(1 - 3));
}

TEST_CASE("ledger defect vanishes on compatible splittings") {
    std::mt19937_64 rng(77);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int trial = 0; trial < 200; ++trial) {
        const int n = uni(1, 4);
        const int k = uni(1, 3);
        std::vector<std::int64_t> contacts(static_cast<std::size_t>(k));
        std::int64_t z = 0;
        for (auto& l : contacts) z += (l = uni(1, 3));
        const std::int64_t gp = uni(0, 2), gm = uni(-1, 2);
        const std::int64_t mp = uni(0, 3), mm = uni(0, 3);
        const Rational cp(uni(-4, 8)), cm(uni(-4, 8));
        auto plus = relative_spec(Flavor::relative_smooth, n, gp, cp, mp, contacts);
        auto minus = relative_spec(Flavor::relative_smooth, n, gm, cm, mm, contacts);
        ModuliSpec total;
        total.flavor = Flavor::absolute_smooth;
        total.n = n;
        total.g = gp + gm + k - 1;
        total.c1A = cp + cm - Rational(2 * z);
        total.insertions.assign(static_cast<std::size_t>(mp + mm), {"0", Rational(0)});
        auto l = splitting_ledger(plus, minus, std::vector<Rational>(k, Rational(n - 1)), total);
        CHECK(l.defect == Rational(0));
    }
}

TEST_CASE("inconsistent specs are rejected") {
    auto s = relative_spec(Flavor::relative_smooth, 2, 0, Rational(1), 0, {1});
    s.zA = Rational(2);
    CHECK_THROWS_AS(virdim(s), ValidationError);
    s = relative_spec(Flavor::absolute_smooth, 2, 0, Rational(1), 0, {1});
    CHECK_THROWS_AS(virdim(s), ValidationError);
    s = relative_spec(Flavor::relative_smooth, 2, 0, Rational(1), 0, {1});
    s.rel_insertions[0].order = ContactOrder(2, 2);
    s.zA = Rational(1);
    CHECK_THROWS_AS(virdim(s), ValidationError);
    CHECK_THROWS_AS(parse_flavor("nope"), ValidationError);
    auto p = relative_spec(Flavor::relative_smooth, 2, 0, Rational(1), 0, {1});
    auto m = relative_spec(Flavor::relative_smooth, 2, 0, Rational(1), 0, {1, 1});
    CHECK_THROWS_AS(splitting_ledger(p, m, {Rational(1)}, p), ValidationError);
}

}
