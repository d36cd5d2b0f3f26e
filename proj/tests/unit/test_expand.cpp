#include "doctest.h"

#include <map>
#include <set>

#include "orbidegen/errors.hpp"
#include "orbidegen/expand.hpp"
#include "orbidegen/io.hpp"

using namespace orbidegen;
using namespace orbidegen::expand;
using orbidegen::contact::ContactOrder;

namespace {

struct Loaded {
    io::InputDocument doc;
    SplittingScenario scenario;
};

Loaded load(const std::string& file) {
    auto doc = io::load_document(std::string(ORBIDEGEN_DATA_DIR) + "/" + file);
    auto s = doc.scenarios.at(0).scenario;
    return {std::move(doc), s};
}

std::vector<Term> run(const Loaded& l, ExpandOptions opt = {}) {
    return expand::expand(l.scenario, *l.doc.basis, *l.doc.homology, opt);
}

}  // namespace

TEST_SUITE("expand") {

TEST_CASE("gluing degrees") {
    auto d = gluing_degrees({ContactOrder(2, 1), ContactOrder(3, 1)});
    CHECK(d.kappa == 6);
    CHECK(d.ell == Rational(6));
    auto r = gluing_bundle_report({ContactOrder(2, 1), ContactOrder(3, 1)});
    CHECK(r.exponents == std::vector<std::int64_t>{3, 2});
    auto o = gluing_bundle_report({ContactOrder(3, 2), ContactOrder(1, 3)});
    CHECK(o.kappa == 3);
    CHECK(o.group_order == 6);
    CHECK(o.ell == Rational(1, 2));
}

TEST_CASE("smooth one-node scenario") {
    auto l = load("smooth1.json");
    auto ts = run(l);
    REQUIRE(ts.size() == 3);
    std::set<std::string> seen;
    for (const auto& t : ts) {
        CHECK(t.ell == Rational(2));
        CHECK(t.aut == 1);
        CHECK(t.coefficient == Rational(2));
        REQUIRE(t.I.size() == 1);
        CHECK(t.I_dual[0] == l.doc.basis->dual(t.I[0]));
        seen.insert(t.I[0]);
    }
    CHECK(seen == std::set<std::string>{"1", "H", "H2"});
}

TEST_CASE("degree filter") {
    auto l = load("smooth1.json");
    ExpandOptions opt;
    opt.total_degree = Rational(2);
    auto ts = run(l, opt);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].I[0] == "H");
}

TEST_CASE("duplicated insertions") {
    auto ts = run(load("duplicated.json"));
    REQUIRE(ts.size() == 3);
    int two_node = 0;
    for (const auto& t : ts) {
        CHECK(t.coefficient == Rational(2));
        if (t.I.size() == 2) {
            ++two_node;
            CHECK(t.ell == Rational(1));
            CHECK(t.aut == 2);
        }
    }
    CHECK(two_node == 2);
}

TEST_CASE("Z2 genus-one scenario") {
    auto l = load("z2_scenario.json");
    auto sp = enumerate_splittings(l.scenario, *l.doc.homology);
    CHECK_FALSE(sp.incomplete);
    CHECK(sp.splittings.size() == 10);
    auto ts = run(l);
    REQUIRE(ts.size() == 14);
    // one node: 2 genus splits x 2 marked-point sides x (2 untwisted + 1 twisted) insertions
    // two nodes: both twisted with contact 1/2, marked point on either side
    std::map<std::size_t, int> by_nodes;
    for (const auto& t : ts) {
        ++by_nodes[t.I.size()];
        if (t.I.size() == 2) {
            CHECK(t.ell == Rational(1, 4));
            CHECK(t.aut == 2);
            CHECK(t.coefficient == Rational(1, 2));
        } else {
            CHECK(t.coefficient == Rational(1));
        }
    }
    CHECK(by_nodes[1] == 12);
    CHECK(by_nodes[2] == 2);
}

TEST_CASE("side swap is an involution") {
    for (const auto* f : {"smooth1.json", "duplicated.json", "z2_scenario.json"}) {
        CAPTURE(f);
        auto ts = run(load(f));
        auto once = side_swap(ts);
        auto twice = side_swap(once);
        sort_terms(twice);
        CHECK(twice == ts);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            CHECK(serialize(twice[i]) == serialize(ts[i]));
        }
    }
}

TEST_CASE("swapped scenario expands to the swapped terms") {
    auto l = load("z2_scenario.json");
    auto ts = run(l);
    auto swapped = side_swap(ts);
    sort_terms(swapped);
    Loaded r = l;
    r.scenario = swap_sides(l.scenario);
    auto direct = run(r);
    REQUIRE(direct.size() == swapped.size());
    for (std::size_t i = 0; i < direct.size(); ++i) CHECK(serialize(direct[i]) == serialize(swapped[i]));
}

TEST_CASE("result cap") {
    auto l = load("z2_scenario.json");
    l.scenario.max_results = 3;
    CHECK(enumerate_splittings(l.scenario, *l.doc.homology).incomplete);
    CHECK_THROWS_AS(run(l), ResourceError);
}

TEST_CASE("basis validation") {
    auto menu = inertia::ClassMenu::trivial();
    CHECK_THROWS_AS(CRBasisZ({{"a", "0", Rational(0)}}, {}, 0, menu), ValidationError);
    CHECK_THROWS_AS(CRBasisZ({{"a", "0", Rational(0)}, {"b", "0", Rational(1)}}, {{"a", "b"}}, 0, menu),
                    ValidationError);
    CHECK_THROWS_AS(CRBasisZ({{"a", "5", Rational(0)}}, {{"a", "a"}}, 0, menu), ValidationError);
    CRBasisZ ok({{"a", "0", Rational(0)}, {"b", "0", Rational(2)}}, {{"a", "b"}}, 1, menu);
    CHECK(ok.dual("a") == "b");
    CHECK(ok.on_sector("0").size() == 2);
}

}
