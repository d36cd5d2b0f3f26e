#include "doctest.h"

#include "../oracles/poset_scenarios.hpp"
#include "orbidegen/errors.hpp"
#include "orbidegen/graph.hpp"

using namespace orbidegen;
using namespace orbidegen::graph;

TEST_SUITE("poset") {

TEST_CASE("node and cover counts match exhaustive search") {
    for (const auto& s : oracle::poset_scenarios()) {
        CAPTURE(s.name);
        auto p = stratification_poset(s.top, s.ctx, s.bounds);
        auto o = oracle::poset_counts(s.problem);
        CHECK_FALSE(p.incomplete);
        CHECK(p.nodes.size() == o.nodes);
        CHECK(p.covers.size() == o.covers);
    }
}

TEST_CASE("poset structure") {
    auto s = oracle::poset_scenarios()[0];
    auto p = stratification_poset(s.top, s.ctx, s.bounds);
    REQUIRE(!p.nodes.empty());
    CHECK(p.nodes[0].vertices.size() == 1);
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        CHECK(validate(p.nodes[i], s.ctx).empty());
        CHECK(genus(p.nodes[i]) == 0);
        CHECK(total_class(p.nodes[i]) == ClassVector{1});
        CHECK(canonical_form(p.nodes[i]).key == p.keys[i]);
    }
    for (auto [fine, coarse] : p.covers) {
        CHECK(fine != coarse);
        CHECK(p.nodes[coarse].edges.size() < p.nodes[fine].edges.size());
    }
}

TEST_CASE("node cap marks the poset incomplete") {
    auto s = oracle::poset_scenarios()[0];
    s.bounds.max_nodes = 3;
    auto p = stratification_poset(s.top, s.ctx, s.bounds);
    CHECK(p.incomplete);
    CHECK(p.nodes.size() <= 3);
}

TEST_CASE("top graph must be a single valid vertex") {
    auto s = oracle::poset_scenarios()[0];
    s.top.tails.clear();
    CHECK_THROWS_AS(stratification_poset(s.top, s.ctx, s.bounds), ValidationError);
}

}
