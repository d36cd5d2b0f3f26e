#pragma once

// Five fixed poset scenarios, each given both as library input and as an
// oracle problem.

#include <string>
#include <vector>

#include "oracles.hpp"
#include "orbidegen/graph.hpp"
#include "orbidegen/inertia.hpp"

namespace oracle {

struct PosetScenario {
    std::string name;
    og::RelGraph top;
    og::GraphContext ctx;
    og::PosetBounds bounds;
    PosetProblem problem;
};

inline std::vector<PosetScenario> poset_scenarios() {
    using orbidegen::contact::ContactOrder;
    using orbidegen::inertia::ClassMenu;
    auto homology = [](int max) {
        std::vector<og::ClassVector> eff;
        for (int i = 0; i <= max; ++i) eff.push_back({i});
        return og::HomologyModel(1, {Rational(2)}, {Rational(1)}, eff);
    };
    auto rel_tail = [](const std::string& label, const std::string& h, std::int64_t k, std::int64_t r) {
        return og::Tail{0, og::Kind::relative, h, ContactOrder(k, r), label};
    };
    auto abs_tail = [](const std::string& label, const std::string& h) {
        return og::Tail{0, og::Kind::absolute, h, std::nullopt, label};
    };
    auto make = [&](std::string name, std::int64_t g, std::int64_t a, std::vector<og::Tail> tails, int max_class,
                    int max_vertices, int max_levels, bool z2) {
        PosetScenario s{std::move(name), {}, {homology(max_class)}, {}, {}};
        s.top.vertices.push_back({g, {a}, 0});
        s.top.tails = std::move(tails);
        s.bounds.max_vertices = max_vertices;
        s.bounds.max_levels = max_levels;
        if (z2) {
            s.ctx.absolute = ClassMenu({{"0", 1, "0"}, {"1", 2, "1"}});
            s.ctx.relative = s.ctx.absolute;
            s.problem.absolute = {{"0", 1, "0"}, {"1", 2, "1"}};
            s.problem.relative = s.problem.absolute;
        }
        s.problem.genus = g;
        s.problem.cls = {a};
        s.problem.tails = s.top.tails;
        s.problem.effective = s.ctx.homology.effective();
        s.problem.z = s.ctx.homology.z_pairing();
        s.problem.max_vertices = max_vertices;
        s.problem.max_levels = max_levels;
        return s;
    };
    return {
        make("g0_A1_one_tail", 0, 1, {rel_tail("q1", "0", 1, 1)}, 2, 3, 2, false),
        make("g1_A1_marked", 1, 1, {rel_tail("q1", "0", 1, 1), abs_tail("p1", "0")}, 1, 2, 2, false),
        make("g0_A2_two_tails", 0, 2, {rel_tail("q1", "0", 1, 1), rel_tail("q2", "0", 1, 1)}, 2, 3, 2, false),
        make("g1_A0_absolute", 1, 0, {}, 0, 3, 1, false),
        make("z2_g0_A1", 0, 1, {rel_tail("q1", "1", 1, 2), rel_tail("q2", "1", 1, 2)}, 1, 2, 2, true),
    };
}

}  // namespace oracle
