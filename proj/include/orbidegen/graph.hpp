#pragma once

// Decorated relative dual graphs: validation, genus and class, the two
// contraction moves, canonical forms and the stratification poset.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbidegen/contact.hpp"
#include "orbidegen/inertia.hpp"
#include "orbidegen/rational.hpp"

namespace orbidegen::graph {

using ClassVector = std::vector<std::int64_t>;

std::string to_string(const ClassVector& v);

/// Linear functionals c1 and Z. on H_2, plus the finite list of classes a
/// vertex may carry.
class HomologyModel {
public:
    HomologyModel(std::size_t rank, std::vector<Rational> c1, std::vector<Rational> z_pairing,
                  std::vector<ClassVector> effective);

    std::size_t rank() const noexcept { return rank_; }
    const std::vector<Rational>& c1() const noexcept { return c1_; }
    const std::vector<Rational>& z_pairing() const noexcept { return z_pairing_; }
    const std::vector<ClassVector>& effective() const noexcept { return effective_; }

    Rational c1_of(const ClassVector& a) const;
    Rational z_of(const ClassVector& a) const;
    bool is_effective(const ClassVector& a) const;
    ClassVector zero() const { return ClassVector(rank_, 0); }

    bool operator==(const HomologyModel&) const = default;

private:
    std::size_t rank_;
    std::vector<Rational> c1_;
    std::vector<Rational> z_pairing_;
    std::vector<ClassVector> effective_;  // sorted, deduplicated
};

enum class Kind { absolute, relative };

struct Vertex {
    std::int64_t genus = 0;
    ClassVector cls;
    int level = 0;

    bool operator==(const Vertex&) const = default;
};

/// half_a decorates the end at vertex a, half_b the end at b.
struct Edge {
    Kind kind = Kind::absolute;
    std::size_t a = 0;
    std::size_t b = 0;
    std::string half_a = "0";
    std::string half_b = "0";
    std::optional<contact::ContactOrder> contact;

    bool is_loop() const noexcept { return a == b; }
    bool operator==(const Edge&) const = default;
};

struct Tail {
    std::size_t vertex = 0;
    Kind kind = Kind::absolute;
    std::string monodromy = "0";
    std::optional<contact::ContactOrder> contact;
    std::string label;

    bool operator==(const Tail&) const = default;
};

struct RelGraph {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Tail> tails;

    bool operator==(const RelGraph&) const = default;
};

/// Homology plus the label menus for absolute (G) and relative (Z) decorations.
struct GraphContext {
    HomologyModel homology;
    inertia::ClassMenu absolute = inertia::ClassMenu::trivial();
    inertia::ClassMenu relative = inertia::ClassMenu::trivial();
};

struct Diagnostic {
    std::string rule;
    std::string where;
    std::string message;

    std::string describe() const { return rule + " @ " + where + ": " + message; }
};

/// All rule violations; empty iff the graph is valid. Connectivity is not
/// required, so disconnected graphs validate component by component.
std::vector<Diagnostic> validate(const RelGraph& g, const GraphContext& ctx);
std::vector<Diagnostic> validate(const RelGraph& g, const HomologyModel& h);

std::size_t component_count(const RelGraph& g);
bool is_connected(const RelGraph& g);

/// dim H^1 + sum of vertex genera. Throws ValidationError for disconnected input.
std::int64_t genus(const RelGraph& g);

/// Sum over components of their genus minus (#components - 1). The empty
/// graph has bullet genus 1, the unit for gluing along nodes.
std::int64_t bullet_genus(const RelGraph& g);

ClassVector total_class(const RelGraph& g);

/// Contracts one absolute edge (a self-loop adds one to the genus).
RelGraph contract_edge(const RelGraph& g, std::size_t edge);

/// Collapses levels i and i+1: every relative edge between them is
/// contracted, cycles are absorbed into genus and higher levels drop by one.
RelGraph contract_level(const RelGraph& g, int level);

struct CanonicalForm {
    RelGraph graph;
    std::string key;
    std::int64_t automorphisms = 1;
    std::vector<std::size_t> vertex_order;  // new position -> original vertex
    std::vector<std::size_t> edge_order;    // new position -> original edge
    std::vector<std::size_t> tail_order;    // new position -> original tail
};

inline constexpr std::size_t kMaxCanonicalVertices = 12;

/// Relabels vertices, edges and tails into a representative that depends
/// only on the isomorphism class. Throws ResourceError past 12 vertices or
/// when the residual permutation search is too large.
CanonicalForm canonical_form(const RelGraph& g);

/// Number of vertex permutations preserving every decoration.
std::int64_t automorphism_order(const RelGraph& g);

struct PosetBounds {
    int max_vertices = 3;
    int max_levels = 2;
    std::size_t max_nodes = 20000;
};

struct StratPoset {
    std::vector<RelGraph> nodes;  // canonical forms; nodes[0] is the one-vertex graph
    std::vector<std::string> keys;
    std::vector<std::pair<std::size_t, std::size_t>> covers;  // (finer, coarser)
    bool incomplete = false;
};

/// Every valid connected graph within the bounds that contracts to the
/// given one-vertex graph, with the relation generated by single contractions.
StratPoset stratification_poset(const RelGraph& top, const GraphContext& ctx,
                                const PosetBounds& bounds);

std::string to_dot(const RelGraph& g, const std::string& name = "G");
std::string to_dot(const StratPoset& p, const std::string& name = "P");

}  // namespace orbidegen::graph
