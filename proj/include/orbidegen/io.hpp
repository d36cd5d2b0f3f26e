#pragma once

// JSON documents (schema "orbi-degen/1"): the input document that feeds the
// command line, and to_json/from_json pairs for every emitted result.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "orbidegen/contact.hpp"
#include "orbidegen/dimension.hpp"
#include "orbidegen/expand.hpp"
#include "orbidegen/glue.hpp"
#include "orbidegen/graph.hpp"
#include "orbidegen/inertia.hpp"
#include "orbidegen/rational.hpp"

namespace orbidegen::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "orbi-degen/1";

/// Rational from a JSON string "p/q" or an integer. `where` names the field
/// in error messages.
Rational rational_from(const json& j, const std::string& where);
json rational_to(const Rational& q);

/// Contact orders are written "k/r" without reduction.
contact::ContactOrder contact_from(const json& j, const std::string& where);
json contact_to(const contact::ContactOrder& c);

/// "cyclic:n", "symmetric:n", "product:a*b" or an explicit table.
inertia::FiniteGroupTable group_from(const json& j, const std::string& where);

struct NamedProfile {
    std::string name;
    std::string group;
    inertia::CRProfile profile;
};

struct NamedModuli {
    std::string name;
    dimension::ModuliSpec spec;
};

struct LedgerRequest {
    std::string name;
    std::string plus;
    std::string minus;
    std::string total;
    std::vector<Rational> matched_dims;
};

struct NamedGraph {
    std::string name;
    graph::RelGraph graph;
};

struct NamedScenario {
    std::string name;
    expand::SplittingScenario scenario;
};

/// Everything one input file may carry. Sections are optional; names are
/// unique within a section and every cross-reference is resolved on load.
struct InputDocument {
    std::vector<std::pair<std::string, inertia::FiniteGroupTable>> groups;
    std::vector<NamedProfile> profiles;
    std::optional<graph::HomologyModel> homology;
    inertia::ClassMenu absolute_menu = inertia::ClassMenu::trivial();
    inertia::ClassMenu relative_menu = inertia::ClassMenu::trivial();
    std::vector<NamedGraph> graphs;
    std::vector<NamedScenario> scenarios;
    std::optional<expand::CRBasisZ> basis;
    std::vector<NamedModuli> moduli;
    std::vector<LedgerRequest> ledgers;

    graph::GraphContext context() const;
    const graph::RelGraph& graph(const std::string& name) const;
    const expand::SplittingScenario& scenario(const std::string& name) const;
    const dimension::ModuliSpec& spec(const std::string& name) const;
};

/// Throws ValidationError naming the offending field.
InputDocument parse_document(const json& j);
InputDocument load_document(const std::string& path);

// Graphs --------------------------------------------------------------------

json to_json(const graph::ClassVector& v);
json to_json(const graph::RelGraph& g);
graph::RelGraph graph_from(const json& j, std::size_t rank, const std::string& where);
json to_json(const graph::Diagnostic& d);
json to_json(const graph::StratPoset& p);
graph::StratPoset poset_from(const json& j, std::size_t rank);

// Dimensions ----------------------------------------------------------------

json to_json(const dimension::ModuliSpec& s);
dimension::ModuliSpec moduli_from(const json& j, const std::string& where);
json to_json(const dimension::Ledger& l);
dimension::Ledger ledger_from(const json& j);

// Expansion -----------------------------------------------------------------

json to_json(const expand::Term& t);
expand::Term term_from(const json& j, std::size_t rank);
json terms_to_json(const std::vector<expand::Term>& terms);
std::vector<expand::Term> terms_from(const json& j, std::size_t rank);

// Partitions ----------------------------------------------------------------

json partitions_to_json(const std::vector<std::vector<contact::ContactOrder>>& ps);
std::vector<std::vector<contact::ContactOrder>> partitions_from(const json& j);

// Glue ----------------------------------------------------------------------

json to_json(const glue::DemoReport& r);

/// Wraps a payload with the schema tag and a kind.
json document(const std::string& kind, json payload);

}  // namespace orbidegen::io
