#pragma once

// Term-level expansion of the degeneration formula: splittings of a
// connected graph into a plus and a minus side glued along relative nodes,
// node insertions from a dual basis of the divisor's CR cohomology, and the
// coefficient l(Gamma) * |Aut(T(Gamma, b^I))| of every term.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbidegen/contact.hpp"
#include "orbidegen/graph.hpp"
#include "orbidegen/inertia.hpp"
#include "orbidegen/rational.hpp"

namespace orbidegen::expand {

struct BasisEntry {
    std::string label;
    std::string sector;
    Rational cr_degree;

    bool operator==(const BasisEntry&) const = default;
};

/// Graded basis of H*_CR(Z) together with its dual basis, given as a
/// perfect matching of entry labels (a label may be its own dual).
class CRBasisZ {
public:
    CRBasisZ(std::vector<BasisEntry> entries, std::vector<std::pair<std::string, std::string>> duality,
             int z_dim, const inertia::ClassMenu& menu);

    const std::vector<BasisEntry>& entries() const noexcept { return entries_; }
    const std::vector<std::pair<std::string, std::string>>& duality() const noexcept { return duality_; }
    int z_dim() const noexcept { return z_dim_; }

    const BasisEntry& at(const std::string& label) const;
    const std::string& dual(const std::string& label) const;
    /// Labels of entries living on `sector`, in input order.
    std::vector<std::string> on_sector(const std::string& sector) const;

private:
    std::vector<BasisEntry> entries_;
    std::vector<std::pair<std::string, std::string>> duality_;
    std::vector<std::size_t> partner_;
    int z_dim_;
};

struct MarkedPoint {
    std::string label;
    std::string sector = "0";

    bool operator==(const MarkedPoint&) const = default;
};

struct SplittingScenario {
    std::int64_t genus = 0;
    std::vector<MarkedPoint> insertions;
    std::vector<std::pair<graph::ClassVector, graph::ClassVector>> class_splittings;
    int max_nodes = 0;
    inertia::ClassMenu monodromy_menu = inertia::ClassMenu::trivial();
    inertia::ClassMenu absolute_menu = inertia::ClassMenu::trivial();
    Rational zA;
    std::size_t max_results = 100000;
};

/// The scenario with the plus and minus sides exchanged.
SplittingScenario swap_sides(const SplittingScenario& s);

struct NodeMatch {
    std::size_t plus_vertex = 0;
    std::size_t minus_vertex = 0;
    contact::ContactOrder order{1, 1};
    std::string plus_monodromy;
    std::string minus_monodromy;

    bool operator==(const NodeMatch&) const = default;
};

inline constexpr int kPlusLevel = 1;
inline constexpr int kMinusLevel = -1;

/// One degenerate configuration. `glued` is canonical: plus vertices sit at
/// level +1, minus vertices at level -1, and each relative edge is a node.
/// In `plus` and `minus` node j appears as the relative tail "n<j+1>".
struct Splitting {
    graph::RelGraph glued;
    std::string key;
    graph::RelGraph plus;
    graph::RelGraph minus;
    std::vector<NodeMatch> nodes;
    graph::ClassVector class_plus;
    graph::ClassVector class_minus;
};

struct SplittingResult {
    std::vector<Splitting> splittings;
    bool incomplete = false;
};

/// Rebuilds the sides and node list from a canonical glued graph.
Splitting splitting_from_glued(const graph::RelGraph& glued, std::size_t rank);

SplittingResult enumerate_splittings(const SplittingScenario& s, const graph::HomologyModel& h);

struct GluingDegrees {
    std::int64_t kappa = 1;
    Rational ell;
};

/// kappa = prod k_i and l = prod (k_i / r_i).
GluingDegrees gluing_degrees(const std::vector<contact::ContactOrder>& orders);

struct GluingBundleReport {
    std::int64_t kappa = 1;
    std::vector<std::int64_t> exponents;  // kappa / k_i
    std::int64_t group_order = 1;         // prod r_i
    Rational ell;                         // kappa / group_order
};

GluingBundleReport gluing_bundle_report(const std::vector<contact::ContactOrder>& orders);

struct Term {
    graph::RelGraph glued;  // canonical, shared by all terms of one splitting
    std::string glued_key;
    graph::RelGraph gamma_plus;
    graph::RelGraph gamma_minus;
    std::vector<std::string> I;       // b_{i_j}, inserted on the minus side
    std::vector<std::string> I_dual;  // b^{i_j}, inserted on the plus side
    Rational ell;
    std::int64_t aut = 1;
    Rational coefficient;

    bool operator==(const Term&) const = default;
};

/// Canonical one-line text record, identical for equal terms.
std::string serialize(const Term& t);

struct ExpandOptions {
    /// Keep only tuples whose minus-side labels have this total CR degree.
    std::optional<Rational> total_degree;
};

std::vector<Term> expand(const SplittingScenario& s, const CRBasisZ& basis,
                         const graph::HomologyModel& h, const ExpandOptions& options = {});

/// Exchanges the two sides of every term and replaces I by its dual tuple.
std::vector<Term> side_swap(const std::vector<Term>& terms);

/// Sorts by (glued key, I).
void sort_terms(std::vector<Term>& terms);

}  // namespace orbidegen::expand
