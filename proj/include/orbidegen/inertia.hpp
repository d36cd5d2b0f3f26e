#pragma once

// Finite local groups, their conjugacy classes, twisted-sector data and the
// Chen-Ruan degree bookkeeping built on them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbidegen/rational.hpp"

namespace orbidegen::inertia {

using Element = int;

/// A finite group given extensionally by its multiplication table.
/// The constructor checks closure, associativity, the unit and inverses.
class FiniteGroupTable {
public:
    static constexpr int kDefaultMaxOrder = 64;

    explicit FiniteGroupTable(std::vector<std::vector<Element>> table,
                              int max_order = kDefaultMaxOrder);

    static FiniteGroupTable cyclic(int n);
    /// Symmetric group on n letters, n <= 4; elements in lexicographic
    /// order of their one-line notation (element 0 is the identity).
    static FiniteGroupTable symmetric(int n);
    static FiniteGroupTable direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b);

    int order() const noexcept { return order_; }
    Element identity() const noexcept { return identity_; }
    Element mul(Element a, Element b) const { return table_[index(a, b)]; }
    Element inverse(Element a) const { return inverses_.at(static_cast<std::size_t>(a)); }
    int element_order(Element a) const;

    bool operator==(const FiniteGroupTable&) const = default;

private:
    std::size_t index(Element a, Element b) const {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(order_) +
               static_cast<std::size_t>(b);
    }

    int order_ = 0;
    Element identity_ = 0;
    std::vector<Element> table_;
    std::vector<Element> inverses_;
};

struct ConjugacyClass {
    Element representative = 0;   // smallest member
    std::vector<Element> members; // sorted
    int ord = 1;

    bool operator==(const ConjugacyClass&) const = default;
};

/// Classes partition the group; the identity class comes first, the rest
/// are ordered by representative.
std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroupTable& group);

/// The class of inverses of members of c (the involution (g) -> (g^-1)).
ConjugacyClass inverse_class(const FiniteGroupTable& group, const ConjugacyClass& c);

/// Index into `classes` of the inverse class of classes[i].
std::size_t inverse_class_index(const FiniteGroupTable& group,
                                const std::vector<ConjugacyClass>& classes, std::size_t i);

/// Sum of rotation numbers. Throws ValidationError if any lies outside [0, 1).
Rational degree_shift(std::span<const Rational> rotations);

struct SectorDatum {
    std::size_t class_index = 0;
    std::vector<Rational> rotations;
    Rational shift;   // always degree_shift(rotations)
    int sector_dim = 0;
    std::map<int, std::int64_t> betti;
};

struct SectorInput {
    Element class_rep = 0;  // any member of the class
    std::vector<Rational> rotations;
    std::map<int, std::int64_t> betti;
    std::optional<int> sector_dim;  // checked against the rotations when present
};

struct PairingViolation {
    std::size_t class_index = 0;
    Element representative = 0;
    int degree = 0;
    std::string reason;

    std::string describe() const;
};

struct PairingReport {
    std::vector<PairingViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Rotation data and Betti tables for every sector of a global quotient
/// chart of complex dimension n. Construction validates everything local
/// to a single sector; cross-sector consistency is what pairing_check
/// inspects.
class CRProfile {
public:
    CRProfile(FiniteGroupTable group, int ambient_dim, std::vector<SectorInput> sectors);

    const FiniteGroupTable& group() const noexcept { return group_; }
    const std::vector<ConjugacyClass>& classes() const noexcept { return classes_; }
    /// Indexed like classes().
    const std::vector<SectorDatum>& sectors() const noexcept { return sectors_; }
    int ambient_dim() const noexcept { return ambient_dim_; }

    std::size_t inverse_index(std::size_t class_index) const;
    std::size_t class_of(Element g) const;

private:
    FiniteGroupTable group_;
    int ambient_dim_;
    std::vector<ConjugacyClass> classes_;
    std::vector<SectorDatum> sectors_;
};

PairingReport pairing_check(const CRProfile& profile);

/// Betti tables shifted to Chen-Ruan degrees d + 2*shift, merged by degree
/// and sorted. Throws ValidationError when pairing_check reports anything.
std::vector<std::pair<Rational, std::int64_t>> cr_poincare_polynomial(const CRProfile& profile);

/// A monodromy label usable on graph half-edges and tails.
struct ClassLabel {
    std::string label;
    int order = 1;
    std::string inverse;

    bool operator==(const ClassLabel&) const = default;
};

/// Finite menu of conjugacy-class labels closed under inversion.
class ClassMenu {
public:
    explicit ClassMenu(std::vector<ClassLabel> labels);

    /// Single label "0" of order 1.
    static ClassMenu trivial();
    /// Labels are the decimal representatives of conjugacy_classes(group).
    static ClassMenu from_group(const FiniteGroupTable& group);

    const std::vector<ClassLabel>& labels() const noexcept { return labels_; }
    bool contains(const std::string& label) const;
    const ClassLabel& at(const std::string& label) const;
    int order(const std::string& label) const { return at(label).order; }
    const std::string& inverse(const std::string& label) const { return at(label).inverse; }
    bool mutually_inverse(const std::string& a, const std::string& b) const;

    bool operator==(const ClassMenu&) const = default;

private:
    std::vector<ClassLabel> labels_;
};

}  // namespace orbidegen::inertia
