#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbidegen/contact.hpp"
#include "orbidegen/inertia.hpp"
#include "orbidegen/rational.hpp"

namespace orbidegen::dimension {

enum class Flavor { absolute_smooth, relative_smooth, absolute_orbifold, relative_orbifold };

std::string to_string(Flavor f);
Flavor parse_flavor(const std::string& text);

struct AbsoluteInsertion {
    std::string sector;
    Rational shift;

    bool operator==(const AbsoluteInsertion&) const = default;
};

struct RelativeInsertion {
    contact::ContactOrder order;
    std::string monodromy;
    Rational shift;

    bool operator==(const RelativeInsertion&) const = default;
};

/// Inputs of the complex virtual dimension. m is insertions.size() and k
/// is rel_insertions.size(). The genus may be negative for the bullet
/// genus of a disconnected side.
struct ModuliSpec {
    Flavor flavor = Flavor::absolute_smooth;
    int n = 1;
    std::int64_t g = 0;
    std::vector<AbsoluteInsertion> insertions;
    std::vector<RelativeInsertion> rel_insertions;
    Rational c1A;
    Rational zA;

    bool operator==(const ModuliSpec&) const = default;
};

/// Throws ValidationError when the data does not fit the flavor.
void check(const ModuliSpec& spec);

Rational virdim(const ModuliSpec& spec);

struct Ledger {
    Rational d_total;
    Rational d_plus;
    Rational d_minus;
    std::vector<Rational> constraint_dims;
    Rational defect;  // d_plus + d_minus - sum(constraint_dims) - d_total
};

/// Dimension bookkeeping for the fibre product over the matched relative
/// sectors. Node j pairs plus.rel_insertions[j] with minus.rel_insertions[j];
/// `menu` supplies the inverse of each monodromy label.
Ledger splitting_ledger(const ModuliSpec& plus, const ModuliSpec& minus,
                        const std::vector<Rational>& matched_sector_dims, const ModuliSpec& total,
                        const inertia::ClassMenu& menu = inertia::ClassMenu::trivial());

}  // namespace orbidegen::dimension
