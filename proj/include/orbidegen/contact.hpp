#pragma once

// Fractional contact orders k/r and the combinatorics of relative insertions.

#include <cstdint>
#include <string>
#include <vector>

#include "orbidegen/rational.hpp"

namespace orbidegen::contact {

/// Contact order l = k/r: k is the lowest nonzero degree of the normal
/// component of the local lift, r the order of the monodromy. k/r is not
/// reduced, so (2,2) and (1,1) are different orders with the same value.
class ContactOrder {
public:
    ContactOrder(std::int64_t k, std::int64_t r);

    std::int64_t k() const noexcept { return k_; }
    std::int64_t r() const noexcept { return r_; }
    Rational value() const { return Rational(k_, r_); }

    auto operator<=>(const ContactOrder&) const = default;

private:
    std::int64_t k_;
    std::int64_t r_;
};

std::string to_string(const ContactOrder& c);

struct RelInsertion {
    ContactOrder order;
    std::string monodromy;
    std::string basis_label;

    bool operator==(const RelInsertion&) const = default;
};

/// floor(l). At integers the bracket is the integer itself.
std::int64_t floor_bracket(const Rational& l);

struct ContactSumReport {
    bool ok = false;
    Rational sum;
};

ContactSumReport contact_sum_check(const std::vector<ContactOrder>& orders, const Rational& total);

/// Ordered tuples (l_1..l_k) with l_j in (1/r_j)Z_{>0} summing to total,
/// in lexicographic order of the values. Infeasible totals give an empty list.
std::vector<std::vector<ContactOrder>> enumerate_partitions(const Rational& total,
                                                            const std::vector<std::int64_t>& slot_orders);

/// Order of the group of permutations preserving every (l, h, beta) triple:
/// the product of multiplicity factorials.
std::int64_t aut_order(const std::vector<RelInsertion>& insertions);

/// Degree of the smoothing-parameter cover at an orbifold node of multiplicity r.
std::int64_t branch_cover_degree(std::int64_t r);

}  // namespace orbidegen::contact
