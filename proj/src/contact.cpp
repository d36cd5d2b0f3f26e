#include "orbidegen/contact.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "orbidegen/errors.hpp"

namespace orbidegen::contact {

ContactOrder::ContactOrder(std::int64_t k, std::int64_t r) : k_(k), r_(r) {
    if (k < 1 || r < 1) {
        throw DomainError("contact order needs k >= 1 and r >= 1, got " + std::to_string(k) +
                          "/" + std::to_string(r));
    }
}

std::string to_string(const ContactOrder& c) {
    return std::to_string(c.k()) + "/" + std::to_string(c.r());
}

std::int64_t floor_bracket(const Rational& l) {
    if (l <= Rational(0)) throw DomainError("bracket of non-positive contact order " + orbidegen::to_string(l));
    return floor(l);
}

ContactSumReport contact_sum_check(const std::vector<ContactOrder>& orders, const Rational& total) {
    Rational s(0);
    for (const auto& c : orders) s += c.value();
    return {s == total, s};
}

namespace {

void extend(const Rational& remaining, const std::vector<std::int64_t>& slots, std::size_t j,
            std::int64_t cap, std::vector<ContactOrder>& prefix,
            std::vector<std::vector<ContactOrder>>& out) {
    const auto r = slots[j];
    if (j + 1 == slots.size()) {
        const Rational k = remaining * r;
        if (is_integer(k) && k.numerator() >= 1 && k.numerator() <= cap) {
            prefix.emplace_back(k.numerator(), r);
            out.push_back(prefix);
            prefix.pop_back();
        }
        return;
    }
    for (std::int64_t k = 1; k <= cap; ++k) {
        const Rational l(k, r);
        if (l >= remaining) break;
        prefix.emplace_back(k, r);
        extend(remaining - l, slots, j + 1, cap, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<std::vector<ContactOrder>> enumerate_partitions(const Rational& total,
                                                            const std::vector<std::int64_t>& slot_orders) {
    if (total <= Rational(0)) throw DomainError("partition total must be positive");
    std::int64_t max_r = 1;
    for (auto r : slot_orders) {
        if (r < 1) throw DomainError("slot orders must be positive");
        max_r = std::max(max_r, r);
    }
    std::vector<std::vector<ContactOrder>> out;
    if (slot_orders.empty()) return out;
    // numerators never exceed total * max(r)
    const std::int64_t cap = floor(total * max_r);
    std::vector<ContactOrder> prefix;
    prefix.reserve(slot_orders.size());
    extend(total, slot_orders, 0, cap, prefix, out);
    return out;
}

std::int64_t aut_order(const std::vector<RelInsertion>& insertions) {
    std::map<std::tuple<Rational, std::string, std::string>, int> counts;
    for (const auto& ins : insertions) {
        ++counts[{ins.order.value(), ins.monodromy, ins.basis_label}];
    }
    std::int64_t out = 1;
    for (const auto& [_, m] : counts) out *= factorial(m);
    return out;
}

std::int64_t branch_cover_degree(std::int64_t r) {
    if (r < 1) throw DomainError("node multiplicity must be positive");
    return r;
}

}  // namespace orbidegen::contact
