#include "orbidegen/dimension.hpp"

#include "orbidegen/errors.hpp"

namespace orbidegen::dimension {

std::string to_string(Flavor f) {
    switch (f) {
    case Flavor::absolute_smooth: return "absolute-smooth";
    case Flavor::relative_smooth: return "relative-smooth";
    case Flavor::absolute_orbifold: return "absolute-orbifold";
    case Flavor::relative_orbifold: return "relative-orbifold";
    }
    return "?";
}

Flavor parse_flavor(const std::string& text) {
    for (auto f : {Flavor::absolute_smooth, Flavor::relative_smooth, Flavor::absolute_orbifold,
                   Flavor::relative_orbifold}) {
        if (to_string(f) == text) return f;
    }
    throw ValidationError("unknown moduli flavor '" + text + "'");
}

namespace {

bool is_relative(Flavor f) { return f == Flavor::relative_smooth || f == Flavor::relative_orbifold; }
bool is_smooth(Flavor f) { return f == Flavor::absolute_smooth || f == Flavor::relative_smooth; }

}  // namespace

void check(const ModuliSpec& spec) {
    const auto flavor = to_string(spec.flavor);
    if (spec.n < 1) throw ValidationError(flavor + ": ambient dimension must be positive");
    if (!is_relative(spec.flavor) && !spec.rel_insertions.empty()) {
        throw ValidationError(flavor + ": absolute moduli take no relative insertions");
    }
    if (is_smooth(spec.flavor)) {
        for (const auto& a : spec.insertions) {
            if (a.shift != Rational(0)) throw ValidationError(flavor + ": smooth insertions carry no shift");
        }
        for (const auto& r : spec.rel_insertions) {
            if (r.shift != Rational(0) || r.order.r() != 1) {
                throw ValidationError(flavor + ": smooth contact orders must be integers with trivial monodromy");
            }
        }
    }
    if (is_relative(spec.flavor)) {
        if (spec.rel_insertions.empty()) {
            throw ValidationError(flavor + ": relative moduli need at least one relative insertion");
        }
        Rational total(0);
        for (const auto& r : spec.rel_insertions) total += r.order.value();
        if (total != spec.zA) {
            throw ValidationError(flavor + ": contact orders sum to " + orbidegen::to_string(total) +
                                  " but Z.A = " + orbidegen::to_string(spec.zA));
        }
    }
}

Rational virdim(const ModuliSpec& spec) {
    check(spec);
    const auto m = static_cast<std::int64_t>(spec.insertions.size());
    const auto k = static_cast<std::int64_t>(spec.rel_insertions.size());
    Rational d = spec.c1A + Rational((3 - spec.n) * (spec.g - 1) + m);

    switch (spec.flavor) {
    case Flavor::absolute_smooth:
        break;
    case Flavor::relative_smooth:
        d += Rational(k);
        for (const auto& r : spec.rel_insertions) d -= r.order.value();
        break;
    case Flavor::absolute_orbifold:
        for (const auto& a : spec.insertions) d -= a.shift;
        break;
    case Flavor::relative_orbifold:
        d += Rational(k);
        for (const auto& a : spec.insertions) d -= a.shift;
        for (const auto& r : spec.rel_insertions) {
            d -= r.shift;
            d -= Rational(contact::floor_bracket(r.order.value()));
        }
        break;
    }
    return d;
}

Ledger splitting_ledger(const ModuliSpec& plus, const ModuliSpec& minus,
                        const std::vector<Rational>& matched_sector_dims, const ModuliSpec& total,
                        const inertia::ClassMenu& menu) {
    const auto& a = plus.rel_insertions;
    const auto& b = minus.rel_insertions;
    if (a.size() != b.size()) {
        throw ValidationError("sides carry " + std::to_string(a.size()) + " and " +
                              std::to_string(b.size()) + " relative insertions");
    }
    if (matched_sector_dims.size() != a.size()) {
        throw ValidationError("expected one matched sector dimension per node");
    }
    for (std::size_t j = 0; j < a.size(); ++j) {
        const auto node = "node " + std::to_string(j);
        if (a[j].order.value() != b[j].order.value()) {
            throw ValidationError(node + ": contact orders differ across the node");
        }
        if (!menu.mutually_inverse(a[j].monodromy, b[j].monodromy)) {
            throw ValidationError(node + ": monodromies (" + a[j].monodromy + "),(" +
                                  b[j].monodromy + ") are not mutually inverse");
        }
    }

    Ledger l;
    l.d_plus = virdim(plus);
    l.d_minus = virdim(minus);
    l.d_total = virdim(total);
    l.constraint_dims = matched_sector_dims;
    l.defect = l.d_plus + l.d_minus - sum(l.constraint_dims) - l.d_total;
    return l;
}

}  // namespace orbidegen::dimension
