#include "orbidegen/inertia.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "orbidegen/errors.hpp"

namespace orbidegen::inertia {

FiniteGroupTable::FiniteGroupTable(std::vector<std::vector<Element>> table, int max_order) {
    const auto n = table.size();
    if (n == 0) throw ValidationError("group table is empty");
    if (n > static_cast<std::size_t>(max_order)) {
        throw ResourceError("group order " + std::to_string(n) + " exceeds cap " +
                            std::to_string(max_order));
    }
    order_ = static_cast<int>(n);
    table_.reserve(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        if (table[a].size() != n) {
            throw ValidationError("group table row " + std::to_string(a) + " has " +
                                  std::to_string(table[a].size()) + " entries, expected " +
                                  std::to_string(n));
        }
        for (std::size_t b = 0; b < n; ++b) {
            const auto v = table[a][b];
            if (v < 0 || v >= order_) {
                throw ValidationError("table entry (" + std::to_string(a) + "," +
                                      std::to_string(b) + ") = " + std::to_string(v) +
                                      " is not an element");
            }
            table_.push_back(v);
        }
    }

    std::optional<Element> unit;
    for (Element e = 0; e < order_ && !unit; ++e) {
        bool two_sided = true;
        for (Element x = 0; x < order_ && two_sided; ++x) {
            two_sided = mul(e, x) == x && mul(x, e) == x;
        }
        if (two_sided) unit = e;
    }
    if (!unit) throw ValidationError("group table has no two-sided identity");
    identity_ = *unit;

    for (Element a = 0; a < order_; ++a) {
        for (Element b = 0; b < order_; ++b) {
            const auto ab = mul(a, b);
            for (Element c = 0; c < order_; ++c) {
                if (mul(ab, c) != mul(a, mul(b, c))) {
                    throw ValidationError("multiplication is not associative on (" +
                                          std::to_string(a) + "," + std::to_string(b) + "," +
                                          std::to_string(c) + ")");
                }
            }
        }
    }

    inverses_.assign(n, -1);
    for (Element a = 0; a < order_; ++a) {
        for (Element b = 0; b < order_; ++b) {
            if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                inverses_[static_cast<std::size_t>(a)] = b;
                break;
            }
        }
        if (inverses_[static_cast<std::size_t>(a)] < 0) {
            throw ValidationError("element " + std::to_string(a) + " has no two-sided inverse");
        }
    }
}

FiniteGroupTable FiniteGroupTable::cyclic(int n) {
    if (n < 1) throw DomainError("cyclic group order must be positive");
    std::vector<std::vector<Element>> table(static_cast<std::size_t>(n),
                                            std::vector<Element>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    }
    return FiniteGroupTable(std::move(table));
}

FiniteGroupTable FiniteGroupTable::symmetric(int n) {
    if (n < 1 || n > 4) throw DomainError("symmetric groups are provided for 1 <= n <= 4");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    const auto m = perms.size();
    std::vector<std::vector<Element>> table(m, std::vector<Element>(m));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            std::vector<int> comp(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
            auto it = std::lower_bound(perms.begin(), perms.end(), comp);
            table[a][b] = static_cast<Element>(it - perms.begin());
        }
    }
    return FiniteGroupTable(std::move(table));
}

FiniteGroupTable FiniteGroupTable::direct_product(const FiniteGroupTable& a,
                                                  const FiniteGroupTable& b) {
    const int n = a.order() * b.order();
    std::vector<std::vector<Element>> table(static_cast<std::size_t>(n),
                                            std::vector<Element>(static_cast<std::size_t>(n)));
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const auto first = a.mul(x / b.order(), y / b.order());
            const auto second = b.mul(x % b.order(), y % b.order());
            table[x][y] = first * b.order() + second;
        }
    }
    return FiniteGroupTable(std::move(table), std::max(n, kDefaultMaxOrder));
}

int FiniteGroupTable::element_order(Element a) const {
    int k = 1;
    for (Element p = a; p != identity_; p = mul(p, a)) ++k;
    return k;
}

std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroupTable& group) {
    const int n = group.order();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<ConjugacyClass> out;
    for (Element g = 0; g < n; ++g) {
        if (seen[g]) continue;
        std::set<Element> orbit;
        for (Element x = 0; x < n; ++x) orbit.insert(group.mul(group.mul(x, g), group.inverse(x)));
        ConjugacyClass c;
        c.members.assign(orbit.begin(), orbit.end());
        c.representative = c.members.front();
        c.ord = group.element_order(g);
        for (auto m : c.members) seen[m] = true;
        out.push_back(std::move(c));
    }
    std::stable_partition(out.begin(), out.end(), [&](const ConjugacyClass& c) {
        return c.representative == group.identity();
    });
    return out;
}

ConjugacyClass inverse_class(const FiniteGroupTable& group, const ConjugacyClass& c) {
    const auto target = group.inverse(c.representative);
    for (auto& cls : conjugacy_classes(group)) {
        if (std::binary_search(cls.members.begin(), cls.members.end(), target)) return cls;
    }
    throw ValidationError("class is not a conjugacy class of the group");
}

std::size_t inverse_class_index(const FiniteGroupTable& group,
                                const std::vector<ConjugacyClass>& classes, std::size_t i) {
    const auto target = group.inverse(classes.at(i).representative);
    for (std::size_t j = 0; j < classes.size(); ++j) {
        const auto& m = classes[j].members;
        if (std::binary_search(m.begin(), m.end(), target)) return j;
    }
    throw ValidationError("class list does not cover the inverse of class " + std::to_string(i));
}

Rational degree_shift(std::span<const Rational> rotations) {
    Rational total(0);
    for (std::size_t i = 0; i < rotations.size(); ++i) {
        const auto& theta = rotations[i];
        if (theta < Rational(0) || theta >= Rational(1)) {
            throw ValidationError("rotation number " + std::to_string(i) + " = " +
                                  to_string(theta) + " is outside [0,1)");
        }
        total += theta;
    }
    return total;
}

std::string PairingViolation::describe() const {
    std::ostringstream os;
    os << "sector (" << representative << ") degree " << degree << ": " << reason;
    return os.str();
}

CRProfile::CRProfile(FiniteGroupTable group, int ambient_dim, std::vector<SectorInput> sectors)
    : group_(std::move(group)), ambient_dim_(ambient_dim), classes_(conjugacy_classes(group_)) {
    if (ambient_dim_ < 1) throw ValidationError("ambient dimension must be positive");

    std::vector<std::optional<SectorDatum>> slots(classes_.size());
    for (auto& in : sectors) {
        if (in.class_rep < 0 || in.class_rep >= group_.order()) {
            throw ValidationError("sector references element " + std::to_string(in.class_rep) +
                                  " outside the group");
        }
        const auto ci = class_of(in.class_rep);
        const auto& cls = classes_[ci];
        const auto where = "sector (" + std::to_string(cls.representative) + ")";
        if (slots[ci]) throw ValidationError(where + " listed twice");
        if (in.rotations.size() != static_cast<std::size_t>(ambient_dim_)) {
            throw ValidationError(where + " has " + std::to_string(in.rotations.size()) +
                                  " rotation numbers, expected " + std::to_string(ambient_dim_));
        }

        SectorDatum s;
        s.class_index = ci;
        try {
            s.shift = degree_shift(in.rotations);
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
        int moving = 0;
        for (const auto& theta : in.rotations) {
            if (cls.ord % theta.denominator() != 0) {
                throw ValidationError(where + ": rotation " + to_string(theta) +
                                      " has denominator not dividing the class order " +
                                      std::to_string(cls.ord));
            }
            if (theta != Rational(0)) ++moving;
        }
        s.sector_dim = ambient_dim_ - moving;
        if (in.sector_dim && *in.sector_dim != s.sector_dim) {
            throw ValidationError(where + ": sector_dim " + std::to_string(*in.sector_dim) +
                                  " disagrees with the rotation data (" +
                                  std::to_string(s.sector_dim) + ")");
        }
        if (cls.representative == group_.identity() && moving != 0) {
            throw ValidationError("untwisted sector must have all rotations zero");
        }
        for (auto [deg, mult] : in.betti) {
            if (deg < 0 || mult < 0) {
                throw ValidationError(where + ": negative Betti degree or multiplicity at " +
                                      std::to_string(deg));
            }
        }
        s.rotations = std::move(in.rotations);
        s.betti = std::move(in.betti);
        slots[ci] = std::move(s);
    }

    sectors_.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i]) {
            throw ValidationError("no sector data for class (" +
                                  std::to_string(classes_[i].representative) + ")");
        }
        sectors_.push_back(std::move(*slots[i]));
    }
}

std::size_t CRProfile::inverse_index(std::size_t class_index) const {
    return inverse_class_index(group_, classes_, class_index);
}

std::size_t CRProfile::class_of(Element g) const {
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        const auto& m = classes_[i].members;
        if (std::binary_search(m.begin(), m.end(), g)) return i;
    }
    throw ValidationError("element " + std::to_string(g) + " is in no class");
}

PairingReport pairing_check(const CRProfile& profile) {
    PairingReport report;
    const int n = profile.ambient_dim();
    for (std::size_t i = 0; i < profile.sectors().size(); ++i) {
        const auto& s = profile.sectors()[i];
        const auto& inv = profile.sectors()[profile.inverse_index(i)];
        const auto rep = profile.classes()[i].representative;
        auto add = [&](int degree, std::string reason) {
            report.violations.push_back({i, rep, degree, std::move(reason)});
        };

        if (s.sector_dim != inv.sector_dim) {
            add(0, "sector dimension " + std::to_string(s.sector_dim) +
                       " differs from the inverse sector's " + std::to_string(inv.sector_dim));
            continue;
        }

        std::vector<Rational> expected;
        for (const auto& theta : s.rotations) {
            expected.push_back(theta == Rational(0) ? Rational(0) : Rational(1) - theta);
        }
        auto actual = inv.rotations;
        std::sort(expected.begin(), expected.end());
        std::sort(actual.begin(), actual.end());
        if (expected != actual) add(0, "inverse sector rotations are not {1 - theta}");

        const Rational shift_sum = s.shift + inv.shift;
        if (shift_sum != Rational(n - s.sector_dim)) {
            add(0, "shift sum " + to_string(shift_sum) + " differs from codimension " +
                       std::to_string(n - s.sector_dim));
        }

        std::set<int> degrees;
        for (auto [d, _] : s.betti) degrees.insert(d);
        for (auto [d, _] : inv.betti) degrees.insert(2 * s.sector_dim - d);
        for (int d : degrees) {
            const auto here = s.betti.contains(d) ? s.betti.at(d) : 0;
            const int dual = 2 * s.sector_dim - d;
            const auto there = inv.betti.contains(dual) ? inv.betti.at(dual) : 0;
            if (here == 0 && there == 0) continue;
            if (here != there) {
                add(d, "Betti number " + std::to_string(here) + " pairs with " +
                           std::to_string(there) + " in degree " + std::to_string(dual) +
                           " of the inverse sector");
                continue;
            }
            const Rational cr = Rational(d) + 2 * s.shift;
            const Rational cr_dual = Rational(dual) + 2 * inv.shift;
            if (cr + cr_dual != Rational(2 * n)) {
                add(d, "paired CR degrees " + to_string(cr) + " and " + to_string(cr_dual) +
                           " do not sum to " + std::to_string(2 * n));
            }
        }
    }
    return report;
}

std::vector<std::pair<Rational, std::int64_t>> cr_poincare_polynomial(const CRProfile& profile) {
    const auto report = pairing_check(profile);
    if (!report.ok()) throw ValidationError(report.violations.front().describe());
    std::map<Rational, std::int64_t> poly;
    for (const auto& s : profile.sectors()) {
        for (auto [d, mult] : s.betti) {
            if (mult == 0) continue;
            poly[Rational(d) + 2 * s.shift] += mult;
        }
    }
    return {poly.begin(), poly.end()};
}

ClassMenu::ClassMenu(std::vector<ClassLabel> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw ValidationError("class menu is empty");
    std::set<std::string> names;
    for (const auto& l : labels_) {
        if (l.order < 1) throw ValidationError("class '" + l.label + "' has non-positive order");
        if (!names.insert(l.label).second) {
            throw ValidationError("duplicate class label '" + l.label + "'");
        }
    }
    for (const auto& l : labels_) {
        if (!names.contains(l.inverse)) {
            throw ValidationError("inverse '" + l.inverse + "' of class '" + l.label +
                                  "' is not in the menu");
        }
        const auto& inv = at(l.inverse);
        if (inv.inverse != l.label || inv.order != l.order) {
            throw ValidationError("class '" + l.label + "' and its inverse '" + l.inverse +
                                  "' are inconsistent");
        }
    }
}

ClassMenu ClassMenu::trivial() { return ClassMenu({{"0", 1, "0"}}); }

ClassMenu ClassMenu::from_group(const FiniteGroupTable& group) {
    const auto classes = conjugacy_classes(group);
    std::vector<ClassLabel> labels;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto j = inverse_class_index(group, classes, i);
        labels.push_back({std::to_string(classes[i].representative), classes[i].ord,
                          std::to_string(classes[j].representative)});
    }
    return ClassMenu(std::move(labels));
}

bool ClassMenu::contains(const std::string& label) const {
    return std::any_of(labels_.begin(), labels_.end(),
                       [&](const ClassLabel& l) { return l.label == label; });
}

const ClassLabel& ClassMenu::at(const std::string& label) const {
    for (const auto& l : labels_) {
        if (l.label == label) return l;
    }
    throw ValidationError("unknown class label '" + label + "'");
}

bool ClassMenu::mutually_inverse(const std::string& a, const std::string& b) const {
    return contains(a) && at(a).inverse == b;
}

}  // namespace orbidegen::inertia
