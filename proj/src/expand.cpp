#include "orbidegen/expand.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "orbidegen/errors.hpp"

namespace orbidegen::expand {

using orbidegen::to_string;

using contact::ContactOrder;
using graph::ClassVector;
using graph::Kind;
using graph::RelGraph;

CRBasisZ::CRBasisZ(std::vector<BasisEntry> entries,
                   std::vector<std::pair<std::string, std::string>> duality, int z_dim,
                   const inertia::ClassMenu& menu)
    : entries_(std::move(entries)), duality_(std::move(duality)), z_dim_(z_dim) {
    if (z_dim_ < 0) throw ValidationError("divisor dimension must be non-negative");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (!index.emplace(e.label, i).second) {
            throw ValidationError("duplicate basis label '" + e.label + "'");
        }
        if (!menu.contains(e.sector)) {
            throw ValidationError("basis entry '" + e.label + "' lives on unknown sector '" +
                                  e.sector + "'");
        }
    }
    partner_.assign(entries_.size(), entries_.size());
    for (const auto& [x, y] : duality_) {
        if (!index.contains(x) || !index.contains(y)) {
            throw ValidationError("duality pair (" + x + "," + y + ") names an unknown label");
        }
        const auto i = index[x];
        const auto j = index[y];
        if (partner_[i] != entries_.size() || partner_[j] != entries_.size()) {
            throw ValidationError("label in duality pair (" + x + "," + y + ") is already paired");
        }
        partner_[i] = j;
        partner_[j] = i;
        const auto& a = entries_[i];
        const auto& b = entries_[j];
        if (!menu.mutually_inverse(a.sector, b.sector)) {
            throw ValidationError("dual entries '" + x + "' and '" + y +
                                  "' do not live on mutually inverse sectors");
        }
        if (a.cr_degree + b.cr_degree != Rational(2 * z_dim_)) {
            throw ValidationError("dual entries '" + x + "' and '" + y + "' have CR degrees summing to " +
                                  to_string(a.cr_degree + b.cr_degree) + ", expected " +
                                  std::to_string(2 * z_dim_));
        }
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (partner_[i] == entries_.size()) {
            throw ValidationError("basis entry '" + entries_[i].label + "' has no dual");
        }
    }
}

const BasisEntry& CRBasisZ::at(const std::string& label) const {
    for (const auto& e : entries_) {
        if (e.label == label) return e;
    }
    throw ValidationError("unknown basis label '" + label + "'");
}

const std::string& CRBasisZ::dual(const std::string& label) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].label == label) return entries_[partner_[i]].label;
    }
    throw ValidationError("unknown basis label '" + label + "'");
}

std::vector<std::string> CRBasisZ::on_sector(const std::string& sector) const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
        if (e.sector == sector) out.push_back(e.label);
    }
    return out;
}

SplittingScenario swap_sides(const SplittingScenario& s) {
    auto out = s;
    for (auto& [plus, minus] : out.class_splittings) std::swap(plus, minus);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

ClassVector add(ClassVector a, const ClassVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

/// All maps items -> [0, targets) hitting every target.
void for_each_surjection(std::size_t items, std::size_t targets,
                         const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> map(items, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == items) {
            std::vector<bool> hit(targets, false);
            for (auto t : map) hit[t] = true;
            if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) f(map);
            return;
        }
        for (std::size_t t = 0; t < targets; ++t) {
            map[i] = t;
            rec(i + 1);
        }
    };
    rec(0);
}

/// Tuples of effective classes, one per vertex, with prescribed Z-pairings
/// and the given sum.
void for_each_class_tuple(const graph::HomologyModel& h, const std::vector<Rational>& z_needed,
                          const ClassVector& total,
                          const std::function<void(const std::vector<ClassVector>&)>& f) {
    const auto n = z_needed.size();
    std::vector<ClassVector> pick(n);
    std::function<void(std::size_t, ClassVector)> rec = [&](std::size_t v, ClassVector partial) {
        if (v == n) {
            if (partial == total) f(pick);
            return;
        }
        for (const auto& c : h.effective()) {
            if (h.z_of(c) != z_needed[v]) continue;
            pick[v] = c;
            rec(v + 1, add(partial, c));
        }
    };
    rec(0, h.zero());
}

void for_each_genus_split(std::size_t n, std::int64_t total,
                          const std::function<void(const std::vector<std::int64_t>&)>& f) {
    std::vector<std::int64_t> gs(n, 0);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t v, std::int64_t left) {
        if (v + 1 == n) {
            gs[v] = left;
            f(gs);
            return;
        }
        for (std::int64_t x = 0; x <= left; ++x) {
            gs[v] = x;
            rec(v + 1, left - x);
        }
    };
    if (n == 0) {
        if (total == 0) f(gs);
        return;
    }
    if (total >= 0) rec(0, total);
}

void for_each_assignment(std::size_t items, std::size_t targets,
                         const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> choice(items, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == items) {
            f(choice);
            return;
        }
        for (std::size_t t = 0; t < targets; ++t) {
            choice[i] = t;
            rec(i + 1);
        }
    };
    if (targets == 0 && items > 0) return;
    rec(0);
}

struct StopEnumeration {};

}  // namespace

Splitting splitting_from_glued(const RelGraph& glued, std::size_t rank) {
    Splitting s;
    s.glued = glued;
    s.class_plus = ClassVector(rank, 0);
    s.class_minus = ClassVector(rank, 0);
    std::vector<std::size_t> side_index(glued.vertices.size());
    for (std::size_t v = 0; v < glued.vertices.size(); ++v) {
        auto x = glued.vertices[v];
        const bool plus = x.level == kPlusLevel;
        if (!plus && x.level != kMinusLevel) throw ValidationError("glued vertex has no side");
        auto& side = plus ? s.plus : s.minus;
        auto& cls = plus ? s.class_plus : s.class_minus;
        cls = add(cls, x.cls);
        x.level = 0;
        side_index[v] = side.vertices.size();
        side.vertices.push_back(std::move(x));
    }
    auto is_plus = [&](std::size_t v) { return glued.vertices[v].level == kPlusLevel; };
    for (std::size_t j = 0; j < glued.edges.size(); ++j) {
        const auto& e = glued.edges[j];
        if (e.kind != Kind::relative || is_plus(e.a) == is_plus(e.b)) {
            throw ValidationError("glued edge " + std::to_string(j) + " is not a node between the sides");
        }
        const bool a_plus = is_plus(e.a);
        NodeMatch m;
        m.plus_vertex = side_index[a_plus ? e.a : e.b];
        m.minus_vertex = side_index[a_plus ? e.b : e.a];
        m.order = *e.contact;
        m.plus_monodromy = a_plus ? e.half_a : e.half_b;
        m.minus_monodromy = a_plus ? e.half_b : e.half_a;
        const auto label = "n" + std::to_string(j + 1);
        s.plus.tails.push_back({m.plus_vertex, Kind::relative, m.plus_monodromy, m.order, label});
        s.minus.tails.push_back({m.minus_vertex, Kind::relative, m.minus_monodromy, m.order, label});
        s.nodes.push_back(std::move(m));
    }
    for (const auto& t : glued.tails) {
        auto u = t;
        u.vertex = side_index[t.vertex];
        (is_plus(t.vertex) ? s.plus : s.minus).tails.push_back(std::move(u));
    }
    return s;
}

SplittingResult enumerate_splittings(const SplittingScenario& s, const graph::HomologyModel& h) {
    if (s.max_nodes < 0) throw ValidationError("max_nodes must be non-negative");
    for (const auto& [plus, minus] : s.class_splittings) {
        if (plus.size() != h.rank() || minus.size() != h.rank()) {
            throw ValidationError("class splitting has the wrong rank");
        }
        if (h.z_of(plus) != s.zA) {
            throw ValidationError("class splitting " + graph::to_string(plus) + " | " +
                                  graph::to_string(minus) + " has Z.A+ = " + to_string(h.z_of(plus)) +
                                  ", expected " + to_string(s.zA));
        }
    }
    for (const auto& p : s.insertions) {
        if (!s.absolute_menu.contains(p.sector)) {
            throw ValidationError("insertion '" + p.label + "' uses unknown sector '" + p.sector + "'");
        }
    }

    std::map<std::string, Splitting> found;
    bool incomplete = false;
    const auto m = s.insertions.size();

    auto record = [&](const RelGraph& glued) {
        auto cf = graph::canonical_form(glued);
        if (found.contains(cf.key)) return;
        auto sp = splitting_from_glued(cf.graph, h.rank());
        sp.key = cf.key;
        found.emplace(cf.key, std::move(sp));
        if (found.size() >= s.max_results) {
            incomplete = true;
            throw StopEnumeration{};
        }
    };

    auto build = [&](std::size_t p, std::size_t q, const std::vector<std::size_t>& plus_of,
                     const std::vector<std::size_t>& minus_of, const std::vector<std::string>& monodromy,
                     const std::vector<ContactOrder>& orders, const std::vector<ClassVector>& plus_cls,
                     const std::vector<ClassVector>& minus_cls, const std::vector<std::int64_t>& genera,
                     const std::vector<std::size_t>& insertion_at) {
        RelGraph g;
        for (std::size_t v = 0; v < p; ++v) g.vertices.push_back({genera[v], plus_cls[v], kPlusLevel});
        for (std::size_t w = 0; w < q; ++w) g.vertices.push_back({genera[p + w], minus_cls[w], kMinusLevel});
        for (std::size_t j = 0; j < orders.size(); ++j) {
            g.edges.push_back({Kind::relative, plus_of[j], p + minus_of[j], monodromy[j],
                               s.monodromy_menu.inverse(monodromy[j]), orders[j]});
        }
        for (std::size_t i = 0; i < m; ++i) {
            g.tails.push_back({insertion_at[i], Kind::absolute, s.insertions[i].sector, std::nullopt,
                               s.insertions[i].label});
        }
        record(g);
    };

    try {
        for (const auto& [class_plus, class_minus] : s.class_splittings) {
            // a single vertex with no nodes
            if (s.zA == Rational(0)) {
                std::vector<std::size_t> all_on_first(m, 0);
                if (class_minus == h.zero() && h.is_effective(class_plus)) {
                    build(1, 0, {}, {}, {}, {}, {class_plus}, {}, {s.genus}, all_on_first);
                }
                if (class_plus == h.zero() && h.is_effective(class_minus)) {
                    build(0, 1, {}, {}, {}, {}, {}, {class_minus}, {s.genus}, all_on_first);
                }
            }
            if (s.zA <= Rational(0)) continue;

            const auto& labels = s.monodromy_menu.labels();
            for (int nn = 1; nn <= s.max_nodes; ++nn) {
                const auto n = static_cast<std::size_t>(nn);
                std::vector<std::size_t> mono_pick(n, 0);
                std::function<void(std::size_t)> mono_rec = [&](std::size_t j) {
                    if (j < n) {
                        for (std::size_t c = 0; c < labels.size(); ++c) {
                            mono_pick[j] = c;
                            mono_rec(j + 1);
                        }
                        return;
                    }
                    std::vector<std::string> monodromy;
                    std::vector<std::int64_t> slot_orders;
                    for (auto c : mono_pick) {
                        monodromy.push_back(labels[c].label);
                        slot_orders.push_back(labels[c].order);
                    }
                    for (const auto& orders : contact::enumerate_partitions(s.zA, slot_orders)) {
                        for (std::size_t p = 1; p <= n; ++p) {
                            for (std::size_t q = 1; p + q <= n + 1; ++q) {
                                const std::int64_t genus_budget =
                                    s.genus - nn + static_cast<std::int64_t>(p + q) - 1;
                                if (genus_budget < 0) continue;
                                for_each_surjection(n, p, [&](const std::vector<std::size_t>& plus_of) {
                                    for_each_surjection(n, q, [&](const std::vector<std::size_t>& minus_of) {
                                        RelGraph shape;
                                        shape.vertices.resize(p + q);
                                        for (std::size_t j = 0; j < n; ++j) {
                                            graph::Edge e;
                                            e.a = plus_of[j];
                                            e.b = p + minus_of[j];
                                            shape.edges.push_back(e);
                                        }
                                        if (!graph::is_connected(shape)) return;
                                        std::vector<Rational> z_plus(p, Rational(0));
                                        std::vector<Rational> z_minus(q, Rational(0));
                                        for (std::size_t j = 0; j < n; ++j) {
                                            z_plus[plus_of[j]] += orders[j].value();
                                            z_minus[minus_of[j]] += orders[j].value();
                                        }
                                        for_each_class_tuple(h, z_plus, class_plus, [&](const std::vector<ClassVector>& pc) {
                                            for_each_class_tuple(h, z_minus, class_minus, [&](const std::vector<ClassVector>& mc) {
                                                for_each_genus_split(p + q, genus_budget, [&](const std::vector<std::int64_t>& gs) {
                                                    for_each_assignment(m, p + q, [&](const std::vector<std::size_t>& at) {
                                                        build(p, q, plus_of, minus_of, monodromy, orders, pc, mc, gs, at);
                                                    });
                                                });
                                            });
                                        });
                                    });
                                });
                            }
                        }
                    }
                };
                mono_rec(0);
            }
        }
    } catch (const StopEnumeration&) {
    }

    SplittingResult out;
    out.incomplete = incomplete;
    for (auto& [_, sp] : found) out.splittings.push_back(std::move(sp));
    return out;
}

// ---------------------------------------------------------------------------

GluingDegrees gluing_degrees(const std::vector<ContactOrder>& orders) {
    if (orders.empty()) throw DomainError("gluing degrees need at least one node");
    GluingDegrees out{1, Rational(1)};
    for (const auto& c : orders) {
        out.kappa *= c.k();
        out.ell *= c.value();
    }
    return out;
}

GluingBundleReport gluing_bundle_report(const std::vector<ContactOrder>& orders) {
    const auto deg = gluing_degrees(orders);
    GluingBundleReport out;
    out.kappa = deg.kappa;
    for (const auto& c : orders) {
        out.exponents.push_back(deg.kappa / c.k());
        out.group_order *= contact::branch_cover_degree(c.r());
    }
    out.ell = Rational(out.kappa, out.group_order);
    return out;
}

std::string serialize(const Term& t) {
    auto join = [](const std::vector<std::string>& xs) {
        std::string s = "[";
        for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
        return s + "]";
    };
    std::ostringstream os;
    os << "I=" << join(t.I) << ";I_dual=" << join(t.I_dual) << ";aut=" << t.aut
       << ";coefficient=" << to_string(t.coefficient) << ";ell=" << to_string(t.ell)
       << ";glued=" << t.glued_key;
    return os.str();
}

void sort_terms(std::vector<Term>& terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        return std::tie(a.glued_key, a.I) < std::tie(b.glued_key, b.I);
    });
}

namespace {

Term make_term(const Splitting& sp, std::vector<std::string> I, std::vector<std::string> I_dual) {
    Term t;
    t.glued = sp.glued;
    t.glued_key = sp.key;
    t.gamma_plus = sp.plus;
    t.gamma_minus = sp.minus;
    t.I = std::move(I);
    t.I_dual = std::move(I_dual);
    std::vector<ContactOrder> orders;
    std::vector<contact::RelInsertion> node_data;
    for (std::size_t j = 0; j < sp.nodes.size(); ++j) {
        orders.push_back(sp.nodes[j].order);
        node_data.push_back({sp.nodes[j].order, sp.nodes[j].plus_monodromy, t.I_dual[j]});
    }
    t.ell = orders.empty() ? Rational(1) : gluing_degrees(orders).ell;
    t.aut = contact::aut_order(node_data);
    t.coefficient = t.ell * t.aut;
    return t;
}

}  // namespace

std::vector<Term> expand(const SplittingScenario& s, const CRBasisZ& basis,
                         const graph::HomologyModel& h, const ExpandOptions& options) {
    for (const auto& l : s.monodromy_menu.labels()) {
        if (basis.on_sector(l.label).empty()) {
            throw ValidationError("basis has no entries on monodromy sector '" + l.label + "'");
        }
    }
    for (const auto& e : basis.entries()) {
        if (!s.monodromy_menu.contains(e.sector)) {
            throw ValidationError("basis entry '" + e.label + "' is on sector '" + e.sector +
                                  "' outside the scenario's monodromy menu");
        }
    }

    const auto result = enumerate_splittings(s, h);
    if (result.incomplete) throw ResourceError("splitting enumeration hit max_results");

    std::vector<Term> terms;
    for (const auto& sp : result.splittings) {
        const auto n = sp.nodes.size();
        std::vector<std::vector<std::string>> choices(n);
        for (std::size_t j = 0; j < n; ++j) choices[j] = basis.on_sector(sp.nodes[j].minus_monodromy);
        std::vector<std::string> I(n);
        std::function<void(std::size_t)> rec = [&](std::size_t j) {
            if (j == n) {
                if (options.total_degree) {
                    Rational d(0);
                    for (const auto& b : I) d += basis.at(b).cr_degree;
                    if (d != *options.total_degree) return;
                }
                std::vector<std::string> I_dual;
                for (const auto& b : I) I_dual.push_back(basis.dual(b));
                terms.push_back(make_term(sp, I, std::move(I_dual)));
                return;
            }
            for (const auto& b : choices[j]) {
                I[j] = b;
                rec(j + 1);
            }
        };
        rec(0);
    }
    sort_terms(terms);
    return terms;
}

std::vector<Term> side_swap(const std::vector<Term>& terms) {
    std::vector<Term> out;
    out.reserve(terms.size());
    for (const auto& t : terms) {
        auto flipped = t.glued;
        for (auto& v : flipped.vertices) v.level = -v.level;
        const auto cf = graph::canonical_form(flipped);
        auto sp = splitting_from_glued(cf.graph, t.gamma_plus.vertices.empty()
                                                     ? (t.gamma_minus.vertices.empty() ? 0 : t.gamma_minus.vertices[0].cls.size())
                                                     : t.gamma_plus.vertices[0].cls.size());
        sp.key = cf.key;
        Term u;
        u.glued = sp.glued;
        u.glued_key = sp.key;
        u.gamma_plus = sp.plus;
        u.gamma_minus = sp.minus;
        for (auto old_edge : cf.edge_order) {
            u.I.push_back(t.I_dual[old_edge]);
            u.I_dual.push_back(t.I[old_edge]);
        }
        u.ell = t.ell;
        u.aut = t.aut;
        u.coefficient = t.coefficient;
        out.push_back(std::move(u));
    }
    sort_terms(out);
    return out;
}

}  // namespace orbidegen::expand
