#include "orbidegen/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "orbidegen/errors.hpp"

namespace orbidegen::graph {

using orbidegen::to_string;

using contact::ContactOrder;

std::string to_string(const ClassVector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + ")";
}

HomologyModel::HomologyModel(std::size_t rank, std::vector<Rational> c1,
                             std::vector<Rational> z_pairing, std::vector<ClassVector> effective)
    : rank_(rank), c1_(std::move(c1)), z_pairing_(std::move(z_pairing)),
      effective_(std::move(effective)) {
    if (c1_.size() != rank_ || z_pairing_.size() != rank_) {
        throw ValidationError("c1 and z_pairing must have length rank = " + std::to_string(rank_));
    }
    for (const auto& a : effective_) {
        if (a.size() != rank_) {
            throw ValidationError("effective class " + to_string(a) + " has the wrong rank");
        }
    }
    std::sort(effective_.begin(), effective_.end());
    effective_.erase(std::unique(effective_.begin(), effective_.end()), effective_.end());
    if (!is_effective(zero())) throw ValidationError("the zero class must be effective");
}

Rational HomologyModel::c1_of(const ClassVector& a) const {
    Rational out(0);
    for (std::size_t i = 0; i < rank_; ++i) out += c1_[i] * a.at(i);
    return out;
}

Rational HomologyModel::z_of(const ClassVector& a) const {
    Rational out(0);
    for (std::size_t i = 0; i < rank_; ++i) out += z_pairing_[i] * a.at(i);
    return out;
}

bool HomologyModel::is_effective(const ClassVector& a) const {
    return std::binary_search(effective_.begin(), effective_.end(), a);
}

namespace {

ClassVector add(ClassVector a, const ClassVector& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

std::string edge_name(std::size_t i) { return "edge " + std::to_string(i); }
std::string vertex_name(std::size_t i) { return "vertex " + std::to_string(i); }
std::string tail_name(std::size_t i) { return "tail " + std::to_string(i); }

}  // namespace

std::vector<Diagnostic> validate(const RelGraph& g, const GraphContext& ctx) {
    std::vector<Diagnostic> out;
    auto add_diag = [&](std::string rule, std::string where, std::string msg) {
        out.push_back({std::move(rule), std::move(where), std::move(msg)});
    };
    const auto& h = ctx.homology;
    const auto nv = g.vertices.size();

    bool classes_ok = true;
    for (std::size_t i = 0; i < nv; ++i) {
        const auto& v = g.vertices[i];
        if (v.genus < 0) add_diag("genus", vertex_name(i), "negative genus");
        if (v.cls.size() != h.rank()) {
            classes_ok = false;
            add_diag("class", vertex_name(i), "class " + to_string(v.cls) + " has the wrong rank");
        } else if (!h.is_effective(v.cls)) {
            add_diag("effective", vertex_name(i), "class " + to_string(v.cls) + " is not effective");
        }
    }

    int top = 0;
    if (nv > 0) {
        std::set<int> levels;
        for (const auto& v : g.vertices) levels.insert(v.level);
        top = *levels.rbegin();
        if (*levels.begin() != 0 || static_cast<int>(levels.size()) != top + 1) {
            add_diag("levels", "graph", "occupied levels must be 0..m without gaps");
        }
    }

    auto in_range = [&](std::size_t v) { return v < nv; };

    std::vector<Rational> balance(nv, Rational(0));
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        if (!in_range(e.a) || !in_range(e.b)) {
            add_diag("index", edge_name(i), "endpoint out of range");
            continue;
        }
        const int la = g.vertices[e.a].level;
        const int lb = g.vertices[e.b].level;
        if (e.kind == Kind::absolute) {
            if (la != lb) add_diag("level rule", edge_name(i), "absolute edge joins different levels");
            if (e.contact) add_diag("contact", edge_name(i), "absolute edge carries a contact order");
            if (!ctx.absolute.contains(e.half_a) || !ctx.absolute.contains(e.half_b)) {
                add_diag("monodromy", edge_name(i), "unknown half-edge class");
            } else if (!ctx.absolute.mutually_inverse(e.half_a, e.half_b)) {
                add_diag("balance", edge_name(i),
                         "half-edge classes (" + e.half_a + "),(" + e.half_b + ") are not mutually inverse");
            }
            continue;
        }
        if (std::abs(la - lb) != 1) {
            add_diag("level rule", edge_name(i), "relative edge must join adjacent levels");
        }
        if (!ctx.relative.contains(e.half_a) || !ctx.relative.contains(e.half_b)) {
            add_diag("monodromy", edge_name(i), "unknown half-edge class");
        } else if (!ctx.relative.mutually_inverse(e.half_a, e.half_b)) {
            add_diag("balance", edge_name(i),
                     "half-edge classes (" + e.half_a + "),(" + e.half_b + ") are not mutually inverse");
        } else if (e.contact && e.contact->r() != ctx.relative.order(e.half_a)) {
            add_diag("contact", edge_name(i), "contact denominator differs from the monodromy order");
        }
        if (!e.contact) {
            add_diag("contact", edge_name(i), "relative edge without a contact order");
        } else if (std::abs(la - lb) == 1) {
            const auto lower = la < lb ? e.a : e.b;
            const auto upper = la < lb ? e.b : e.a;
            balance[lower] += e.contact->value();
            balance[upper] -= e.contact->value();
        }
    }

    Rational tail_sum(0);
    std::set<std::string> labels;
    for (std::size_t i = 0; i < g.tails.size(); ++i) {
        const auto& t = g.tails[i];
        if (!in_range(t.vertex)) {
            add_diag("index", tail_name(i), "vertex out of range");
            continue;
        }
        if (!t.label.empty() && !labels.insert(t.label).second) {
            add_diag("labels", tail_name(i), "duplicate tail label '" + t.label + "'");
        }
        if (t.kind == Kind::absolute) {
            if (t.contact) add_diag("contact", tail_name(i), "absolute tail carries a contact order");
            if (!ctx.absolute.contains(t.monodromy)) {
                add_diag("monodromy", tail_name(i), "unknown class '" + t.monodromy + "'");
            }
            continue;
        }
        if (!ctx.relative.contains(t.monodromy)) {
            add_diag("monodromy", tail_name(i), "unknown class '" + t.monodromy + "'");
        }
        if (!t.contact) {
            add_diag("contact", tail_name(i), "relative tail without a contact order");
            continue;
        }
        if (ctx.relative.contains(t.monodromy) && t.contact->r() != ctx.relative.order(t.monodromy)) {
            add_diag("contact", tail_name(i), "contact denominator differs from the monodromy order");
        }
        if (g.vertices[t.vertex].level != top) {
            add_diag("relative tail level", tail_name(i), "relative tail below the top level");
        }
        tail_sum += t.contact->value();
        balance[t.vertex] += t.contact->value();
    }

    if (classes_ok) {
        const auto z = h.z_of(total_class(g).empty() ? h.zero() : total_class(g));
        if (tail_sum != z) {
            add_diag("tail sum", "graph",
                     "relative contact orders sum to " + to_string(tail_sum) + ", expected Z.A = " +
                         to_string(z));
        }
        for (std::size_t i = 0; i < nv; ++i) {
            const auto z_v = h.z_of(g.vertices[i].cls);
            if (balance[i] != z_v) {
                add_diag("vertex balance", vertex_name(i),
                         "upward minus downward contact is " + to_string(balance[i]) +
                             ", expected Z.A_v = " + to_string(z_v));
            }
        }
    }
    return out;
}

std::vector<Diagnostic> validate(const RelGraph& g, const HomologyModel& h) {
    return validate(g, GraphContext{h});
}

std::size_t component_count(const RelGraph& g) {
    UnionFind uf(g.vertices.size());
    for (const auto& e : g.edges) {
        if (e.a < g.vertices.size() && e.b < g.vertices.size()) uf.unite(e.a, e.b);
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) count += uf.find(i) == i ? 1 : 0;
    return count;
}

bool is_connected(const RelGraph& g) { return component_count(g) == 1; }

std::int64_t genus(const RelGraph& g) {
    if (!is_connected(g)) {
        throw ValidationError("genus is defined for connected graphs; use bullet_genus");
    }
    std::int64_t total = static_cast<std::int64_t>(g.edges.size()) -
                         static_cast<std::int64_t>(g.vertices.size()) + 1;
    for (const auto& v : g.vertices) total += v.genus;
    return total;
}

std::int64_t bullet_genus(const RelGraph& g) {
    const auto nv = g.vertices.size();
    UnionFind uf(nv);
    for (const auto& e : g.edges) uf.unite(e.a, e.b);
    std::map<std::size_t, std::int64_t> per_component;  // E - V + sum g_v per root
    for (std::size_t i = 0; i < nv; ++i) per_component[uf.find(i)] += g.vertices[i].genus - 1;
    for (const auto& e : g.edges) per_component[uf.find(e.a)] += 1;
    std::int64_t total = 0;
    for (auto [_, x] : per_component) total += x + 1;
    return total - (static_cast<std::int64_t>(per_component.size()) - 1);
}

ClassVector total_class(const RelGraph& g) {
    ClassVector out;
    for (const auto& v : g.vertices) out = add(std::move(out), v.cls);
    return out;
}

RelGraph contract_edge(const RelGraph& g, std::size_t edge) {
    if (edge >= g.edges.size()) throw ValidationError(edge_name(edge) + " does not exist");
    const auto& e = g.edges[edge];
    if (e.kind == Kind::relative) {
        throw ValidationError("relative edges are removed only by level contraction");
    }
    if (g.vertices.at(e.a).level != g.vertices.at(e.b).level) {
        throw ValidationError(edge_name(edge) + " joins different levels");
    }

    RelGraph out;
    if (e.is_loop()) {
        out = g;
        out.edges.erase(out.edges.begin() + static_cast<std::ptrdiff_t>(edge));
        out.vertices[e.a].genus += 1;
        return out;
    }

    const auto keep = std::min(e.a, e.b);
    const auto drop = std::max(e.a, e.b);
    auto remap = [&](std::size_t v) {
        if (v == drop) return keep;
        return v > drop ? v - 1 : v;
    };
    out.vertices = g.vertices;
    out.vertices[keep].genus += g.vertices[drop].genus;
    out.vertices[keep].cls = add(out.vertices[keep].cls, g.vertices[drop].cls);
    out.vertices.erase(out.vertices.begin() + static_cast<std::ptrdiff_t>(drop));
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (i == edge) continue;
        auto f = g.edges[i];
        f.a = remap(f.a);
        f.b = remap(f.b);
        out.edges.push_back(std::move(f));
    }
    for (auto t : g.tails) {
        t.vertex = remap(t.vertex);
        out.tails.push_back(std::move(t));
    }
    return out;
}

RelGraph contract_level(const RelGraph& g, int level) {
    const auto nv = g.vertices.size();
    const bool lower = std::any_of(g.vertices.begin(), g.vertices.end(),
                                   [&](const Vertex& v) { return v.level == level; });
    const bool upper = std::any_of(g.vertices.begin(), g.vertices.end(),
                                   [&](const Vertex& v) { return v.level == level + 1; });
    if (!lower || !upper) {
        throw ValidationError("levels " + std::to_string(level) + " and " +
                              std::to_string(level + 1) + " must both be occupied");
    }

    auto collapsing = [&](const Edge& e) {
        if (e.kind != Kind::relative) return false;
        const int la = g.vertices[e.a].level;
        const int lb = g.vertices[e.b].level;
        return std::min(la, lb) == level && std::max(la, lb) == level + 1;
    };

    UnionFind uf(nv);
    for (const auto& e : g.edges) {
        if (collapsing(e)) uf.unite(e.a, e.b);
    }

    std::map<std::size_t, std::size_t> new_index;  // root -> new vertex
    RelGraph out;
    for (std::size_t i = 0; i < nv; ++i) {
        const auto root = uf.find(i);
        if (root != i) continue;
        new_index[root] = out.vertices.size();
        auto v = g.vertices[i];
        v.genus = 0;
        v.cls = ClassVector(v.cls.size(), 0);
        v.level = g.vertices[i].level > level ? g.vertices[i].level - 1 : g.vertices[i].level;
        out.vertices.push_back(std::move(v));
    }
    std::vector<std::int64_t> members(out.vertices.size(), 0);
    std::vector<std::int64_t> internal(out.vertices.size(), 0);
    for (std::size_t i = 0; i < nv; ++i) {
        const auto j = new_index.at(uf.find(i));
        out.vertices[j].genus += g.vertices[i].genus;
        out.vertices[j].cls = add(out.vertices[j].cls, g.vertices[i].cls);
        ++members[j];
    }
    for (const auto& e : g.edges) {
        if (collapsing(e)) {
            ++internal[new_index.at(uf.find(e.a))];
            continue;
        }
        auto f = e;
        f.a = new_index.at(uf.find(e.a));
        f.b = new_index.at(uf.find(e.b));
        out.edges.push_back(std::move(f));
    }
    for (std::size_t j = 0; j < out.vertices.size(); ++j) {
        if (internal[j] > 0) out.vertices[j].genus += internal[j] - members[j] + 1;
    }
    for (auto t : g.tails) {
        t.vertex = new_index.at(uf.find(t.vertex));
        out.tails.push_back(std::move(t));
    }
    return out;
}

// ---------------------------------------------------------------------------
// canonical form

namespace {

using EdgeCode = std::tuple<int, std::size_t, std::size_t, std::string, std::string, std::int64_t, std::int64_t>;
using TailCode = std::tuple<std::size_t, int, std::string, std::string, std::int64_t, std::int64_t>;

std::pair<std::int64_t, std::int64_t> contact_code(const std::optional<ContactOrder>& c) {
    return c ? std::pair{c->k(), c->r()} : std::pair<std::int64_t, std::int64_t>{0, 0};
}

std::string tail_signature(const Tail& t) {
    auto [k, r] = contact_code(t.contact);
    return std::to_string(static_cast<int>(t.kind)) + "/" + t.label + "/" + t.monodromy + "/" +
           std::to_string(k) + "/" + std::to_string(r);
}

std::string vertex_base_signature(const RelGraph& g, std::size_t v) {
    std::vector<std::string> tails;
    for (const auto& t : g.tails) {
        if (t.vertex == v) tails.push_back(tail_signature(t));
    }
    std::sort(tails.begin(), tails.end());
    const auto& x = g.vertices[v];
    std::ostringstream os;
    os << x.level << "|" << x.genus << "|" << to_string(x.cls) << "|";
    for (const auto& s : tails) os << s << ";";
    return os.str();
}

/// Colour refinement; returns colour per vertex with colours ranked by an
/// isomorphism-invariant signature.
std::vector<std::size_t> refine_colours(const RelGraph& g) {
    const auto nv = g.vertices.size();
    std::vector<std::string> sig(nv);
    for (std::size_t v = 0; v < nv; ++v) sig[v] = vertex_base_signature(g, v);

    std::vector<std::size_t> colour(nv);
    std::size_t distinct = 0;
    while (true) {
        std::vector<std::string> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t v = 0; v < nv; ++v) {
            colour[v] = static_cast<std::size_t>(
                std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        }
        if (sorted.size() == distinct) break;
        distinct = sorted.size();

        std::vector<std::vector<std::string>> around(nv);
        for (const auto& e : g.edges) {
            auto [k, r] = contact_code(e.contact);
            const auto deco = std::to_string(static_cast<int>(e.kind)) + "/" + std::to_string(k) +
                              "/" + std::to_string(r);
            if (e.is_loop()) {
                const auto lo = std::min(e.half_a, e.half_b);
                const auto hi = std::max(e.half_a, e.half_b);
                around[e.a].push_back("L" + deco + "/" + lo + "/" + hi);
                continue;
            }
            around[e.a].push_back("E" + deco + "/" + e.half_a + "/" + e.half_b + "/" +
                                  std::to_string(colour[e.b]));
            around[e.b].push_back("E" + deco + "/" + e.half_b + "/" + e.half_a + "/" +
                                  std::to_string(colour[e.a]));
        }
        for (std::size_t v = 0; v < nv; ++v) {
            std::sort(around[v].begin(), around[v].end());
            std::string s = std::to_string(colour[v]) + "#";
            for (const auto& a : around[v]) s += a + ";";
            sig[v] = std::move(s);
        }
    }
    return colour;
}

std::vector<EdgeCode> encode_edges(const RelGraph& g, const std::vector<std::size_t>& pos) {
    std::vector<EdgeCode> out;
    out.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        auto x = pos[e.a];
        auto y = pos[e.b];
        auto hx = e.half_a;
        auto hy = e.half_b;
        if (std::tie(x, hx) > std::tie(y, hy)) {
            std::swap(x, y);
            std::swap(hx, hy);
        }
        auto [k, r] = contact_code(e.contact);
        out.emplace_back(static_cast<int>(e.kind), x, y, std::move(hx), std::move(hy), k, r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TailCode> encode_tails(const RelGraph& g, const std::vector<std::size_t>& pos) {
    std::vector<TailCode> out;
    out.reserve(g.tails.size());
    for (const auto& t : g.tails) {
        auto [k, r] = contact_code(t.contact);
        out.emplace_back(pos[t.vertex], static_cast<int>(t.kind), t.label, t.monodromy, k, r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

constexpr std::int64_t kMaxOrderings = 2'000'000;

std::string serialize(const RelGraph& g) {
    std::ostringstream os;
    os << "V";
    for (const auto& v : g.vertices) os << "[g" << v.genus << "A" << to_string(v.cls) << "L" << v.level << "]";
    os << "E";
    for (const auto& e : g.edges) {
        auto [k, r] = contact_code(e.contact);
        os << "[" << (e.kind == Kind::absolute ? "a" : "r") << e.a << "-" << e.b << ":" << e.half_a
           << "," << e.half_b;
        if (e.contact) os << ":" << k << "/" << r;
        os << "]";
    }
    os << "T";
    for (const auto& t : g.tails) {
        os << "[" << (t.kind == Kind::absolute ? "a" : "r") << t.vertex << ":" << t.label << ":"
           << t.monodromy;
        if (t.contact) os << ":" << t.contact->k() << "/" << t.contact->r();
        os << "]";
    }
    return os.str();
}

}  // namespace

CanonicalForm canonical_form(const RelGraph& g) {
    const auto nv = g.vertices.size();
    if (nv > kMaxCanonicalVertices) {
        throw ResourceError("canonical form is limited to " +
                            std::to_string(kMaxCanonicalVertices) + " vertices");
    }
    for (const auto& e : g.edges) {
        if (e.a >= nv || e.b >= nv) throw ValidationError("edge endpoint out of range");
    }
    for (const auto& t : g.tails) {
        if (t.vertex >= nv) throw ValidationError("tail vertex out of range");
    }

    const auto colour = refine_colours(g);
    std::map<std::size_t, std::vector<std::size_t>> by_colour;
    for (std::size_t v = 0; v < nv; ++v) by_colour[colour[v]].push_back(v);
    std::vector<std::vector<std::size_t>> cells;
    std::int64_t orderings = 1;
    for (auto& [_, cell] : by_colour) {
        orderings *= factorial(static_cast<int>(cell.size()));
        if (orderings > kMaxOrderings) {
            throw ResourceError("canonical form search exceeds " + std::to_string(kMaxOrderings) +
                                " orderings");
        }
        cells.push_back(cell);
    }

    std::vector<std::size_t> pos(nv);
    std::optional<std::pair<std::vector<EdgeCode>, std::vector<TailCode>>> best;
    std::vector<std::size_t> best_order;
    std::int64_t ties = 0;

    auto evaluate = [&] {
        std::vector<std::size_t> order;
        order.reserve(nv);
        for (const auto& cell : cells) order.insert(order.end(), cell.begin(), cell.end());
        for (std::size_t p = 0; p < nv; ++p) pos[order[p]] = p;
        auto code = std::pair{encode_edges(g, pos), encode_tails(g, pos)};
        if (!best || code < *best) {
            best = std::move(code);
            best_order = std::move(order);
            ties = 1;
        } else if (code == *best) {
            ++ties;
        }
    };

    std::function<void(std::size_t)> walk = [&](std::size_t c) {
        if (c == cells.size()) {
            evaluate();
            return;
        }
        auto& cell = cells[c];
        std::sort(cell.begin(), cell.end());
        do {
            walk(c + 1);
        } while (std::next_permutation(cell.begin(), cell.end()));
    };
    walk(0);

    CanonicalForm out;
    out.automorphisms = ties;
    out.vertex_order = best_order;
    for (std::size_t p = 0; p < nv; ++p) pos[best_order[p]] = p;
    {
        std::vector<bool> used(g.edges.size(), false);
        for (const auto& code : best->first) {
            for (std::size_t i = 0; i < g.edges.size(); ++i) {
                if (used[i]) continue;
                RelGraph single;
                single.edges.push_back(g.edges[i]);
                if (encode_edges(single, pos).front() == code) {
                    used[i] = true;
                    out.edge_order.push_back(i);
                    break;
                }
            }
        }
    }
    {
        std::vector<bool> used(g.tails.size(), false);
        for (const auto& code : best->second) {
            for (std::size_t i = 0; i < g.tails.size(); ++i) {
                if (used[i]) continue;
                RelGraph single;
                single.tails.push_back(g.tails[i]);
                if (encode_tails(single, pos).front() == code) {
                    used[i] = true;
                    out.tail_order.push_back(i);
                    break;
                }
            }
        }
    }
    for (auto v : best_order) out.graph.vertices.push_back(g.vertices[v]);
    for (const auto& [kind, x, y, hx, hy, k, r] : best->first) {
        Edge e;
        e.kind = static_cast<Kind>(kind);
        e.a = x;
        e.b = y;
        e.half_a = hx;
        e.half_b = hy;
        if (r != 0) e.contact = ContactOrder(k, r);
        out.graph.edges.push_back(std::move(e));
    }
    for (const auto& [v, kind, label, mono, k, r] : best->second) {
        Tail t;
        t.vertex = v;
        t.kind = static_cast<Kind>(kind);
        t.label = label;
        t.monodromy = mono;
        if (r != 0) t.contact = ContactOrder(k, r);
        out.graph.tails.push_back(std::move(t));
    }
    out.key = serialize(out.graph);
    return out;
}

std::int64_t automorphism_order(const RelGraph& g) { return canonical_form(g).automorphisms; }

// ---------------------------------------------------------------------------
// stratification poset

namespace {

struct Slot {
    Kind kind;
    std::size_t a;
    std::size_t b;
    std::string half_a;
    std::string half_b;
    std::optional<ContactOrder> contact;
};

std::vector<Slot> edge_slots(const std::vector<int>& levels, const GraphContext& ctx,
                             const Rational& contact_bound) {
    std::vector<Slot> out;
    const auto nv = levels.size();
    for (std::size_t a = 0; a < nv; ++a) {
        for (std::size_t b = a; b < nv; ++b) {
            if (levels[a] == levels[b]) {
                for (const auto& l : ctx.absolute.labels()) {
                    if (a == b && l.inverse < l.label) continue;
                    out.push_back({Kind::absolute, a, b, l.label, l.inverse, std::nullopt});
                }
            } else if (levels[b] == levels[a] + 1) {
                for (const auto& l : ctx.relative.labels()) {
                    const auto kmax = floor(contact_bound * l.order);
                    for (std::int64_t k = 1; k <= kmax; ++k) {
                        out.push_back({Kind::relative, a, b, l.label, l.inverse, ContactOrder(k, l.order)});
                    }
                }
            }
        }
    }
    return out;
}

template <class F>
void for_each_multiset(std::size_t n_slots, std::size_t size, F&& f) {
    std::vector<std::size_t> pick(size, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t from) {
        if (i == size) {
            f(pick);
            return;
        }
        for (std::size_t s = from; s < n_slots; ++s) {
            pick[i] = s;
            rec(i + 1, s);
        }
    };
    rec(0, 0);
}

template <class F>
void for_each_assignment(std::size_t items, const std::vector<std::size_t>& targets, F&& f) {
    std::vector<std::size_t> choice(items, 0);
    if (targets.empty()) {
        if (items == 0) f(choice);
        return;
    }
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == items) {
            f(choice);
            return;
        }
        for (auto t : targets) {
            choice[i] = t;
            rec(i + 1);
        }
    };
    rec(0);
}

struct PosetStop {};

}  // namespace

StratPoset stratification_poset(const RelGraph& top, const GraphContext& ctx,
                                const PosetBounds& bounds) {
    if (top.vertices.size() != 1 || !top.edges.empty()) {
        throw ValidationError("stratification_poset expects a one-vertex graph without edges");
    }
    if (auto d = validate(top, ctx); !d.empty()) throw ValidationError(d.front().describe());
    if (bounds.max_vertices < 1 || bounds.max_levels < 1) {
        throw ValidationError("poset bounds must allow at least one vertex and one level");
    }

    const auto& h = ctx.homology;
    const auto genus_total = top.vertices[0].genus;
    const auto& cls = top.vertices[0].cls;
    std::vector<Tail> abs_tails;
    std::vector<Tail> rel_tails;
    for (const auto& t : top.tails) (t.kind == Kind::absolute ? abs_tails : rel_tails).push_back(t);

    Rational z_max(0);
    for (const auto& c : h.effective()) z_max = std::max(z_max, abs(h.z_of(c)));

    std::map<std::string, RelGraph> found;
    bool incomplete = false;

    auto record = [&](const RelGraph& g) {
        if (!validate(g, ctx).empty()) return;
        auto cf = canonical_form(g);
        found.emplace(cf.key, std::move(cf.graph));
        if (found.size() >= bounds.max_nodes) {
            incomplete = true;
            throw PosetStop{};
        }
    };

    try {
        for (int nv = 1; nv <= bounds.max_vertices; ++nv) {
            const auto n = static_cast<std::size_t>(nv);
            const Rational contact_bound = z_max * nv;

            std::vector<int> levels(n, 0);
            std::function<void(std::size_t)> level_rec;
            std::function<void(std::size_t, std::int64_t, std::vector<std::int64_t>&)> genus_rec;

            auto per_levels = [&] {
                const int top_level = levels.back();
                if (top_level >= bounds.max_levels) return;
                const auto slots = edge_slots(levels, ctx, contact_bound);
                std::vector<std::size_t> top_vertices;
                for (std::size_t v = 0; v < n; ++v) {
                    if (levels[v] == top_level) top_vertices.push_back(v);
                }
                std::vector<std::size_t> all_vertices(n);
                std::iota(all_vertices.begin(), all_vertices.end(), 0);

                std::vector<std::int64_t> genera(n, 0);
                std::vector<ClassVector> classes(n);

                std::function<void(std::size_t, ClassVector)> class_rec;
                auto per_classes = [&] {
                    std::int64_t gsum = 0;
                    for (auto x : genera) gsum += x;
                    const auto n_edges = genus_total - gsum + nv - 1;
                    if (n_edges < 0) return;
                    for_each_multiset(slots.size(), static_cast<std::size_t>(n_edges),
                                      [&](const std::vector<std::size_t>& pick) {
                        RelGraph g;
                        for (std::size_t v = 0; v < n; ++v) {
                            g.vertices.push_back({genera[v], classes[v], levels[v]});
                        }
                        for (auto s : pick) {
                            const auto& sl = slots[s];
                            g.edges.push_back({sl.kind, sl.a, sl.b, sl.half_a, sl.half_b, sl.contact});
                        }
                        if (!is_connected(g)) return;
                        // contact still owed to relative tails at each vertex
                        std::vector<Rational> owed(n);
                        for (std::size_t v = 0; v < n; ++v) owed[v] = h.z_of(classes[v]);
                        for (const auto& e : g.edges) {
                            if (e.kind != Kind::relative) continue;
                            owed[e.a] -= e.contact->value();
                            owed[e.b] += e.contact->value();
                        }
                        for (std::size_t v = 0; v < n; ++v) {
                            if (owed[v] < Rational(0)) return;
                            if (levels[v] != top_level && owed[v] != Rational(0)) return;
                        }
                        for_each_assignment(rel_tails.size(), top_vertices,
                                            [&](const std::vector<std::size_t>& rel_at) {
                            std::vector<Rational> got(n, Rational(0));
                            for (std::size_t i = 0; i < rel_tails.size(); ++i) {
                                got[rel_at[i]] += rel_tails[i].contact->value();
                            }
                            if (got != owed) return;
                            for_each_assignment(abs_tails.size(), all_vertices,
                                                [&](const std::vector<std::size_t>& abs_at) {
                                RelGraph full = g;
                                for (std::size_t i = 0; i < abs_tails.size(); ++i) {
                                    auto t = abs_tails[i];
                                    t.vertex = abs_at[i];
                                    full.tails.push_back(std::move(t));
                                }
                                for (std::size_t i = 0; i < rel_tails.size(); ++i) {
                                    auto t = rel_tails[i];
                                    t.vertex = rel_at[i];
                                    full.tails.push_back(std::move(t));
                                }
                                record(full);
                            });
                        });
                    });
                };
                class_rec = [&](std::size_t v, ClassVector partial) {
                    if (v + 1 == n) {
                        ClassVector last(cls.size());
                        for (std::size_t i = 0; i < cls.size(); ++i) last[i] = cls[i] - partial[i];
                        if (!h.is_effective(last)) return;
                        classes[v] = std::move(last);
                        per_classes();
                        return;
                    }
                    for (const auto& c : h.effective()) {
                        classes[v] = c;
                        class_rec(v + 1, add(partial, c));
                    }
                };
                genus_rec = [&](std::size_t v, std::int64_t left, std::vector<std::int64_t>& gs) {
                    if (v == n) {
                        class_rec(0, h.zero());
                        return;
                    }
                    for (std::int64_t x = 0; x <= left; ++x) {
                        gs[v] = x;
                        genus_rec(v + 1, left - x, gs);
                    }
                };
                genus_rec(0, genus_total, genera);
            };

            level_rec = [&](std::size_t v) {
                if (v == n) {
                    per_levels();
                    return;
                }
                levels[v] = levels[v - 1];
                level_rec(v + 1);
                levels[v] = levels[v - 1] + 1;
                level_rec(v + 1);
            };
            if (n == 1) {
                per_levels();
            } else {
                level_rec(1);
            }
        }
    } catch (const PosetStop&) {
    }

    StratPoset out;
    out.incomplete = incomplete;
    std::vector<std::pair<std::string, RelGraph>> nodes(found.begin(), found.end());
    std::stable_sort(nodes.begin(), nodes.end(), [](const auto& x, const auto& y) {
        return std::tuple(x.second.vertices.size(), x.second.edges.size(), x.first) <
               std::tuple(y.second.vertices.size(), y.second.edges.size(), y.first);
    });
    std::map<std::string, std::size_t> index;
    for (auto& [key, g] : nodes) {
        index[key] = out.nodes.size();
        out.keys.push_back(key);
        out.nodes.push_back(std::move(g));
    }

    std::set<std::pair<std::size_t, std::size_t>> covers;
    auto link = [&](std::size_t from, const RelGraph& coarser) {
        const auto key = canonical_form(coarser).key;
        auto it = index.find(key);
        if (it == index.end()) {
            if (!incomplete) throw std::logic_error("contraction left the enumerated stratum set");
            return;
        }
        covers.insert({from, it->second});
    };
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
        const auto& g = out.nodes[i];
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            if (g.edges[e].kind == Kind::absolute) link(i, contract_edge(g, e));
        }
        int top_level = 0;
        for (const auto& v : g.vertices) top_level = std::max(top_level, v.level);
        for (int l = 0; l < top_level; ++l) link(i, contract_level(g, l));
    }
    out.covers.assign(covers.begin(), covers.end());
    return out;
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string vertex_label(const Vertex& v) {
    return "g=" + std::to_string(v.genus) + ",A=" + to_string(v.cls) + ",lvl=" + std::to_string(v.level);
}

}  // namespace

std::string to_dot(const RelGraph& g, const std::string& name) {
    std::ostringstream os;
    os << "graph \"" << name << "\" {\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        os << "  v" << i << " [label=\"" << vertex_label(g.vertices[i]) << "\"];\n";
    }
    for (const auto& e : g.edges) {
        os << "  v" << e.a << " -- v" << e.b << " [";
        if (e.kind == Kind::relative) {
            os << "style=dashed,label=\"ℓ=" << e.contact->k() << "/" << e.contact->r() << ",("
               << e.half_a << ")\"";
        } else {
            os << "label=\"(" << e.half_a << "),(" << e.half_b << ")\"";
        }
        os << "];\n";
    }
    for (std::size_t i = 0; i < g.tails.size(); ++i) {
        const auto& t = g.tails[i];
        os << "  t" << i << " [shape=plaintext,label=\"" << t.label << "\"];\n";
        os << "  v" << t.vertex << " -- t" << i << " [";
        if (t.kind == Kind::relative) {
            os << "style=dashed,label=\"ℓ=" << t.contact->k() << "/" << t.contact->r() << ",("
               << t.monodromy << ")\"";
        } else {
            os << "label=\"(" << t.monodromy << ")\"";
        }
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string to_dot(const StratPoset& p, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n";
    os << "  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        const auto& g = p.nodes[i];
        os << "  n" << i << " [label=\"";
        for (std::size_t v = 0; v < g.vertices.size(); ++v) {
            if (v) os << "\\n";
            os << vertex_label(g.vertices[v]);
        }
        os << "\\nedges=" << g.edges.size() << "\"];\n";
    }
    for (const auto& [from, to] : p.covers) os << "  n" << from << " -> n" << to << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace orbidegen::graph
