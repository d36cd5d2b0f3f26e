#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls the library's enumeration, canonical-form or
// contraction code; only plain data types are shared.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "orbidegen/graph.hpp"
#include "orbidegen/inertia.hpp"
#include "orbidegen/rational.hpp"

namespace oracle {

using orbidegen::Rational;
namespace og = orbidegen::graph;

// ---------------------------------------------------------------------------
// groups

/// Conjugacy classes by direct orbit computation x -> g x g^-1, with the
/// inverse found by scanning the table.
inline std::set<std::set<int>> conjugacy_classes(const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    int e = -1;
    for (int a = 0; a < n && e < 0; ++a) {
        bool unit = true;
        for (int b = 0; b < n; ++b) unit = unit && table[a][b] == b && table[b][a] == b;
        if (unit) e = a;
    }
    auto inv = [&](int g) {
        for (int h = 0; h < n; ++h) {
            if (table[g][h] == e) return h;
        }
        return -1;
    };
    std::set<std::set<int>> out;
    for (int x = 0; x < n; ++x) {
        std::set<int> orbit;
        for (int g = 0; g < n; ++g) orbit.insert(table[table[g][x]][inv(g)]);
        out.insert(orbit);
    }
    return out;
}

inline std::vector<std::vector<int>> cyclic_table(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    }
    return t;
}

/// S_n as permutation tuples in lexicographic order, product (p q)(i) = p(q(i)).
inline std::vector<std::vector<int>> symmetric_table(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> t(perms.size(), std::vector<int>(perms.size()));
    for (std::size_t a = 0; a < perms.size(); ++a) {
        for (std::size_t b = 0; b < perms.size(); ++b) {
            std::vector<int> c(n);
            for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
            t[a][b] = index[c];
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// compositions

inline std::int64_t choose(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Compositions of N into k positive parts: C(N-1, k-1).
inline std::int64_t composition_count(int N, int k) { return choose(N - 1, k - 1); }

// ---------------------------------------------------------------------------
// stratification poset by exhaustive search

struct MenuEntry {
    std::string label;
    int order;
    std::string inverse;
};

struct PosetProblem {
    std::int64_t genus = 0;
    og::ClassVector cls;
    std::vector<og::Tail> tails;  // vertex field ignored
    std::vector<og::ClassVector> effective;
    std::vector<Rational> z;
    std::vector<MenuEntry> absolute{{"0", 1, "0"}};
    std::vector<MenuEntry> relative{{"0", 1, "0"}};
    int max_vertices = 3;
    int max_levels = 2;
};

struct PosetCounts {
    std::size_t nodes = 0;
    std::size_t covers = 0;
};

namespace detail {

struct OEdge {
    bool relative;
    int lo;  // for relative edges the lower vertex
    int hi;
    std::string half_lo;
    std::string half_hi;
    std::int64_t k = 0;
    std::int64_t r = 0;
};

struct OGraph {
    std::vector<std::int64_t> genus;
    std::vector<og::ClassVector> cls;
    std::vector<int> level;
    std::vector<OEdge> edges;
    std::vector<int> tail_at;  // parallel to PosetProblem::tails
};

inline Rational zdot(const std::vector<Rational>& z, const og::ClassVector& a) {
    Rational s(0);
    for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * a[i];
    return s;
}

inline bool connected(const OGraph& g) {
    const int n = static_cast<int>(g.genus.size());
    std::vector<int> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& e : g.edges) {
            int w = e.lo == v ? e.hi : (e.hi == v ? e.lo : -1);
            if (w >= 0 && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; });
}

/// Lexicographically least encoding over all vertex relabelings.
inline std::string canonical(const OGraph& g, const PosetProblem& p) {
    const int n = static_cast<int>(g.genus.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    bool first = true;
    do {
        // perm[old] = new
        std::ostringstream os;
        std::vector<int> inv(n);
        for (int v = 0; v < n; ++v) inv[perm[v]] = v;
        for (int nv = 0; nv < n; ++nv) {
            const int v = inv[nv];
            os << "V" << g.genus[v] << ":" << g.level[v] << ":";
            for (auto c : g.cls[v]) os << c << ",";
            os << ";";
        }
        std::vector<std::string> es;
        for (const auto& e : g.edges) {
            int a = perm[e.lo], b = perm[e.hi];
            std::string ha = e.half_lo, hb = e.half_hi;
            if (!e.relative && (a > b || (a == b && ha > hb))) {
                std::swap(a, b);
                std::swap(ha, hb);
            }
            std::ostringstream x;
            x << (e.relative ? "R" : "A") << a << "-" << b << ":" << ha << ":" << hb << ":" << e.k << "/" << e.r;
            es.push_back(x.str());
        }
        std::sort(es.begin(), es.end());
        for (const auto& s : es) os << s << ";";
        for (std::size_t t = 0; t < g.tail_at.size(); ++t) os << "T" << p.tails[t].label << "@" << perm[g.tail_at[t]] << ";";
        const auto s = os.str();
        if (first || s < best) best = s;
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline bool valid(const OGraph& g, const PosetProblem& p) {
    const int n = static_cast<int>(g.genus.size());
    const int top = *std::max_element(g.level.begin(), g.level.end());
    std::vector<Rational> net(n, Rational(0));
    for (std::size_t t = 0; t < p.tails.size(); ++t) {
        if (p.tails[t].kind != og::Kind::relative) continue;
        if (g.level[g.tail_at[t]] != top) return false;
        net[g.tail_at[t]] += p.tails[t].contact->value();
    }
    for (const auto& e : g.edges) {
        if (!e.relative) continue;
        const Rational l(e.k, e.r);
        net[e.lo] += l;
        net[e.hi] -= l;
    }
    for (int v = 0; v < n; ++v) {
        if (net[v] != zdot(p.z, g.cls[v])) return false;
    }
    return true;
}

inline OGraph contract_absolute(const OGraph& g, std::size_t edge) {
    OGraph out = g;
    const auto e = g.edges[edge];
    out.edges.erase(out.edges.begin() + static_cast<std::ptrdiff_t>(edge));
    if (e.lo == e.hi) {
        out.genus[e.lo] += 1;
        return out;
    }
    const int keep = e.lo, gone = e.hi;
    out.genus[keep] += g.genus[gone];
    for (std::size_t i = 0; i < out.cls[keep].size(); ++i) out.cls[keep][i] += g.cls[gone][i];
    auto re = [&](int v) { return v == gone ? keep : (v > gone ? v - 1 : v); };
    out.genus.erase(out.genus.begin() + gone);
    out.cls.erase(out.cls.begin() + gone);
    out.level.erase(out.level.begin() + gone);
    for (auto& f : out.edges) {
        f.lo = re(f.lo);
        f.hi = re(f.hi);
    }
    for (auto& t : out.tail_at) t = re(t);
    return out;
}

/// Collapse levels l and l+1: each component of the relative edges between
/// them becomes one vertex with genus sum + first Betti number.
inline OGraph contract_levels(const OGraph& g, int l) {
    const int n = static_cast<int>(g.genus.size());
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    auto between = [&](const OEdge& e) { return e.relative && g.level[e.lo] == l && g.level[e.hi] == l + 1; };
    for (const auto& e : g.edges) {
        if (between(e)) comp[find(e.lo)] = find(e.hi);
    }
    std::map<int, int> id;
    OGraph out;
    for (int v = 0; v < n; ++v) {
        if (!id.count(find(v))) {
            id[find(v)] = static_cast<int>(out.genus.size());
            out.genus.push_back(0);
            out.cls.push_back(og::ClassVector(g.cls[v].size(), 0));
            out.level.push_back(g.level[v] > l ? g.level[v] - 1 : g.level[v]);
        }
    }
    std::vector<int> size(out.genus.size(), 0), inner(out.genus.size(), 0);
    for (int v = 0; v < n; ++v) {
        const int c = id[find(v)];
        out.genus[c] += g.genus[v];
        for (std::size_t i = 0; i < g.cls[v].size(); ++i) out.cls[c][i] += g.cls[v][i];
        ++size[c];
    }
    for (const auto& e : g.edges) {
        if (between(e)) {
            ++inner[id[find(e.lo)]];
            continue;
        }
        auto f = e;
        f.lo = id[find(e.lo)];
        f.hi = id[find(e.hi)];
        out.edges.push_back(f);
    }
    for (std::size_t c = 0; c < out.genus.size(); ++c) out.genus[c] += inner[c] - size[c] + 1;
    for (auto t : g.tail_at) out.tail_at.push_back(id[find(t)]);
    return out;
}

}  // namespace detail

inline PosetCounts poset_counts(const PosetProblem& p) {
    using namespace detail;
    Rational ztotal = zdot(p.z, p.cls);
    std::map<std::string, OGraph> classes;

    for (int n = 1; n <= p.max_vertices; ++n) {
        std::vector<int> level(n, 0);
        std::function<void(int)> levels_rec;
        auto with_levels = [&] {
            std::set<int> used(level.begin(), level.end());
            if (*used.begin() != 0 || static_cast<int>(used.size()) != *used.rbegin() + 1) return;

            // edge types
            std::vector<OEdge> types;
            for (int a = 0; a < n; ++a) {
                for (int b = a; b < n; ++b) {
                    if (level[a] == level[b]) {
                        for (const auto& m : p.absolute) {
                            if (a == b && m.inverse < m.label) continue;
                            types.push_back({false, a, b, m.label, m.inverse, 0, 0});
                        }
                    } else if (std::abs(level[a] - level[b]) == 1) {
                        const int lo = level[a] < level[b] ? a : b;
                        const int hi = lo == a ? b : a;
                        for (const auto& m : p.relative) {
                            for (std::int64_t k = 1; Rational(k, m.order) <= ztotal; ++k) {
                                types.push_back({true, lo, hi, m.label, m.inverse, k, m.order});
                            }
                        }
                    }
                }
            }

            std::vector<std::int64_t> genus(n, 0);
            std::vector<og::ClassVector> cls(n);
            std::function<void(int, std::int64_t)> genus_rec;
            std::function<void(int)> class_rec;

            auto with_vertices = [&] {
                std::int64_t gs = std::accumulate(genus.begin(), genus.end(), std::int64_t{0});
                const std::int64_t E = p.genus - gs + n - 1;
                if (E < 0) return;
                std::vector<int> pick(static_cast<std::size_t>(E), 0);
                std::function<void(std::size_t, int)> edge_rec = [&](std::size_t i, int from) {
                    if (i == pick.size()) {
                        OGraph g;
                        g.genus = genus;
                        g.cls = cls;
                        g.level = level;
                        for (int t : pick) g.edges.push_back(types[t]);
                        if (!connected(g)) return;
                        g.tail_at.assign(p.tails.size(), 0);
                        std::function<void(std::size_t)> tail_rec = [&](std::size_t t) {
                            if (t == p.tails.size()) {
                                if (valid(g, p)) classes.emplace(canonical(g, p), g);
                                return;
                            }
                            for (int v = 0; v < n; ++v) {
                                g.tail_at[t] = v;
                                tail_rec(t + 1);
                            }
                        };
                        tail_rec(0);
                        return;
                    }
                    for (int t = from; t < static_cast<int>(types.size()); ++t) {
                        pick[i] = t;
                        edge_rec(i + 1, t);
                    }
                };
                edge_rec(0, 0);
            };
            class_rec = [&](int v) {
                if (v == n) {
                    og::ClassVector s(p.cls.size(), 0);
                    for (const auto& c : cls) {
                        for (std::size_t i = 0; i < s.size(); ++i) s[i] += c[i];
                    }
                    if (s == p.cls) with_vertices();
                    return;
                }
                for (const auto& c : p.effective) {
                    cls[v] = c;
                    class_rec(v + 1);
                }
            };
            genus_rec = [&](int v, std::int64_t left) {
                if (v == n) {
                    class_rec(0);
                    return;
                }
                for (std::int64_t x = 0; x <= left; ++x) {
                    genus[v] = x;
                    genus_rec(v + 1, left - x);
                }
            };
            genus_rec(0, p.genus);
        };
        levels_rec = [&](int v) {
            if (v == n) {
                with_levels();
                return;
            }
            for (int l = 0; l < p.max_levels; ++l) {
                level[v] = l;
                levels_rec(v + 1);
            }
        };
        levels_rec(0);
    }

    std::set<std::pair<std::string, std::string>> covers;
    for (const auto& [key, g] : classes) {
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            if (!g.edges[e].relative) covers.insert({key, canonical(contract_absolute(g, e), p)});
        }
        const int top = *std::max_element(g.level.begin(), g.level.end());
        for (int l = 0; l < top; ++l) covers.insert({key, canonical(contract_levels(g, l), p)});
    }
    for (const auto& [a, b] : covers) {
        if (!classes.count(b)) return {classes.size(), static_cast<std::size_t>(-1)};
    }
    return {classes.size(), covers.size()};
}

// ---------------------------------------------------------------------------
// random valid graphs over rank 1 with Z.A = A

/// Levels are contiguous, every vertex hangs off an earlier vertex at the
/// same or the previous level, relative contacts are then topped up until
/// every vertex has a non-negative net contact, which becomes its class.
inline og::RelGraph random_valid_graph(std::mt19937_64& rng, int max_vertices = 6, int max_levels = 3) {
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int n = uni(1, max_vertices);
    std::vector<int> level(n, 0);
    for (int v = 1; v < n; ++v) level[v] = std::min(level[v - 1] + uni(0, 1), max_levels - 1);
    og::RelGraph g;
    for (int v = 0; v < n; ++v) g.vertices.push_back({uni(0, 2), {0}, level[v]});

    auto add_relative = [&](int lo, int hi, int k) {
        g.edges.push_back({og::Kind::relative, static_cast<std::size_t>(lo), static_cast<std::size_t>(hi), "0", "0",
                           orbidegen::contact::ContactOrder(k, 1)});
    };
    auto add_absolute = [&](int a, int b) {
        g.edges.push_back({og::Kind::absolute, static_cast<std::size_t>(a), static_cast<std::size_t>(b), "0", "0",
                           std::nullopt});
    };
    for (int v = 1; v < n; ++v) {
        std::vector<int> near;
        for (int u = 0; u < v; ++u) {
            if (level[u] == level[v] || level[u] + 1 == level[v]) near.push_back(u);
        }
        const int u = near[uni(0, static_cast<int>(near.size()) - 1)];
        if (level[u] == level[v]) {
            add_absolute(u, v);
        } else {
            add_relative(u, v, uni(1, 2));
        }
    }
    const int extra = uni(0, 3);
    for (int i = 0; i < extra; ++i) {
        const int a = uni(0, n - 1), b = uni(0, n - 1);
        if (level[a] == level[b]) {
            add_absolute(a, b);
        } else if (std::abs(level[a] - level[b]) == 1) {
            add_relative(level[a] < level[b] ? a : b, level[a] < level[b] ? b : a, uni(1, 2));
        }
    }
    const int top = level.back();
    std::vector<std::int64_t> net(n, 0);
    auto recompute = [&] {
        std::fill(net.begin(), net.end(), 0);
        for (const auto& e : g.edges) {
            if (e.kind != og::Kind::relative) continue;
            net[e.a] += e.contact->k();
            net[e.b] -= e.contact->k();
        }
    };
    recompute();
    for (int l = 0; l < top; ++l) {
        for (int v = 0; v < n; ++v) {
            if (level[v] != l || net[v] >= 0) continue;
            std::vector<int> up;
            for (int w = 0; w < n; ++w) {
                if (level[w] == l + 1) up.push_back(w);
            }
            add_relative(v, up[uni(0, static_cast<int>(up.size()) - 1)], static_cast<int>(-net[v]) + uni(0, 1));
            recompute();
        }
    }
    int label = 0;
    for (int v = 0; v < n; ++v) {
        if (level[v] != top) continue;
        std::int64_t owed = -net[v] + uni(0, 2);
        while (owed > 0) {
            const int k = std::min<std::int64_t>(owed, uni(1, 2));
            g.tails.push_back({static_cast<std::size_t>(v), og::Kind::relative, "0",
                               orbidegen::contact::ContactOrder(k, 1), "q" + std::to_string(++label)});
            net[v] += k;
            owed -= k;
        }
    }
    for (int v = 0; v < n; ++v) g.vertices[v].cls = {net[v]};
    const int marks = uni(0, 2);
    for (int i = 0; i < marks; ++i) {
        g.tails.push_back({static_cast<std::size_t>(uni(0, n - 1)), og::Kind::absolute, "0", std::nullopt,
                           "p" + std::to_string(i + 1)});
    }
    return g;
}

/// Homology with Z.A = A and every class 0..max effective.
inline og::HomologyModel line_homology(int max = 64) {
    std::vector<og::ClassVector> eff;
    for (int i = 0; i <= max; ++i) eff.push_back({i});
    return og::HomologyModel(1, {Rational(1)}, {Rational(1)}, eff);
}

}  // namespace oracle
