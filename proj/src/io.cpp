#include "orbidegen/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "orbidegen/errors.hpp"

namespace orbidegen::io {

using graph::ClassVector;
using graph::Kind;

namespace {

const json& field(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(where + "." + key + ": missing field");
    return *it;
}

const json* optional_field(const json& j, const std::string& key) {
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::int64_t int_from(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ValidationError(where + ": expected an integer");
    return j.get<std::int64_t>();
}

std::string string_from(const json& j, const std::string& where) {
    if (!j.is_string()) throw ValidationError(where + ": expected a string");
    return j.get<std::string>();
}

const json& array_from(const json& j, const std::string& where) {
    if (!j.is_array()) throw ValidationError(where + ": expected an array");
    return j;
}

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    for (const auto& [k, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw ValidationError(where + "." + k + ": unknown field");
    }
}

ClassVector class_from(const json& j, const std::string& where) {
    ClassVector v;
    const auto& a = array_from(j, where);
    for (std::size_t i = 0; i < a.size(); ++i) v.push_back(int_from(a[i], at(where, i)));
    return v;
}

Kind kind_from(const json& j, const std::string& where) {
    const auto s = string_from(j, where);
    if (s == "absolute") return Kind::absolute;
    if (s == "relative") return Kind::relative;
    throw ValidationError(where + ": kind must be \"absolute\" or \"relative\", got \"" + s + "\"");
}

std::string kind_to(Kind k) { return k == Kind::absolute ? "absolute" : "relative"; }

std::vector<Rational> rationals_from(const json& j, const std::string& where) {
    std::vector<Rational> out;
    const auto& a = array_from(j, where);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(rational_from(a[i], at(where, i)));
    return out;
}

json rationals_to(const std::vector<Rational>& qs) {
    json a = json::array();
    for (const auto& q : qs) a.push_back(rational_to(q));
    return a;
}

std::vector<std::string> strings_from(const json& j, const std::string& where) {
    std::vector<std::string> out;
    const auto& a = array_from(j, where);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(string_from(a[i], at(where, i)));
    return out;
}

template <class T>
void reject_duplicate(const std::vector<T>& items, const std::string& name, const std::string& where) {
    for (const auto& x : items) {
        if (x.name == name) throw ValidationError(where + ": duplicate name '" + name + "'");
    }
}

}  // namespace

Rational rational_from(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (!j.is_string()) throw ValidationError(where + ": expected a rational string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

json rational_to(const Rational& q) { return to_string(q); }

contact::ContactOrder contact_from(const json& j, const std::string& where) {
    const auto s = string_from(j, where);
    const auto slash = s.find('/');
    std::int64_t k = 0, r = 1;
    auto parse = [&](std::string_view part, std::int64_t& out) {
        auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        if (ec != std::errc{} || p != part.data() + part.size() || part.empty()) {
            throw ValidationError(where + ": malformed contact order \"" + s + "\"");
        }
    };
    std::string_view sv(s);
    if (slash == std::string::npos) {
        parse(sv, k);
    } else {
        parse(sv.substr(0, slash), k);
        parse(sv.substr(slash + 1), r);
    }
    try {
        return contact::ContactOrder(k, r);
    } catch (const DomainError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

json contact_to(const contact::ContactOrder& c) { return contact::to_string(c); }

inertia::FiniteGroupTable group_from(const json& j, const std::string& where) {
    using inertia::FiniteGroupTable;
    try {
        if (j.is_string()) {
            const auto s = j.get<std::string>();
            auto number = [&](std::string_view text) {
                int n = 0;
                auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
                if (ec != std::errc{} || p != text.data() + text.size() || text.empty()) {
                    throw ValidationError(where + ": malformed group shorthand \"" + s + "\"");
                }
                return n;
            };
            std::string_view sv(s);
            if (sv.starts_with("cyclic:")) {
                const int n = number(sv.substr(7));
                if (n < 1 || n > FiniteGroupTable::kDefaultMaxOrder) {
                    throw ValidationError(where + ": cyclic order must lie in [1, 64]");
                }
                return FiniteGroupTable::cyclic(n);
            }
            if (sv.starts_with("symmetric:")) return FiniteGroupTable::symmetric(number(sv.substr(10)));
            throw ValidationError(where + ": unknown group shorthand \"" + s + "\"");
        }
        if (j.is_object()) {
            if (auto* p = optional_field(j, "product")) {
                const auto& a = array_from(*p, where + ".product");
                if (a.size() != 2) throw ValidationError(where + ".product: expected two factors");
                return FiniteGroupTable::direct_product(group_from(a[0], where + ".product[0]"),
                                                        group_from(a[1], where + ".product[1]"));
            }
            const auto& t = array_from(field(j, "table", where), where + ".table");
            std::vector<std::vector<inertia::Element>> table;
            for (std::size_t i = 0; i < t.size(); ++i) {
                std::vector<inertia::Element> row;
                const auto& r = array_from(t[i], at(where + ".table", i));
                for (std::size_t k = 0; k < r.size(); ++k) {
                    row.push_back(static_cast<inertia::Element>(int_from(r[k], at(at(where + ".table", i), k))));
                }
                table.push_back(std::move(row));
            }
            return FiniteGroupTable(std::move(table));
        }
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        if (msg.starts_with(where)) throw;
        throw ValidationError(where + ": " + msg);
    }
    throw ValidationError(where + ": expected a group shorthand or {\"table\": ...}");
}

// ---------------------------------------------------------------------------

graph::GraphContext InputDocument::context() const {
    if (!homology) throw ValidationError("document has no homology section");
    return {*homology, absolute_menu, relative_menu};
}

const graph::RelGraph& InputDocument::graph(const std::string& name) const {
    for (const auto& g : graphs) {
        if (g.name == name) return g.graph;
    }
    throw ValidationError("no graph named '" + name + "'");
}

const expand::SplittingScenario& InputDocument::scenario(const std::string& name) const {
    for (const auto& s : scenarios) {
        if (s.name == name) return s.scenario;
    }
    throw ValidationError("no scenario named '" + name + "'");
}

const dimension::ModuliSpec& InputDocument::spec(const std::string& name) const {
    for (const auto& m : moduli) {
        if (m.name == name) return m.spec;
    }
    throw ValidationError("no moduli spec named '" + name + "'");
}

namespace {

inertia::FiniteGroupTable resolve_group(const InputDocument& doc, const json& j, const std::string& where) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        for (const auto& [name, g] : doc.groups) {
            if (name == s) return g;
        }
    }
    return group_from(j, where);
}

inertia::CRProfile profile_from(const InputDocument& doc, const json& j, const std::string& where) {
    check_keys(j, {"name", "group", "ambient_dim", "sectors"}, where);
    auto group = resolve_group(doc, field(j, "group", where), where + ".group");
    const int n = static_cast<int>(int_from(field(j, "ambient_dim", where), where + ".ambient_dim"));
    std::vector<inertia::SectorInput> sectors;
    const auto sw = where + ".sectors";
    const auto& a = array_from(field(j, "sectors", where), sw);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto w = at(sw, i);
        check_keys(a[i], {"class", "rotations", "betti", "sector_dim"}, w);
        inertia::SectorInput s;
        s.class_rep = static_cast<inertia::Element>(int_from(field(a[i], "class", w), w + ".class"));
        s.rotations = rationals_from(field(a[i], "rotations", w), w + ".rotations");
        const auto& b = field(a[i], "betti", w);
        if (!b.is_object()) throw ValidationError(w + ".betti: expected an object of degree -> rank");
        for (const auto& [deg, rank] : b.items()) {
            int d = 0;
            auto [p, ec] = std::from_chars(deg.data(), deg.data() + deg.size(), d);
            if (ec != std::errc{} || p != deg.data() + deg.size()) {
                throw ValidationError(w + ".betti." + deg + ": degree must be an integer");
            }
            s.betti[d] = int_from(rank, w + ".betti." + deg);
        }
        if (auto* sd = optional_field(a[i], "sector_dim")) {
            s.sector_dim = static_cast<int>(int_from(*sd, w + ".sector_dim"));
        }
        sectors.push_back(std::move(s));
    }
    try {
        return inertia::CRProfile(std::move(group), n, std::move(sectors));
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

inertia::ClassMenu menu_from(const InputDocument& doc, const json& j, const std::string& where) {
    if (j.is_array()) {
        std::vector<inertia::ClassLabel> labels;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const auto w = at(where, i);
            check_keys(j[i], {"label", "order", "inverse"}, w);
            labels.push_back({string_from(field(j[i], "label", w), w + ".label"),
                              static_cast<int>(int_from(field(j[i], "order", w), w + ".order")),
                              string_from(field(j[i], "inverse", w), w + ".inverse")});
        }
        try {
            return inertia::ClassMenu(std::move(labels));
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
    }
    return inertia::ClassMenu::from_group(resolve_group(doc, j, where));
}

expand::SplittingScenario scenario_from(const InputDocument& doc, const json& j, const std::string& where) {
    check_keys(j, {"name", "genus", "insertions", "class_splittings", "max_nodes", "zA", "max_results"},
               where);
    if (!doc.homology) throw ValidationError(where + ": scenarios need a homology section");
    expand::SplittingScenario s;
    s.genus = int_from(field(j, "genus", where), where + ".genus");
    s.max_nodes = static_cast<int>(int_from(field(j, "max_nodes", where), where + ".max_nodes"));
    s.monodromy_menu = doc.relative_menu;
    s.absolute_menu = doc.absolute_menu;
    if (auto* ins = optional_field(j, "insertions")) {
        const auto iw = where + ".insertions";
        std::set<std::string> seen;
        for (std::size_t i = 0; i < array_from(*ins, iw).size(); ++i) {
            const auto w = at(iw, i);
            check_keys((*ins)[i], {"label", "sector"}, w);
            expand::MarkedPoint p;
            p.label = string_from(field((*ins)[i], "label", w), w + ".label");
            if (auto* sec = optional_field((*ins)[i], "sector")) p.sector = string_from(*sec, w + ".sector");
            if (!seen.insert(p.label).second) throw ValidationError(w + ": duplicate label '" + p.label + "'");
            if (!s.absolute_menu.contains(p.sector)) {
                throw ValidationError(w + ".sector: unknown class label '" + p.sector + "'");
            }
            s.insertions.push_back(std::move(p));
        }
    }
    const auto cw = where + ".class_splittings";
    const auto& cs = array_from(field(j, "class_splittings", where), cw);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto w = at(cw, i);
        check_keys(cs[i], {"plus", "minus"}, w);
        auto plus = class_from(field(cs[i], "plus", w), w + ".plus");
        auto minus = class_from(field(cs[i], "minus", w), w + ".minus");
        if (plus.size() != doc.homology->rank() || minus.size() != doc.homology->rank()) {
            throw ValidationError(w + ": class vectors must have length " + std::to_string(doc.homology->rank()));
        }
        s.class_splittings.emplace_back(std::move(plus), std::move(minus));
    }
    if (auto* z = optional_field(j, "zA")) {
        s.zA = rational_from(*z, where + ".zA");
    } else if (!s.class_splittings.empty()) {
        s.zA = doc.homology->z_of(s.class_splittings.front().first);
    }
    if (auto* m = optional_field(j, "max_results")) {
        const auto v = int_from(*m, where + ".max_results");
        if (v < 1) throw ValidationError(where + ".max_results: must be positive");
        s.max_results = static_cast<std::size_t>(v);
    }
    return s;
}

expand::CRBasisZ basis_from(const InputDocument& doc, const json& j, const std::string& where) {
    check_keys(j, {"z_dim", "entries", "duality"}, where);
    std::vector<expand::BasisEntry> entries;
    const auto ew = where + ".entries";
    const auto& a = array_from(field(j, "entries", where), ew);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto w = at(ew, i);
        check_keys(a[i], {"label", "sector", "degree"}, w);
        entries.push_back({string_from(field(a[i], "label", w), w + ".label"),
                           string_from(field(a[i], "sector", w), w + ".sector"),
                           rational_from(field(a[i], "degree", w), w + ".degree")});
    }
    std::vector<std::pair<std::string, std::string>> duality;
    const auto dw = where + ".duality";
    const auto& d = array_from(field(j, "duality", where), dw);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto pair = strings_from(d[i], at(dw, i));
        if (pair.size() != 2) throw ValidationError(at(dw, i) + ": expected a pair of labels");
        duality.emplace_back(pair[0], pair[1]);
    }
    try {
        return expand::CRBasisZ(std::move(entries), std::move(duality),
                                static_cast<int>(int_from(field(j, "z_dim", where), where + ".z_dim")),
                                doc.relative_menu);
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        if (msg.starts_with(where)) throw;
        throw ValidationError(where + ": " + msg);
    }
}

}  // namespace

InputDocument parse_document(const json& j) {
    check_keys(j,
               {"schema", "description", "groups", "profiles", "homology", "menus", "graphs", "scenarios",
                "basis", "moduli", "ledgers"},
               "document");
    const auto schema = string_from(field(j, "schema", "document"), "document.schema");
    if (schema != kSchema) {
        throw ValidationError("document.schema: expected \"" + std::string(kSchema) + "\", got \"" + schema + "\"");
    }
    InputDocument doc;

    if (auto* gs = optional_field(j, "groups")) {
        for (std::size_t i = 0; i < array_from(*gs, "groups").size(); ++i) {
            const auto w = at("groups", i);
            check_keys((*gs)[i], {"name", "group"}, w);
            const auto name = string_from(field((*gs)[i], "name", w), w + ".name");
            for (const auto& [n, _] : doc.groups) {
                if (n == name) throw ValidationError(w + ": duplicate name '" + name + "'");
            }
            doc.groups.emplace_back(name, group_from(field((*gs)[i], "group", w), w + ".group"));
        }
    }
    if (auto* ps = optional_field(j, "profiles")) {
        for (std::size_t i = 0; i < array_from(*ps, "profiles").size(); ++i) {
            const auto w = at("profiles", i);
            const auto name = string_from(field((*ps)[i], "name", w), w + ".name");
            reject_duplicate(doc.profiles, name, w);
            std::string group_name = (*ps)[i].contains("group") && (*ps)[i]["group"].is_string()
                                         ? (*ps)[i]["group"].get<std::string>()
                                         : "inline";
            doc.profiles.push_back({name, group_name, profile_from(doc, (*ps)[i], w)});
        }
    }
    if (auto* h = optional_field(j, "homology")) {
        check_keys(*h, {"rank", "c1", "z_pairing", "effective"}, "homology");
        const auto rank = int_from(field(*h, "rank", "homology"), "homology.rank");
        if (rank < 0) throw ValidationError("homology.rank: must be non-negative");
        std::vector<ClassVector> eff;
        const auto& e = array_from(field(*h, "effective", "homology"), "homology.effective");
        for (std::size_t i = 0; i < e.size(); ++i) eff.push_back(class_from(e[i], at("homology.effective", i)));
        try {
            doc.homology.emplace(static_cast<std::size_t>(rank),
                                 rationals_from(field(*h, "c1", "homology"), "homology.c1"),
                                 rationals_from(field(*h, "z_pairing", "homology"), "homology.z_pairing"),
                                 std::move(eff));
        } catch (const ValidationError& err) {
            const std::string msg = err.what();
            if (msg.starts_with("homology")) throw;
            throw ValidationError("homology: " + msg);
        }
    }
    if (auto* m = optional_field(j, "menus")) {
        check_keys(*m, {"absolute", "relative"}, "menus");
        if (auto* a = optional_field(*m, "absolute")) doc.absolute_menu = menu_from(doc, *a, "menus.absolute");
        if (auto* r = optional_field(*m, "relative")) doc.relative_menu = menu_from(doc, *r, "menus.relative");
    }
    if (auto* gs = optional_field(j, "graphs")) {
        if (!doc.homology) throw ValidationError("graphs: a homology section is required");
        for (std::size_t i = 0; i < array_from(*gs, "graphs").size(); ++i) {
            const auto w = at("graphs", i);
            const auto name = string_from(field((*gs)[i], "name", w), w + ".name");
            reject_duplicate(doc.graphs, name, w);
            doc.graphs.push_back({name, graph_from((*gs)[i], doc.homology->rank(), w)});
        }
    }
    if (auto* ss = optional_field(j, "scenarios")) {
        for (std::size_t i = 0; i < array_from(*ss, "scenarios").size(); ++i) {
            const auto w = at("scenarios", i);
            const auto name = string_from(field((*ss)[i], "name", w), w + ".name");
            reject_duplicate(doc.scenarios, name, w);
            doc.scenarios.push_back({name, scenario_from(doc, (*ss)[i], w)});
        }
    }
    if (auto* b = optional_field(j, "basis")) doc.basis.emplace(basis_from(doc, *b, "basis"));
    if (auto* ms = optional_field(j, "moduli")) {
        for (std::size_t i = 0; i < array_from(*ms, "moduli").size(); ++i) {
            const auto w = at("moduli", i);
            const auto name = string_from(field((*ms)[i], "name", w), w + ".name");
            reject_duplicate(doc.moduli, name, w);
            doc.moduli.push_back({name, moduli_from((*ms)[i], w)});
        }
    }
    if (auto* ls = optional_field(j, "ledgers")) {
        for (std::size_t i = 0; i < array_from(*ls, "ledgers").size(); ++i) {
            const auto w = at("ledgers", i);
            const auto& x = (*ls)[i];
            check_keys(x, {"name", "plus", "minus", "total", "matched_dims"}, w);
            LedgerRequest r;
            r.name = string_from(field(x, "name", w), w + ".name");
            reject_duplicate(doc.ledgers, r.name, w);
            r.plus = string_from(field(x, "plus", w), w + ".plus");
            r.minus = string_from(field(x, "minus", w), w + ".minus");
            r.total = string_from(field(x, "total", w), w + ".total");
            r.matched_dims = rationals_from(field(x, "matched_dims", w), w + ".matched_dims");
            for (const auto* ref : {&r.plus, &r.minus, &r.total}) {
                try {
                    (void)doc.spec(*ref);
                } catch (const ValidationError& e) {
                    throw ValidationError(w + ": " + e.what());
                }
            }
            doc.ledgers.push_back(std::move(r));
        }
    }
    return doc;
}

InputDocument load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(path + ": cannot open file");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
    try {
        return parse_document(j);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------

json to_json(const ClassVector& v) {
    json a = json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

json to_json(const graph::RelGraph& g) {
    json vs = json::array(), es = json::array(), ts = json::array();
    for (const auto& v : g.vertices) {
        vs.push_back({{"genus", v.genus}, {"class", to_json(v.cls)}, {"level", v.level}});
    }
    for (const auto& e : g.edges) {
        json x = {{"kind", kind_to(e.kind)}, {"a", e.a}, {"b", e.b}, {"half_a", e.half_a}, {"half_b", e.half_b}};
        if (e.contact) x["contact"] = contact_to(*e.contact);
        es.push_back(std::move(x));
    }
    for (const auto& t : g.tails) {
        json x = {{"vertex", t.vertex}, {"kind", kind_to(t.kind)}, {"monodromy", t.monodromy}};
        if (t.contact) x["contact"] = contact_to(*t.contact);
        x["label"] = t.label;
        ts.push_back(std::move(x));
    }
    return {{"vertices", vs}, {"edges", es}, {"tails", ts}};
}

graph::RelGraph graph_from(const json& j, std::size_t rank, const std::string& where) {
    check_keys(j, {"name", "vertices", "edges", "tails"}, where);
    graph::RelGraph g;
    const auto vw = where + ".vertices";
    const auto& vs = array_from(field(j, "vertices", where), vw);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto w = at(vw, i);
        check_keys(vs[i], {"genus", "class", "level"}, w);
        graph::Vertex v;
        v.genus = int_from(field(vs[i], "genus", w), w + ".genus");
        v.cls = class_from(field(vs[i], "class", w), w + ".class");
        if (v.cls.size() != rank) {
            throw ValidationError(w + ".class: expected length " + std::to_string(rank));
        }
        if (auto* l = optional_field(vs[i], "level")) v.level = static_cast<int>(int_from(*l, w + ".level"));
        g.vertices.push_back(std::move(v));
    }
    auto vertex_ref = [&](const json& x, const std::string& w) {
        const auto v = int_from(x, w);
        if (v < 0 || static_cast<std::size_t>(v) >= g.vertices.size()) {
            throw ValidationError(w + ": vertex " + std::to_string(v) + " does not exist");
        }
        return static_cast<std::size_t>(v);
    };
    if (auto* es = optional_field(j, "edges")) {
        const auto ew = where + ".edges";
        for (std::size_t i = 0; i < array_from(*es, ew).size(); ++i) {
            const auto w = at(ew, i);
            const auto& x = (*es)[i];
            check_keys(x, {"kind", "a", "b", "half_a", "half_b", "contact"}, w);
            graph::Edge e;
            e.kind = kind_from(field(x, "kind", w), w + ".kind");
            e.a = vertex_ref(field(x, "a", w), w + ".a");
            e.b = vertex_ref(field(x, "b", w), w + ".b");
            if (auto* h = optional_field(x, "half_a")) e.half_a = string_from(*h, w + ".half_a");
            if (auto* h = optional_field(x, "half_b")) e.half_b = string_from(*h, w + ".half_b");
            if (auto* c = optional_field(x, "contact")) e.contact = contact_from(*c, w + ".contact");
            g.edges.push_back(std::move(e));
        }
    }
    if (auto* ts = optional_field(j, "tails")) {
        const auto tw = where + ".tails";
        for (std::size_t i = 0; i < array_from(*ts, tw).size(); ++i) {
            const auto w = at(tw, i);
            const auto& x = (*ts)[i];
            check_keys(x, {"vertex", "kind", "monodromy", "contact", "label"}, w);
            graph::Tail t;
            t.vertex = vertex_ref(field(x, "vertex", w), w + ".vertex");
            t.kind = kind_from(field(x, "kind", w), w + ".kind");
            if (auto* m = optional_field(x, "monodromy")) t.monodromy = string_from(*m, w + ".monodromy");
            if (auto* c = optional_field(x, "contact")) t.contact = contact_from(*c, w + ".contact");
            t.label = string_from(field(x, "label", w), w + ".label");
            g.tails.push_back(std::move(t));
        }
    }
    return g;
}

json to_json(const graph::Diagnostic& d) {
    return {{"rule", d.rule}, {"where", d.where}, {"message", d.message}};
}

json to_json(const graph::StratPoset& p) {
    json nodes = json::array();
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        nodes.push_back({{"key", p.keys[i]}, {"graph", to_json(p.nodes[i])}});
    }
    json covers = json::array();
    for (const auto& [a, b] : p.covers) covers.push_back(json::array({a, b}));
    return {{"nodes", nodes}, {"covers", covers}, {"incomplete", p.incomplete}};
}

graph::StratPoset poset_from(const json& j, std::size_t rank) {
    graph::StratPoset p;
    const auto& nodes = array_from(field(j, "nodes", "poset"), "poset.nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto w = at("poset.nodes", i);
        p.keys.push_back(string_from(field(nodes[i], "key", w), w + ".key"));
        p.nodes.push_back(graph_from(field(nodes[i], "graph", w), rank, w + ".graph"));
    }
    const auto& covers = array_from(field(j, "covers", "poset"), "poset.covers");
    for (std::size_t i = 0; i < covers.size(); ++i) {
        const auto w = at("poset.covers", i);
        const auto& c = array_from(covers[i], w);
        if (c.size() != 2) throw ValidationError(w + ": expected a pair");
        p.covers.emplace_back(static_cast<std::size_t>(int_from(c[0], w)),
                              static_cast<std::size_t>(int_from(c[1], w)));
    }
    const auto& inc = field(j, "incomplete", "poset");
    if (!inc.is_boolean()) throw ValidationError("poset.incomplete: expected a boolean");
    p.incomplete = inc.get<bool>();
    return p;
}

// ---------------------------------------------------------------------------

json to_json(const dimension::ModuliSpec& s) {
    json ins = json::array(), rel = json::array();
    for (const auto& a : s.insertions) ins.push_back({{"sector", a.sector}, {"shift", rational_to(a.shift)}});
    for (const auto& r : s.rel_insertions) {
        rel.push_back({{"contact", contact_to(r.order)}, {"monodromy", r.monodromy}, {"shift", rational_to(r.shift)}});
    }
    return {{"flavor", dimension::to_string(s.flavor)},
            {"n", s.n},
            {"g", s.g},
            {"insertions", ins},
            {"rel_insertions", rel},
            {"c1A", rational_to(s.c1A)},
            {"zA", rational_to(s.zA)}};
}

dimension::ModuliSpec moduli_from(const json& j, const std::string& where) {
    check_keys(j, {"name", "flavor", "n", "g", "insertions", "rel_insertions", "c1A", "zA"}, where);
    dimension::ModuliSpec s;
    try {
        s.flavor = dimension::parse_flavor(string_from(field(j, "flavor", where), where + ".flavor"));
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        if (msg.starts_with(where)) throw;
        throw ValidationError(where + ".flavor: " + msg);
    }
    s.n = static_cast<int>(int_from(field(j, "n", where), where + ".n"));
    s.g = int_from(field(j, "g", where), where + ".g");
    s.c1A = rational_from(field(j, "c1A", where), where + ".c1A");
    if (auto* z = optional_field(j, "zA")) s.zA = rational_from(*z, where + ".zA");
    if (auto* ins = optional_field(j, "insertions")) {
        const auto iw = where + ".insertions";
        for (std::size_t i = 0; i < array_from(*ins, iw).size(); ++i) {
            const auto w = at(iw, i);
            check_keys((*ins)[i], {"sector", "shift"}, w);
            dimension::AbsoluteInsertion a;
            if (auto* sec = optional_field((*ins)[i], "sector")) a.sector = string_from(*sec, w + ".sector");
            if (auto* sh = optional_field((*ins)[i], "shift")) a.shift = rational_from(*sh, w + ".shift");
            s.insertions.push_back(std::move(a));
        }
    }
    if (auto* rel = optional_field(j, "rel_insertions")) {
        const auto rw = where + ".rel_insertions";
        for (std::size_t i = 0; i < array_from(*rel, rw).size(); ++i) {
            const auto w = at(rw, i);
            check_keys((*rel)[i], {"contact", "monodromy", "shift"}, w);
            dimension::RelativeInsertion r{contact_from(field((*rel)[i], "contact", w), w + ".contact"), "0",
                                           Rational(0)};
            if (auto* m = optional_field((*rel)[i], "monodromy")) r.monodromy = string_from(*m, w + ".monodromy");
            if (auto* sh = optional_field((*rel)[i], "shift")) r.shift = rational_from(*sh, w + ".shift");
            s.rel_insertions.push_back(std::move(r));
        }
    }
    return s;
}

json to_json(const dimension::Ledger& l) {
    return {{"d_total", rational_to(l.d_total)},
            {"d_plus", rational_to(l.d_plus)},
            {"d_minus", rational_to(l.d_minus)},
            {"constraint_dims", rationals_to(l.constraint_dims)},
            {"defect", rational_to(l.defect)}};
}

dimension::Ledger ledger_from(const json& j) {
    dimension::Ledger l;
    l.d_total = rational_from(field(j, "d_total", "ledger"), "ledger.d_total");
    l.d_plus = rational_from(field(j, "d_plus", "ledger"), "ledger.d_plus");
    l.d_minus = rational_from(field(j, "d_minus", "ledger"), "ledger.d_minus");
    l.constraint_dims = rationals_from(field(j, "constraint_dims", "ledger"), "ledger.constraint_dims");
    l.defect = rational_from(field(j, "defect", "ledger"), "ledger.defect");
    return l;
}

// ---------------------------------------------------------------------------

json to_json(const expand::Term& t) {
    json I = json::array(), D = json::array();
    for (const auto& b : t.I) I.push_back(b);
    for (const auto& b : t.I_dual) D.push_back(b);
    return {{"glued_key", t.glued_key},
            {"glued", to_json(t.glued)},
            {"gamma_plus", to_json(t.gamma_plus)},
            {"gamma_minus", to_json(t.gamma_minus)},
            {"I", I},
            {"I_dual", D},
            {"ell", rational_to(t.ell)},
            {"aut", t.aut},
            {"coefficient", rational_to(t.coefficient)}};
}

expand::Term term_from(const json& j, std::size_t rank) {
    const std::string w = "term";
    expand::Term t;
    t.glued_key = string_from(field(j, "glued_key", w), w + ".glued_key");
    t.glued = graph_from(field(j, "glued", w), rank, w + ".glued");
    t.gamma_plus = graph_from(field(j, "gamma_plus", w), rank, w + ".gamma_plus");
    t.gamma_minus = graph_from(field(j, "gamma_minus", w), rank, w + ".gamma_minus");
    t.I = strings_from(field(j, "I", w), w + ".I");
    t.I_dual = strings_from(field(j, "I_dual", w), w + ".I_dual");
    t.ell = rational_from(field(j, "ell", w), w + ".ell");
    t.aut = int_from(field(j, "aut", w), w + ".aut");
    t.coefficient = rational_from(field(j, "coefficient", w), w + ".coefficient");
    return t;
}

json terms_to_json(const std::vector<expand::Term>& terms) {
    json a = json::array();
    for (const auto& t : terms) a.push_back(to_json(t));
    return a;
}

std::vector<expand::Term> terms_from(const json& j, std::size_t rank) {
    std::vector<expand::Term> out;
    for (const auto& x : array_from(j, "terms")) out.push_back(term_from(x, rank));
    return out;
}

json partitions_to_json(const std::vector<std::vector<contact::ContactOrder>>& ps) {
    json a = json::array();
    for (const auto& p : ps) {
        json row = json::array();
        for (const auto& c : p) row.push_back(contact_to(c));
        a.push_back(std::move(row));
    }
    return a;
}

std::vector<std::vector<contact::ContactOrder>> partitions_from(const json& j) {
    std::vector<std::vector<contact::ContactOrder>> out;
    const auto& a = array_from(j, "partitions");
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<contact::ContactOrder> row;
        const auto& r = array_from(a[i], at("partitions", i));
        for (std::size_t k = 0; k < r.size(); ++k) row.push_back(contact_from(r[k], at(at("partitions", i), k)));
        out.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------

json to_json(const glue::DemoReport& r) {
    const auto& k = r.constants.constants;
    json conditions = json::array();
    for (const auto& c : r.constants.conditions) {
        conditions.push_back({{"name", c.name}, {"value", c.value}, {"pass", c.pass}, {"witness", c.witness}});
    }
    json s = json::array();
    for (Eigen::Index i = 0; i < r.s.size(); ++i) s.push_back(r.s[i]);
    json out = {{"model", r.model},
                {"constants", {{"C1", k.C1}, {"C2", k.C2}, {"eps1", k.eps1}, {"delta1", k.delta1}, {"K1", k.K1}}},
                {"conditions", conditions},
                {"ordering_ok", r.constants.ordering_ok},
                {"well_separated", r.constants.well_separated},
                {"s", s}};
    if (r.correction) {
        json hist = json::array();
        for (const auto& h : r.correction->history) {
            hist.push_back({{"n", h.n}, {"xi_norm", h.xi_norm}, {"residual", h.residual}});
        }
        out["correction"] = {{"converged", true},
                             {"xi_norm", r.correction->xi.norm()},
                             {"residual", r.correction->residual},
                             {"xi_bound_ok", r.correction->xi_bound_ok},
                             {"history", hist}};
    } else {
        out["correction"] = {{"converged", false}, {"residuals", r.nonconvergent_history}};
    }
    out["dphi"] = {{"probes", r.probes}, {"max_dphi", r.max_dphi}, {"violations", r.dphi_violations}};
    out["injectivity"] = {{"pairs", r.injectivity.pairs}, {"collisions", r.injectivity.collisions.size()}};
    return out;
}

json document(const std::string& kind, json payload) {
    json out = {{"schema", kSchema}, {"kind", kind}};
    out["result"] = std::move(payload);
    return out;
}

}  // namespace orbidegen::io
