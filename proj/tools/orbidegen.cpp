// orbidegen: command-line front end over the orbidegen library.
//
// Exit codes: 0 success, 1 validation error, 2 usage error, 3 resource bound.

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "orbidegen/contact.hpp"
#include "orbidegen/dimension.hpp"
#include "orbidegen/errors.hpp"
#include "orbidegen/expand.hpp"
#include "orbidegen/glue.hpp"
#include "orbidegen/graph.hpp"
#include "orbidegen/inertia.hpp"
#include "orbidegen/io.hpp"

using namespace orbidegen;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

/// Left-aligned plain-text table.
class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& os) const {
        std::vector<std::size_t> width(header_.size(), 0);
        auto measure = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], display_width(r[i]));
        };
        measure(header_);
        for (const auto& r : rows_) measure(r);
        auto line = [&](const std::vector<std::string>& r) {
            std::string s;
            for (std::size_t i = 0; i < r.size(); ++i) {
                s += r[i];
                if (i + 1 < r.size()) s += std::string(width[i] - display_width(r[i]) + 2, ' ');
            }
            os << s << "\n";
        };
        line(header_);
        std::vector<std::string> rule;
        for (auto w : width) rule.emplace_back(w, '-');
        line(rule);
        for (const auto& r : rows_) line(r);
    }

private:
    static std::size_t display_width(const std::string& s) {
        std::size_t n = 0;
        for (unsigned char c : s) n += (c & 0xC0) != 0x80;
        return n;
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
    return s;
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

void emit_json(std::ostream& os, const std::string& kind, json payload) {
    os << io::document(kind, std::move(payload)).dump(2) << "\n";
}

void print_graph(std::ostream& os, const graph::RelGraph& g) {
    os << "vertices\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const auto& v = g.vertices[i];
        os << "  v" << i << "  g=" << v.genus << "  A=" << graph::to_string(v.cls) << "  level=" << v.level << "\n";
    }
    os << "edges\n";
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        os << "  e" << i << "  " << (e.kind == graph::Kind::absolute ? "absolute" : "relative") << "  v" << e.a
           << "--v" << e.b << "  (" << e.half_a << "),(" << e.half_b << ")";
        if (e.contact) os << "  l=" << contact::to_string(*e.contact);
        os << "\n";
    }
    os << "tails\n";
    for (std::size_t i = 0; i < g.tails.size(); ++i) {
        const auto& t = g.tails[i];
        os << "  t" << i << "  " << (t.kind == graph::Kind::absolute ? "absolute" : "relative") << "  v" << t.vertex
           << "  (" << t.monodromy << ")";
        if (t.contact) os << "  l=" << contact::to_string(*t.contact);
        os << "  " << t.label << "\n";
    }
}

std::string side_summary(const graph::RelGraph& g) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const auto& v = g.vertices[i];
        std::vector<std::string> marks;
        for (const auto& t : g.tails) {
            if (t.vertex == i && t.kind == graph::Kind::absolute) marks.push_back(t.label);
        }
        parts.push_back("g" + std::to_string(v.genus) + graph::to_string(v.cls) +
                        (marks.empty() ? "" : "{" + join(marks, ",") + "}"));
    }
    return parts.empty() ? "-" : join(parts, "+");
}

// ---------------------------------------------------------------------------

struct Common {
    std::string in;
    bool as_json = false;
};

int cmd_sectors(const Common& c, const std::string& only, std::ostream& out) {
    const auto doc = io::load_document(c.in);
    if (doc.profiles.empty()) throw ValidationError(c.in + ": document has no profiles");
    bool all_ok = true;
    json reports = json::array();
    for (const auto& np : doc.profiles) {
        if (!only.empty() && np.name != only) continue;
        const auto& p = np.profile;
        const auto report = inertia::pairing_check(p);
        all_ok = all_ok && report.ok();

        json rows = json::array();
        Table t({"class", "ord", "rotations", "shift", "shift+inverse", "nonzero", "sector_dim"});
        for (std::size_t i = 0; i < p.classes().size(); ++i) {
            const auto& s = p.sectors()[i];
            const auto& inv = p.sectors()[p.inverse_index(i)];
            const auto nonzero = std::count_if(s.rotations.begin(), s.rotations.end(),
                                               [](const Rational& q) { return q != Rational(0); });
            std::vector<std::string> rots;
            for (const auto& q : s.rotations) rots.push_back(to_string(q));
            t.add({std::to_string(p.classes()[i].representative), std::to_string(p.classes()[i].ord),
                   "(" + join(rots, ",") + ")", to_string(s.shift), to_string(s.shift + inv.shift),
                   std::to_string(nonzero), std::to_string(s.sector_dim)});
            rows.push_back({{"class", p.classes()[i].representative},
                            {"ord", p.classes()[i].ord},
                            {"rotations", rots},
                            {"shift", to_string(s.shift)},
                            {"shift_plus_inverse", to_string(s.shift + inv.shift)},
                            {"nonzero_rotations", nonzero},
                            {"sector_dim", s.sector_dim}});
        }
        json poly = json::array();
        std::vector<std::string> terms;
        if (report.ok()) {
            for (const auto& [deg, mult] : inertia::cr_poincare_polynomial(p)) {
                poly.push_back({{"degree", to_string(deg)}, {"multiplicity", mult}});
                const auto e = to_string(deg);
                terms.push_back(std::to_string(mult) + "*t^" + (is_integer(deg) ? e : "(" + e + ")"));
            }
        }
        json violations = json::array();
        for (const auto& v : report.violations) {
            violations.push_back({{"class", v.representative}, {"degree", v.degree}, {"reason", v.reason}});
        }
        reports.push_back({{"profile", np.name},
                           {"group_order", p.group().order()},
                           {"ambient_dim", p.ambient_dim()},
                           {"sectors", rows},
                           {"pairing_ok", report.ok()},
                           {"violations", violations},
                           {"cr_poincare", poly}});
        if (!c.as_json) {
            out << "profile " << np.name << "  (group order " << p.group().order() << ", n=" << p.ambient_dim()
                << ")\n";
            t.print(out);
            if (report.ok()) {
                out << "CR Poincare polynomial: " << join(terms, " + ") << "\n";
                out << "pairing: ok\n\n";
            } else {
                out << "pairing: FAILED\n";
                for (const auto& v : report.violations) out << "  " << v.describe() << "\n";
                out << "\n";
            }
        }
    }
    if (!only.empty() && reports.empty()) throw ValidationError("no profile named '" + only + "'");
    if (c.as_json) emit_json(out, "sectors", reports);
    return all_ok ? kOk : kValidation;
}

std::vector<const io::NamedGraph*> select_graphs(const io::InputDocument& doc, const std::string& name) {
    std::vector<const io::NamedGraph*> out;
    for (const auto& g : doc.graphs) {
        if (name.empty() || g.name == name) out.push_back(&g);
    }
    if (out.empty()) throw ValidationError(name.empty() ? "document has no graphs" : "no graph named '" + name + "'");
    return out;
}

int cmd_graphs_validate(const Common& c, const std::string& name, std::ostream& out) {
    const auto doc = io::load_document(c.in);
    const auto ctx = doc.context();
    bool all_ok = true;
    json results = json::array();
    for (const auto* g : select_graphs(doc, name)) {
        const auto diags = graph::validate(g->graph, ctx);
        all_ok = all_ok && diags.empty();
        json d = json::array();
        for (const auto& x : diags) d.push_back(io::to_json(x));
        results.push_back({{"graph", g->name}, {"valid", diags.empty()}, {"diagnostics", d}});
        if (!c.as_json) {
            out << g->name << ": " << (diags.empty() ? "valid" : "INVALID") << "\n";
            for (const auto& x : diags) out << "  " << x.describe() << "\n";
        }
    }
    if (c.as_json) emit_json(out, "graphs.validate", results);
    return all_ok ? kOk : kValidation;
}

int cmd_graphs_genus(const Common& c, const std::string& name, std::ostream& out) {
    const auto doc = io::load_document(c.in);
    Table t({"graph", "V", "E", "components", "genus", "bullet_genus", "class"});
    json results = json::array();
    for (const auto* g : select_graphs(doc, name)) {
        const auto& x = g->graph;
        const bool connected = graph::is_connected(x);
        const auto bullet = graph::bullet_genus(x);
        json r = {{"graph", g->name},
                  {"vertices", x.vertices.size()},
                  {"edges", x.edges.size()},
                  {"components", graph::component_count(x)}};
        r["genus"] = connected ? json(graph::genus(x)) : json(nullptr);
        r["bullet_genus"] = bullet;
        r["class"] = io::to_json(graph::total_class(x));
        results.push_back(r);
        t.add({g->name, std::to_string(x.vertices.size()), std::to_string(x.edges.size()),
               std::to_string(graph::component_count(x)), connected ? std::to_string(graph::genus(x)) : "-",
               std::to_string(bullet), graph::to_string(graph::total_class(x))});
    }
    if (c.as_json) {
        emit_json(out, "graphs.genus", results);
    } else {
        t.print(out);
    }
    return kOk;
}

int cmd_graphs_contract(const Common& c, const std::string& name, std::optional<std::size_t> edge,
                        std::optional<int> level, bool dot, std::ostream& out) {
    if (edge.has_value() == level.has_value()) {
        throw CLI::ValidationError("graphs contract", "exactly one of --edge and --level is required");
    }
    if (name.empty()) throw CLI::ValidationError("graphs contract", "--graph is required");
    const auto doc = io::load_document(c.in);
    const auto& g = doc.graph(name);
    const auto ctx = doc.context();
    auto diags = graph::validate(g, ctx);
    if (!diags.empty()) throw ValidationError(name + ": " + diags.front().describe());
    const auto h = edge ? graph::contract_edge(g, *edge) : graph::contract_level(g, *level);
    if (dot) {
        out << graph::to_dot(h, name + "_contracted");
    } else if (c.as_json) {
        emit_json(out, "graphs.contract", {{"graph", name}, {"result", io::to_json(h)}});
    } else {
        out << name << " contracted along " << (edge ? "edge " + std::to_string(*edge) : "level " + std::to_string(*level))
            << "\n";
        print_graph(out, h);
    }
    return kOk;
}

int cmd_graphs_poset(const Common& c, const std::string& name, const graph::PosetBounds& bounds, bool dot,
                     std::ostream& out) {
    if (name.empty()) throw CLI::ValidationError("graphs poset", "--graph is required");
    const auto doc = io::load_document(c.in);
    const auto p = graph::stratification_poset(doc.graph(name), doc.context(), bounds);
    if (dot) {
        out << graph::to_dot(p, name);
    } else if (c.as_json) {
        emit_json(out, "graphs.poset", io::to_json(p));
    } else {
        out << "poset of " << name << ": " << p.nodes.size() << " nodes, " << p.covers.size() << " covers"
            << (p.incomplete ? " (INCOMPLETE: node cap reached)" : "") << "\n";
        Table t({"node", "V", "E", "levels", "genera", "classes"});
        for (std::size_t i = 0; i < p.nodes.size(); ++i) {
            const auto& g = p.nodes[i];
            int levels = 0;
            std::vector<std::string> gs, cs;
            for (const auto& v : g.vertices) {
                levels = std::max(levels, v.level + 1);
                gs.push_back(std::to_string(v.genus));
                cs.push_back(graph::to_string(v.cls));
            }
            t.add({"n" + std::to_string(i), std::to_string(g.vertices.size()), std::to_string(g.edges.size()),
                   std::to_string(levels), join(gs, ","), join(cs, ",")});
        }
        t.print(out);
        out << "covers (finer -> coarser)\n";
        for (const auto& [a, b] : p.covers) out << "  n" << a << " -> n" << b << "\n";
    }
    return p.incomplete ? kResource : kOk;
}

int cmd_dim_virdim(const Common& c, const std::string& name, std::ostream& out) {
    const auto doc = io::load_document(c.in);
    Table t({"moduli", "flavor", "n", "g", "m", "k", "virdim"});
    json results = json::array();
    for (const auto& m : doc.moduli) {
        if (!name.empty() && m.name != name) continue;
        const auto d = dimension::virdim(m.spec);
        results.push_back({{"moduli", m.name}, {"spec", io::to_json(m.spec)}, {"virdim", io::rational_to(d)}});
        t.add({m.name, dimension::to_string(m.spec.flavor), std::to_string(m.spec.n), std::to_string(m.spec.g),
               std::to_string(m.spec.insertions.size()), std::to_string(m.spec.rel_insertions.size()), to_string(d)});
    }
    if (results.empty()) throw ValidationError(name.empty() ? "document has no moduli" : "no moduli named '" + name + "'");
    if (c.as_json) {
        emit_json(out, "dim.virdim", results);
    } else {
        t.print(out);
    }
    return kOk;
}

int cmd_dim_ledger(const Common& c, const std::string& name, std::ostream& out) {
    const auto doc = io::load_document(c.in);
    Table t({"ledger", "d_plus", "d_minus", "sum_dims", "d_total", "defect"});
    json results = json::array();
    for (const auto& r : doc.ledgers) {
        if (!name.empty() && r.name != name) continue;
        const auto l = dimension::splitting_ledger(doc.spec(r.plus), doc.spec(r.minus), r.matched_dims,
                                                   doc.spec(r.total), doc.relative_menu);
        results.push_back({{"ledger", r.name}, {"result", io::to_json(l)}});
        t.add({r.name, to_string(l.d_plus), to_string(l.d_minus), to_string(sum(l.constraint_dims)),
               to_string(l.d_total), to_string(l.defect)});
    }
    if (results.empty()) throw ValidationError(name.empty() ? "document has no ledgers" : "no ledger named '" + name + "'");
    if (c.as_json) {
        emit_json(out, "dim.ledger", results);
    } else {
        t.print(out);
    }
    return kOk;
}

int cmd_partitions(const std::string& total_text, const std::string& orders_text, bool as_json, std::ostream& out) {
    const auto total = parse_rational(total_text);
    std::vector<std::int64_t> orders;
    std::stringstream ss(orders_text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            orders.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--orders", "malformed order '" + item + "'");
        }
    }
    std::vector<std::vector<contact::ContactOrder>> ps;
    try {
        ps = contact::enumerate_partitions(total, orders);
    } catch (const DomainError& e) {
        throw ValidationError(e.what());
    }
    if (as_json) {
        emit_json(out, "partitions",
                  {{"total", io::rational_to(total)}, {"orders", orders}, {"tuples", io::partitions_to_json(ps)}});
        return kOk;
    }
    for (const auto& p : ps) {
        std::vector<std::string> xs;
        for (const auto& c : p) xs.push_back(contact::to_string(c));
        out << "(" << join(xs, ", ") << ")\n";
    }
    out << ps.size() << " tuples\n";
    return kOk;
}

int cmd_expand(const Common& c, const std::string& name, const std::string& degree, bool swap, std::ostream& out) {
    const auto doc = io::load_document(c.in);
    if (!doc.basis) throw ValidationError(c.in + ": document has no basis section");
    if (doc.scenarios.empty()) throw ValidationError(c.in + ": document has no scenarios");
    const auto& sc = name.empty() ? doc.scenarios.front() : *std::find_if(doc.scenarios.begin(), doc.scenarios.end(),
                                                                          [&](const auto& s) { return s.name == name; });
    if (!name.empty() && sc.name != name) throw ValidationError("no scenario named '" + name + "'");
    expand::ExpandOptions opt;
    if (!degree.empty()) opt.total_degree = parse_rational(degree);
    auto terms = expand::expand(sc.scenario, *doc.basis, *doc.homology, opt);
    if (swap) terms = expand::side_swap(terms);

    if (c.as_json) {
        emit_json(out, "expand", {{"scenario", sc.name}, {"terms", io::terms_to_json(terms)}});
        return kOk;
    }
    out << "scenario " << sc.name << ": " << terms.size() << " terms" << (swap ? " (sides swapped)" : "") << "\n";
    Table t({"#", "coefficient", "ell", "aut", "nodes", "plus", "minus", "I", "I_dual"});
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& x = terms[i];
        std::vector<std::string> nodes;
        for (const auto& e : x.glued.edges) nodes.push_back(contact::to_string(*e.contact) + "(" + e.half_a + ")");
        t.add({std::to_string(i), to_string(x.coefficient), to_string(x.ell), std::to_string(x.aut),
               nodes.empty() ? "-" : join(nodes, ","), side_summary(x.gamma_plus), side_summary(x.gamma_minus),
               "[" + join(x.I, ",") + "]", "[" + join(x.I_dual, ",") + "]"});
    }
    t.print(out);
    return kOk;
}

int cmd_glue_demo(const std::string& model, double tau, double scale, int samples, std::uint64_t seed, bool as_json,
                  std::ostream& out) {
    const auto m = glue::model_by_name(model, tau, scale);
    const auto r = glue::run_demo(m, samples, seed);
    if (as_json) {
        emit_json(out, "glue.demo", io::to_json(r));
        return kOk;
    }
    const auto& k = r.constants.constants;
    out << "model " << r.model << "  (N=" << m.system.N << ", F=" << m.system.F << ", d=" << m.chart.d << ")\n\n";
    out << "constants\n";
    Table kt({"C1", "C2", "eps1", "delta1", "K1"});
    kt.add({fmt_double(k.C1), fmt_double(k.C2), fmt_double(k.eps1), fmt_double(k.delta1), fmt_double(k.K1)});
    kt.print(out);
    out << "ordering eps1 <= delta1 <= C2: " << (r.constants.ordering_ok ? "ok" : "FLAGGED") << "\n";
    out << "factor-10 separation: " << (r.constants.well_separated ? "ok" : "FLAGGED") << "\n\n";
    out << "conditions\n";
    Table ct({"condition", "value", "status", "witness"});
    for (const auto& cnd : r.constants.conditions) {
        ct.add({cnd.name, fmt_double(cnd.value), cnd.pass ? "pass" : "fail", cnd.witness});
    }
    ct.print(out);
    out << "\ncorrection at s=(";
    for (Eigen::Index i = 0; i < r.s.size(); ++i) out << (i ? "," : "") << fmt_double(r.s[i]);
    out << ")\n";
    if (r.correction) {
        Table it({"n", "|xi_n|", "residual"});
        for (const auto& h : r.correction->history) {
            it.add({std::to_string(h.n), fmt_double(h.xi_norm), fmt_double(h.residual)});
        }
        it.print(out);
        out << "correction bound |xi| = " << fmt_double(r.correction->xi.norm()) << " <= 2 eps1 = " << fmt_double(2 * k.eps1)
            << ": " << (r.correction->xi_bound_ok ? "ok" : "VIOLATED") << "\n";
    } else {
        out << "no convergence; residuals:";
        for (double x : r.nonconvergent_history) out << " " << fmt_double(x);
        out << "\ncorrection bound: not reached\n";
    }
    out << "chart derivative: max |DPhi| over " << r.probes << " probes = " << fmt_double(r.max_dphi) << ": "
        << (r.dphi_violations == 0 ? "ok" : std::to_string(r.dphi_violations) + " violations") << "\n";
    out << "injectivity: " << r.injectivity.collisions.size() << " collisions in " << r.injectivity.pairs
        << " pairs\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbidegen: orbifold degeneration bookkeeping"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "orbidegen 1.0");

    Common common;
    auto add_common = [&](CLI::App* sub, bool needs_input = true) {
        if (needs_input) sub->add_option("--in", common.in, "Input document (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_flag("--json", common.as_json, "Emit JSON instead of text");
    };

    std::string name;
    std::function<int()> action;

    auto* sectors = app.add_subcommand("sectors", "Degree shifts, CR Poincare polynomial and pairing check");
    add_common(sectors);
    sectors->add_option("--profile", name, "Only this profile");
    sectors->callback([&] { action = [&] { return cmd_sectors(common, name, std::cout); }; });

    auto* graphs = app.add_subcommand("graphs", "Relative dual graphs");
    graphs->require_subcommand(1);
    auto* gv = graphs->add_subcommand("validate", "Check every graph rule");
    add_common(gv);
    gv->add_option("--graph", name, "Only this graph");
    gv->callback([&] { action = [&] { return cmd_graphs_validate(common, name, std::cout); }; });

    auto* gg = graphs->add_subcommand("genus", "Genus, bullet genus and total class");
    add_common(gg);
    gg->add_option("--graph", name, "Only this graph");
    gg->callback([&] { action = [&] { return cmd_graphs_genus(common, name, std::cout); }; });

    std::optional<std::size_t> edge;
    std::optional<int> level;
    bool dot = false;
    auto* gc = graphs->add_subcommand("contract", "Contract one edge or one pair of levels");
    add_common(gc);
    gc->add_option("--graph", name, "Graph name")->required();
    gc->add_option("--edge", edge, "Absolute edge index");
    gc->add_option("--level", level, "Lower level of the pair to collapse");
    gc->add_flag("--dot", dot, "Emit Graphviz DOT");
    gc->callback([&] { action = [&] { return cmd_graphs_contract(common, name, edge, level, dot, std::cout); }; });

    graph::PosetBounds bounds;
    auto* gp = graphs->add_subcommand("poset", "Stratification poset below a one-vertex graph");
    add_common(gp);
    gp->add_option("--graph", name, "One-vertex top graph")->required();
    gp->add_option("--max-vertices", bounds.max_vertices, "Vertex bound")->capture_default_str();
    gp->add_option("--max-levels", bounds.max_levels, "Level bound")->capture_default_str();
    gp->add_option("--max-nodes", bounds.max_nodes, "Node cap")->capture_default_str();
    gp->add_flag("--dot", dot, "Emit Graphviz DOT");
    gp->callback([&] { action = [&] { return cmd_graphs_poset(common, name, bounds, dot, std::cout); }; });

    auto* dim = app.add_subcommand("dim", "Virtual dimensions");
    dim->require_subcommand(1);
    auto* dv = dim->add_subcommand("virdim", "Virtual dimension of each moduli spec");
    add_common(dv);
    dv->add_option("--moduli", name, "Only this spec");
    dv->callback([&] { action = [&] { return cmd_dim_virdim(common, name, std::cout); }; });
    auto* dl = dim->add_subcommand("ledger", "Dimension ledger of a splitting");
    add_common(dl);
    dl->add_option("--ledger", name, "Only this ledger");
    dl->callback([&] { action = [&] { return cmd_dim_ledger(common, name, std::cout); }; });

    std::string total, orders;
    auto* parts = app.add_subcommand("partitions", "Contact-order tuples with a given sum");
    add_common(parts, false);
    parts->add_option("--total", total, "Total contact, e.g. 2 or 3/2")->required();
    parts->add_option("--orders", orders, "Comma-separated slot orders r_j")->required();
    parts->callback([&] { action = [&] { return cmd_partitions(total, orders, common.as_json, std::cout); }; });

    std::string degree;
    bool swap = false;
    auto* ex = app.add_subcommand("expand", "Terms of the degeneration formula");
    add_common(ex);
    ex->add_option("--scenario", name, "Scenario name (default: first)");
    ex->add_option("--degree", degree, "Keep only node insertions of this total CR degree");
    ex->add_flag("--swap", swap, "Exchange the sides of every term");
    ex->callback([&] { action = [&] { return cmd_expand(common, name, degree, swap, std::cout); }; });

    std::string model;
    double tau = 0.25, scale = 1.0;
    int samples = 200;
    std::uint64_t seed = 1;
    auto* glue_cmd = app.add_subcommand("glue", "Finite-dimensional gluing sandbox");
    glue_cmd->require_subcommand(1);
    auto* demo = glue_cmd->add_subcommand("demo", "Constants, correction and chart probes for a builtin model");
    add_common(demo, false);
    demo->add_option("model", model, "sphere, node or linear")->required();
    demo->add_option("--tau", tau, "Node smoothing parameter")->capture_default_str();
    demo->add_option("--scale", scale, "Chart scale")->capture_default_str();
    demo->add_option("--samples", samples, "Samples for constant estimation")->capture_default_str();
    demo->add_option("--seed", seed, "Random seed")->capture_default_str();
    demo->callback([&] {
        action = [&] { return cmd_glue_demo(model, tau, scale, samples, seed, common.as_json, std::cout); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        return action();
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ResourceError& e) {
        std::cerr << "resource bound: " << e.what() << "\n";
        return kResource;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kValidation;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kValidation;
    } catch (const NonConvergence& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return kValidation;
    }
}
