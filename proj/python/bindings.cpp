#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbidegen/contact.hpp"
#include "orbidegen/dimension.hpp"
#include "orbidegen/errors.hpp"
#include "orbidegen/expand.hpp"
#include "orbidegen/glue.hpp"
#include "orbidegen/graph.hpp"
#include "orbidegen/inertia.hpp"
#include "orbidegen/io.hpp"
#include "orbidegen/rational.hpp"

namespace py = pybind11;
using namespace orbidegen;

// Rational <-> fractions.Fraction
namespace pybind11::detail {

template <>
struct type_caster<Rational> {
    PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

    bool load(handle src, bool) {
        if (!src || !py::hasattr(src, "numerator") || !py::hasattr(src, "denominator")) return false;
        try {
            value = Rational(src.attr("numerator").cast<std::int64_t>(), src.attr("denominator").cast<std::int64_t>());
        } catch (const std::exception&) {
            return false;
        }
        return true;
    }

    static handle cast(const Rational& q, return_value_policy, handle) {
        static auto fraction = py::module_::import("fractions").attr("Fraction");
        return fraction(q.numerator(), q.denominator()).release();
    }
};

}  // namespace pybind11::detail

namespace {

io::InputDocument parse(const std::string& text) { return io::parse_document(io::json::parse(text)); }

py::list sectors(const std::string& text) {
    py::list out;
    for (const auto& np : parse(text).profiles) {
        const auto& p = np.profile;
        py::list shifts;
        for (const auto& s : p.sectors()) shifts.append(py::cast(s.shift));
        auto report = inertia::pairing_check(p);
        py::list violations;
        for (const auto& v : report.violations) violations.append(v.describe());
        py::dict d;
        d["name"] = np.name;
        d["shifts"] = shifts;
        d["pairing_ok"] = report.ok();
        d["violations"] = violations;
        if (report.ok()) d["poincare"] = inertia::cr_poincare_polynomial(p);
        out.append(d);
    }
    return out;
}

std::vector<std::vector<int>> classes(const std::string& group) {
    std::vector<std::vector<int>> out;
    for (const auto& c : inertia::conjugacy_classes(io::group_from(io::json::parse(group), "group"))) {
        out.push_back(c.members);
    }
    return out;
}

std::vector<std::string> validate_graph(const std::string& text, const std::string& name) {
    auto doc = parse(text);
    std::vector<std::string> out;
    for (const auto& d : graph::validate(doc.graph(name), doc.context())) out.push_back(d.describe());
    return out;
}

std::pair<std::int64_t, graph::ClassVector> genus_and_class(const std::string& text, const std::string& name) {
    auto doc = parse(text);
    const auto& g = doc.graph(name);
    return {graph::genus(g), graph::total_class(g)};
}

std::string poset(const std::string& text, const std::string& name, int max_vertices, int max_levels,
                  std::size_t max_nodes) {
    auto doc = parse(text);
    graph::PosetBounds b{max_vertices, max_levels, max_nodes};
    return io::to_json(graph::stratification_poset(doc.graph(name), doc.context(), b)).dump();
}

Rational virdim(const std::string& spec) { return dimension::virdim(io::moduli_from(io::json::parse(spec), "moduli")); }

std::string ledger(const std::string& text, const std::string& name) {
    auto doc = parse(text);
    for (const auto& l : doc.ledgers) {
        if (l.name != name) continue;
        return io::to_json(dimension::splitting_ledger(doc.spec(l.plus), doc.spec(l.minus), l.matched_dims,
                                                       doc.spec(l.total), doc.relative_menu))
            .dump();
    }
    throw ValidationError("no ledger named '" + name + "'");
}

std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> partitions(const Rational& total,
                                                                           const std::vector<std::int64_t>& orders) {
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> out;
    for (const auto& tuple : contact::enumerate_partitions(total, orders)) {
        auto& row = out.emplace_back();
        for (const auto& c : tuple) row.emplace_back(c.k(), c.r());
    }
    return out;
}

std::pair<std::int64_t, Rational> gluing(const std::vector<std::pair<std::int64_t, std::int64_t>>& orders) {
    std::vector<contact::ContactOrder> cs;
    for (auto [k, r] : orders) cs.emplace_back(k, r);
    auto d = expand::gluing_degrees(cs);
    return {d.kappa, d.ell};
}

std::string expand_terms(const std::string& text, const std::string& scenario, bool swap,
                         std::optional<Rational> degree) {
    auto doc = parse(text);
    if (!doc.basis) throw ValidationError("document has no basis section");
    if (!doc.homology) throw ValidationError("document has no homology section");
    expand::ExpandOptions opt;
    opt.total_degree = degree;
    auto terms = expand::expand(doc.scenario(scenario), *doc.basis, *doc.homology, opt);
    if (swap) {
        terms = expand::side_swap(terms);
        expand::sort_terms(terms);
    }
    return io::terms_to_json(terms).dump();
}

std::string glue_demo(const std::string& model, double tau, double scale, int samples, std::uint64_t seed) {
    return io::to_json(glue::run_demo(glue::model_by_name(model, tau, scale), samples, seed)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "orbidegen core bindings; documents are passed as JSON text";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);

    m.def("sectors", &sectors, py::arg("document"));
    m.def("conjugacy_classes", &classes, py::arg("group"));
    m.def("degree_shift", [](const std::vector<Rational>& r) { return inertia::degree_shift(r); }, py::arg("rotations"));
    m.def("validate_graph", &validate_graph, py::arg("document"), py::arg("name"));
    m.def("genus_and_class", &genus_and_class, py::arg("document"), py::arg("name"));
    m.def("stratification_poset", &poset, py::arg("document"), py::arg("name"), py::arg("max_vertices") = 3,
          py::arg("max_levels") = 2, py::arg("max_nodes") = 20000);
    m.def("virdim", &virdim, py::arg("spec"));
    m.def("ledger", &ledger, py::arg("document"), py::arg("name"));
    m.def("enumerate_partitions", &partitions, py::arg("total"), py::arg("orders"));
    m.def("gluing_degrees", &gluing, py::arg("orders"));
    m.def("expand", &expand_terms, py::arg("document"), py::arg("scenario"), py::arg("swap") = false,
          py::arg("degree") = std::nullopt);
    m.def("glue_demo", &glue_demo, py::arg("model"), py::arg("tau") = 0.25, py::arg("scale") = 1.0,
          py::arg("samples") = 200, py::arg("seed") = 1);
}
