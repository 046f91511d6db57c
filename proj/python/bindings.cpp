#include "ultraharmonic/apsearch.hpp"
#include "ultraharmonic/error.hpp"
#include "ultraharmonic/experiments.hpp"
#include "ultraharmonic/harmonic.hpp"
#include "ultraharmonic/report.hpp"
#include "ultraharmonic/syndetic.hpp"
#include "ultraharmonic/ultra.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ultraharmonic;

namespace {

// Results cross the boundary as plain dicts/lists, the same shape as the
// CLI's JSON records.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

FilterBase make_base(const std::vector<SetExpr>& sets, Nat horizon) { return FilterBase::canonical(sets, horizon); }

py::object witness(const std::optional<APWitness>& w)
{
    if (!w) return py::none();
    return py::make_tuple(w->start, w->diff, w->length);
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Harmonic and piecewise syndetic sets of positive integers";
    m.attr("__version__") = ULTRAHARMONIC_VERSION;
    m.attr("REPORT_SCHEMA") = kReportSchema;

    static py::handle error = py::exception<Error>(m, "UltraharmonicError", PyExc_ValueError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(error.ptr(), (std::string(kind_name(e.kind())) + ": " + e.what()).c_str());
        }
    });

    py::class_<SetExpr>(m, "SetExpr")
        .def(py::init([](const std::string& text) { return parse(text); }), py::arg("text"))
        .def_property_readonly("kind", [](const SetExpr& e) { return kind_name(e.kind()); })
        .def("__contains__", [](const SetExpr& e, Nat n) { return member(e, n); })
        .def("enumerate", [](const SetExpr& e, Nat horizon) { return enumerate(e, horizon); }, py::arg("horizon"))
        .def("take", [](const SetExpr& e, std::size_t count, Nat horizon) { return take(e, count, horizon); },
             py::arg("count"), py::arg("horizon") = Nat{10'000'000})
        .def("simplify", [](const SetExpr& e) { return simplify(e); })
        .def("shift", [](const SetExpr& e, Nat s) { return shift(e, s); })
        .def("left_shift", [](const SetExpr& e, Nat x) { return left_shift(e, x); })
        .def("__eq__", [](const SetExpr& a, const SetExpr& b) { return a == b; })
        .def("__hash__", [](const SetExpr& e) { return py::hash(py::str(print(e))); })
        .def("__str__", [](const SetExpr& e) { return print(e); })
        .def("__repr__", [](const SetExpr& e) { return "SetExpr('" + print(e) + "')"; });
    py::implicitly_convertible<py::str, SetExpr>();

    m.def("parse", [](const std::string& text) { return parse(text); }, py::arg("text"));
    m.def("contains", [](const SetExpr& a, const SetExpr& b, Nat horizon) { return to_py(to_json(contains(a, b, horizon))); },
          py::arg("a"), py::arg("b"), py::arg("horizon") = Nat{10'000},
          "Is b a subset of a? Yes by derivation, No by counterexample.");

    m.def(
        "classify",
        [](const SetExpr& e, bool diagnostics, const std::vector<Nat>& checkpoints) {
            ClassifyOptions o;
            o.diagnostics = diagnostics;
            if (!checkpoints.empty()) o.limits.checkpoints = checkpoints;
            return to_py(to_json(classify(e, o)));
        },
        py::arg("e"), py::arg("diagnostics") = true, py::arg("checkpoints") = std::vector<Nat>{1'000, 10'000, 100'000});
    m.def(
        "partial_sums",
        [](const SetExpr& e, const std::vector<Nat>& checkpoints, bool exact) {
            return to_py(to_json(partial_sums(e, checkpoints, exact)));
        },
        py::arg("e"), py::arg("checkpoints"), py::arg("exact") = false);
    m.def(
        "check_translation_inequality",
        [](const SetExpr& e, Nat s, std::size_t n) { return to_py(to_json(check_translation_inequality(e, s, n))); },
        py::arg("e"), py::arg("s"), py::arg("n"));
    m.def(
        "hindman_identity_check", [](Nat a, Nat x) { return hindman_identity_check(a, x).equal; }, py::arg("a"),
        py::arg("x"));
    m.def("correction_series", &correction_series, py::arg("e"), py::arg("x"), py::arg("horizon"));
    m.def(
        "partition_mod",
        [](const SetExpr& e, Nat modulus) {
            ClassifyOptions o;
            o.diagnostics = false;
            py::list out;
            for (const auto& c : partition_classify(e, ResidueMod{modulus}, o)) {
                py::dict d;
                d["label"] = c.label;
                d["members"] = c.members;
                d["verdict"] = to_py(to_json(c.verdict));
                out.append(d);
            }
            return out;
        },
        py::arg("e"), py::arg("modulus"));
    m.def(
        "anharmonic_subset",
        [](const SetExpr& a, const SetExpr& b, std::size_t count) { return anharmonic_subset(a, b, count).values; },
        py::arg("a"), py::arg("b"), py::arg("count"));

    m.def(
        "classify_psyndetic",
        [](const SetExpr& e, Nat certificate_bound) {
            return to_py(to_json(classify_psyndetic(e, {true, 100'000, certificate_bound})));
        },
        py::arg("e"), py::arg("certificate_bound") = Nat{10});
    m.def(
        "gap_profile", [](const SetExpr& e, Nat horizon) { return to_py(to_json(gap_profile(e, horizon))); },
        py::arg("e"), py::arg("horizon"));
    m.def(
        "prime_gap_certificate", [](Nat b) { return to_py(to_json(prime_gap_certificate(b))); }, py::arg("b"));

    m.def(
        "find_ap", [](const SetExpr& e, Nat k, Nat horizon) { return witness(find_ap(e, k, horizon)); },
        py::arg("e"), py::arg("k"), py::arg("horizon"));
    m.def(
        "longest_ap",
        [](const SetExpr& e, Nat horizon, Nat k_cap) { return witness(longest_ap(e, horizon, k_cap)); },
        py::arg("e"), py::arg("horizon"), py::arg("k_cap") = kDefaultApCap);
    m.def(
        "verify_witness",
        [](const SetExpr& e, Nat start, Nat diff, Nat length) { return verify_witness(e, {start, diff, length}); },
        py::arg("e"), py::arg("start"), py::arg("diff"), py::arg("length"));

    m.def(
        "fip_check", [](const std::vector<SetExpr>& base, Nat horizon) { return to_py(to_json(fip_check(base, horizon))); },
        py::arg("base"), py::arg("horizon") = FilterBase::kDefaultHorizon);
    m.def(
        "filter_base",
        [](const std::vector<SetExpr>& base, Nat horizon) { return to_py(to_json(make_base(base, horizon))); },
        py::arg("base"), py::arg("horizon") = FilterBase::kDefaultHorizon);
    m.def(
        "principal_sum", [](Nat n, Nat mm) { return principal_sum(n, mm).point; }, py::arg("n"), py::arg("m"));
    m.def("principal_sum_contains_by_definition", &principal_sum_contains_by_definition, py::arg("a"), py::arg("n"),
          py::arg("m"));
    m.def(
        "glazer_sum_base",
        [](const std::vector<SetExpr>& f, const std::vector<SetExpr>& g, Nat horizon) {
            return glazer_sum_base(make_base(f, horizon), make_base(g, horizon)).sets();
        },
        py::arg("f"), py::arg("g"), py::arg("horizon") = FilterBase::kDefaultHorizon);
    m.def(
        "glazer_member",
        [](const SetExpr& a, const std::vector<SetExpr>& f, const std::vector<SetExpr>& g, Nat horizon) {
            return to_py(to_json(glazer_member(a, make_base(f, horizon), make_base(g, horizon), horizon)));
        },
        py::arg("a"), py::arg("f"), py::arg("g"), py::arg("horizon") = FilterBase::kDefaultHorizon);
    m.def(
        "is_harmonic_base",
        [](const std::vector<SetExpr>& f, Nat horizon) {
            ClassifyOptions o;
            o.diagnostics = false;
            return to_py(to_json(is_harmonic_base(make_base(f, horizon), o)));
        },
        py::arg("f"), py::arg("horizon") = FilterBase::kDefaultHorizon);

    m.def("experiment_names", &experiment_names);
    m.def(
        "run_experiment",
        [](const std::string& name, std::uint64_t seed) {
            ExperimentOptions o;
            o.seed = seed;
            Json j;
            {
                py::gil_scoped_release release;
                j = run_experiment(name, o).json();
            }
            return to_py(j);
        },
        py::arg("name"), py::arg("seed") = kDefaultSeed);
    m.def(
        "render_text", [](const std::string& report) { return render_text(parse_report(report)); },
        py::arg("report"));
}
