#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "wamin/driver.hpp"
#include "wamin/generators.hpp"

namespace py = pybind11;
using namespace wamin;

namespace {

// pybind11's stl casters would dissolve a bare std::variant argument, so the
// python-facing automaton is a thin holder around it
struct PyAutomaton {
    AnyAutomaton value;
};

StatePartition partition_from_classes(const PyAutomaton& aut,
                                      const std::vector<std::vector<int>>& classes) {
    StatePartition p;
    p.n = true_state_count(aut.value) + 2;
    p.classes = classes;
    p.canonicalize();
    return p;
}

py::object coefficient_to_py(const PyAutomaton& aut, const std::string& word) {
    return std::visit(
        [&](const auto& a) -> py::object {
            using S = typename std::decay_t<decltype(a)>::SemiringType;
            auto k = a.coefficient(a.word(word));
            if constexpr (std::is_same_v<S, Boolean>) {
                return py::bool_(k);
            } else if constexpr (std::is_same_v<S, Integers>) {
                // through a decimal string, so arbitrary precision survives
                return py::module_::import("builtins").attr("int")(k.str());
            } else {
                if (k == MinPlus::infinity) return py::float_(HUGE_VAL);
                return py::int_(k);
            }
        },
        aut.value);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "semiring-weighted automaton minimisation";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<AutomatonError>(m, "AutomatonError", PyExc_ValueError);
    py::register_exception<NotSimplifiableError>(m, "NotSimplifiableError", PyExc_RuntimeError);

    py::class_<PyAutomaton>(m, "Automaton")
        .def_property_readonly(
            "semiring", [](const PyAutomaton& a) { return semiring_tag_of(a.value); })
        .def_property_readonly(
            "states", [](const PyAutomaton& a) { return stats_of(a.value).first; })
        .def_property_readonly(
            "transition_count", [](const PyAutomaton& a) { return stats_of(a.value).second; })
        .def_property_readonly("alphabet",
                               [](const PyAutomaton& a) {
                                   return std::visit(
                                       [](const auto& aut) { return aut.letters(); }, a.value);
                               })
        .def("__repr__", [](const PyAutomaton& a) {
            auto [n, mm] = stats_of(a.value);
            return "<Automaton " + semiring_tag_of(a.value) + ", " + std::to_string(n) +
                   " states, " + std::to_string(mm) + " transitions>";
        });

    m.def(
        "loads", [](const std::string& text) { return PyAutomaton{parse_automaton(text)}; },
        py::arg("text"), "Parse an automaton from its JSON text.");
    m.def(
        "load", [](const std::string& path) { return PyAutomaton{load_automaton(path)}; },
        py::arg("path"));
    m.def(
        "dumps", [](const PyAutomaton& a) { return serialize_automaton(a.value); },
        py::arg("automaton"), "Canonical JSON text of an automaton.");
    m.def(
        "save",
        [](const PyAutomaton& a, const std::string& path) { save_automaton(a.value, path); },
        py::arg("automaton"), py::arg("path"));

    m.def(
        "minimise",
        [](const PyAutomaton& aut, const std::string& algo) {
            auto requested = algo_from_name(algo);
            if (!requested) throw py::value_error("unknown algorithm: " + algo);
            auto outcome = minimise_automaton(aut.value, *requested);
            py::dict counters;
            counters["transitions_touched"] = outcome.stats.transitions_touched;
            counters["dequeues"] = outcome.stats.states_dequeued;
            counters["splits"] = outcome.stats.splits;
            py::dict result;
            result["classes"] = outcome.partition.classes;
            result["true_classes"] =
                true_classes(outcome.partition, true_state_count(aut.value));
            result["algorithm"] = algo_name(outcome.used);
            result["counters"] = counters;
            return result;
        },
        py::arg("automaton"), py::arg("algo") = "auto",
        "Coarsest congruence of the augmented automaton. Classes are over the\n"
        "augmented state set: i = states, t = states + 1.");

    m.def(
        "quotient",
        [](const PyAutomaton& aut, const std::vector<std::vector<int>>& classes) {
            return PyAutomaton{
                quotient_automaton(aut.value, partition_from_classes(aut, classes))};
        },
        py::arg("automaton"), py::arg("classes"));

    m.def(
        "is_congruence",
        [](const PyAutomaton& aut, const std::vector<std::vector<int>>& classes) {
            return congruence_of(aut.value, partition_from_classes(aut, classes));
        },
        py::arg("automaton"), py::arg("classes"));

    m.def(
        "counterexample_up_to",
        [](const PyAutomaton& a, const PyAutomaton& b, int length) {
            return first_difference_word(a.value, b.value, length);
        },
        py::arg("a"), py::arg("b"), py::arg("length"),
        "Shortest word (ties by alphabet order) on which the two behaviours\n"
        "differ, or None.");
    m.def(
        "equivalent_up_to",
        [](const PyAutomaton& a, const PyAutomaton& b, int length) {
            return !first_difference_word(a.value, b.value, length).has_value();
        },
        py::arg("a"), py::arg("b"), py::arg("length"));

    m.def("coefficient", &coefficient_to_py, py::arg("automaton"), py::arg("word"),
          "Weight of a word in the realised series.");

    m.def(
        "simplifiable_signatures",
        [](const PyAutomaton& a) { return simplifiable_of(a.value); }, py::arg("automaton"));
    m.def(
        "stats", [](const PyAutomaton& a) { return stats_of(a.value); }, py::arg("automaton"),
        "(state count, transition count)");

    m.def(
        "fibonacci", [](int k) { return PyAutomaton{fibonacci_automaton(k)}; }, py::arg("k"));
    m.def(
        "railroad", [](long n) { return PyAutomaton{railroad_automaton(n)}; }, py::arg("n"));
    m.def(
        "random_automaton",
        [](int states, int alphabet_size, double density, const std::string& semiring,
           std::uint64_t seed) -> PyAutomaton {
            if (semiring == "B")
                return {random_automaton<Boolean>(states, alphabet_size, density, seed)};
            if (semiring == "Z")
                return {random_automaton<Integers>(states, alphabet_size, density, seed)};
            if (semiring == "min-plus")
                return {random_automaton<MinPlus>(states, alphabet_size, density, seed)};
            throw py::value_error("unknown semiring tag: " + semiring);
        },
        py::arg("states"), py::arg("alphabet_size") = 2, py::arg("density") = 0.3,
        py::arg("semiring") = "Z", py::arg("seed") = 1);

#ifdef WAMIN_VERSION
    m.attr("__version__") = WAMIN_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
