#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "ternrec/charpoly.hpp"
#include "ternrec/errors.hpp"
#include "ternrec/modular.hpp"
#include "ternrec/representation.hpp"
#include "ternrec/serialize.hpp"

namespace py = pybind11;
using namespace ternrec;

// Specs and reports cross the boundary as JSON text; the Python side decodes them.
PYBIND11_MODULE(_ternrec, m) {
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    m.def("term", [](const std::string& spec, std::uint64_t n) { return term(parse_spec(spec), n).get_str(); });

    m.def("analyze", [](const std::string& spec) { return to_json(check_conditions(parse_spec(spec))).dump(); });

    m.def("classify_prime", [](const std::string& spec, std::uint64_t p) {
        return to_json(profile_any_prime(parse_spec(spec), p)).dump();
    });

    m.def("z_primes", [](const std::string& spec, std::uint64_t x) { return z_primes(parse_spec(spec), x); });

    m.def("represent", [](const std::string& N, std::uint64_t n) -> py::object {
        const Represented r = represent(mpz_class(N), n);
        switch (r.kind) {
            case Represented::Kind::Member: return py::make_tuple(r.u.get_str(), r.v.get_str());
            case Represented::Kind::NonMember: return py::none();
            case Represented::Kind::Unknown: break;
        }
        throw BudgetExceeded("undecided: " + r.note);
    });

    m.def(
        "count",
        [](const std::string& spec, std::uint64_t x, std::uint64_t n_exact, unsigned threads) {
            const CountReport report = [&] {
                py::gil_scoped_release release;
                return count_range(parse_spec(spec), x, n_exact, threads);
            }();
            return summary_json(report).dump();
        },
        py::arg("spec"), py::arg("x"), py::arg("n_exact") = 120, py::arg("threads") = 1);

    m.def("solve_exponents", [] { return to_json(solve_exponents()).dump(); });
}
