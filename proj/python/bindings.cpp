#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "normalfam/verify.hpp"
#include "normalfam/weierstrass.hpp"

namespace py = pybind11;
using namespace normalfam;

namespace {

py::object json_to_py(const ojson& j) {
    py::module_ json = py::module_::import("json");
    return json.attr("loads")(j.dump());
}

ConditionProfile profile_from_py(const py::object& obj) {
    py::module_ json = py::module_::import("json");
    std::string text = json.attr("dumps")(obj).cast<std::string>();
    return profile_from_json(ojson::parse(text));
}

RationalFunction ratfun_from_lists(const std::vector<std::string>& num,
                                   const std::vector<std::string>& den) {
    ojson j;
    j["num"] = num;
    j["den"] = den;
    return ratfun_from_json(j);
}

} // namespace

PYBIND11_MODULE(_normalfam, m) {
    m.doc() = "normal-family criterion toolkit: expression jets, the exact criterion decision, "
              "rational-function value distribution, spherical-derivative growth, and rescaling "
              "runs";

    py::register_exception<parse_error>(m, "ParseError");
    py::register_exception<eval_error>(m, "EvalError");

    py::class_<Jet>(m, "Jet")
        .def_readonly("order", &Jet::order)
        .def_readonly("pole", &Jet::pole)
        .def("coeff", [](const Jet& j, int k) { return j.c(k); })
        .def("derivative", &Jet::derivative)
        .def("spherical", &Jet::spherical);

    py::class_<FunctionHandle>(m, "Function")
        .def("__call__",
             [](const FunctionHandle& f, cdouble z) -> py::object {
                 ExtendedComplex v = eval_extended(f, z);
                 if (v.is_inf()) return py::cast(std::numeric_limits<double>::infinity());
                 return py::cast(v.value());
             })
        .def("jet", [](const FunctionHandle& f, cdouble z, int order) { return eval_jet(f, z, order); },
             py::arg("z"), py::arg("order") = 1)
        .def("spherical_derivative",
             [](const FunctionHandle& f, cdouble z) { return spherical_derivative(f, z); })
        .def("source", &FunctionHandle::source)
        .def("__repr__", [](const FunctionHandle& f) { return "Function(" + f.source() + ")"; });

    m.def("parse", &parse, py::arg("text"), "parse an expression into an evaluable function");
    m.def("mobius_post", &mobius_post, py::arg("f"), py::arg("a"), py::arg("b"), py::arg("c"),
          py::arg("d"), "post-compose with (a f + b)/(c f + d)");
    m.def("compose", &compose);
    m.def("translate", &translate);

    m.def("wp_pair",
          [](cdouble g2, cdouble g3, cdouble z) {
              WeierstrassParams p;
              p.g2 = g2;
              p.g3 = g3;
              auto [P, DP] = wp_pair(p, z);
              auto lift = [](const ExtendedComplex& v) -> py::object {
                  if (v.is_inf()) return py::cast(std::numeric_limits<double>::infinity());
                  return py::cast(v.value());
              };
              return py::make_tuple(lift(P), lift(DP));
          },
          py::arg("g2"), py::arg("g3"), py::arg("z"));
    m.def("params_from_cubic",
          [](cdouble alpha, cdouble beta, cdouble gamma) {
              WeierstrassParams p = params_from_cubic(alpha, beta, gamma);
              return py::make_tuple(p.g2, p.g3, p.shift);
          },
          py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
          "normal-form invariants (g2, g3, shift) of 4x^3 + alpha x^2 + beta x + gamma");

    m.def("validate_profile",
          [](const py::object& profile) { return validate_profile(profile_from_py(profile)); });
    m.def("criterion_sum", [](const py::object& profile) {
        return format_rational(criterion_sum(profile_from_py(profile)));
    });
    m.def("decide", [](const py::object& profile) {
        return json_to_py(verdict_to_json(decide(profile_from_py(profile))));
    });
    m.def("instantiate_witness", [](const py::object& profile) {
        auto w = witness_for_gap(profile_from_py(profile));
        if (!w) throw std::invalid_argument("profile not covered by the witness registry");
        return instantiate_witness(*w);
    });

    m.def("ratfun_analyze",
          [](const std::vector<std::string>& num, const std::vector<std::string>& den) {
              RationalFunction f = ratfun_from_lists(num, den);
              ojson out;
              out["degree"] = f.degree();
              out["omitted"] = ojson::array();
              for (const auto& v : omitted_values(f)) out["omitted"].push_back(v.str());
              out["riemann_hurwitz"] = hurwitz_to_json(riemann_hurwitz_check(f));
              return json_to_py(out);
          },
          py::arg("num"), py::arg("den"));
    m.def("preimage_profile",
          [](const std::vector<std::string>& num, const std::vector<std::string>& den,
             const std::string& c) {
              RationalFunction f = ratfun_from_lists(num, den);
              return json_to_py(preimage_profile_to_json(preimage_profile(f, parse_exact_value(c))));
          });
    m.def("verify_defect_bound",
          [](const std::vector<std::string>& num, const std::vector<std::string>& den,
             const std::string& mode, const std::optional<std::string>& a1,
             const std::vector<std::string>& candidates) {
              RationalFunction f = ratfun_from_lists(num, den);
              std::optional<ExactValue> a1v;
              if (a1) a1v = parse_exact_value(*a1);
              std::vector<ExactValue> cand;
              for (const auto& c : candidates) cand.push_back(parse_exact_value(c));
              DefectMode dm = mode == "c" ? DefectMode::c : DefectMode::b;
              return json_to_py(defect_to_json(verify_defect_bound(f, dm, a1v, cand)));
          },
          py::arg("num"), py::arg("den"), py::arg("mode") = "b", py::arg("a1") = std::nullopt,
          py::arg("candidates") = std::vector<std::string>{});

    m.def("sup_sph_on_disk",
          [](const FunctionHandle& f, cdouble center, double radius, long budget, uint64_t seed) {
              SupResult s = sup_sph_on_disk(f, center, radius, budget, seed);
              return py::make_tuple(s.sup, s.argmax);
          },
          py::arg("f"), py::arg("center") = cdouble(0.0, 0.0), py::arg("radius") = 1.0,
          py::arg("budget") = 10000, py::arg("seed") = 0xC0FFEE);
    m.def("ahlfors_shimizu_T",
          [](const FunctionHandle& f, double r, long budget, uint64_t seed) {
              return ahlfors_shimizu_T(f, r, budget, seed);
          },
          py::arg("f"), py::arg("r"), py::arg("budget") = 20000, py::arg("seed") = 0xC0FFEE);
    m.def("order_estimate",
          [](const FunctionHandle& f, double r_min, double r_max, int steps, long budget,
             uint64_t seed) {
              return json_to_py(growth_to_json(order_estimate(f, r_min, r_max, steps, budget, seed)));
          },
          py::arg("f"), py::arg("r_min"), py::arg("r_max"), py::arg("steps") = 6,
          py::arg("budget") = 100000, py::arg("seed") = 0xC0FFEE);
    m.def("marty_probe",
          [](const FunctionHandle& f, cdouble z0, const std::vector<double>& radii, long budget,
             uint64_t seed) {
              return json_to_py(marty_to_json(marty_probe(f, z0, radii, budget, seed)));
          },
          py::arg("f"), py::arg("z0") = cdouble(0.0, 0.0),
          py::arg("radii") = std::vector<double>{2, 3, 4, 5, 6, 7}, py::arg("budget") = 100000,
          py::arg("seed") = 0xC0FFEE);

    m.def("zalcman_extract",
          [](const FunctionHandle& h, cdouble z0, const std::vector<double>& schedule, double xi,
             int k_max, long budget, uint64_t seed) {
              GridSpec grid;
              grid.xi_radius = xi;
              RescalingTrace t = zalcman_extract(h, z0, schedule, grid, k_max,
                                                 budget / static_cast<long>(schedule.size()), seed);
              double sup = 0.0;
              bool blowup = check_bounded_blowup(t, std::min(1.0, xi), 0.2, &sup);
              ojson j = trace_to_json(t);
              j["bounded_blowup"] = blowup;
              j["sup_unit_disk"] = sup;
              return json_to_py(j);
          },
          py::arg("h"), py::arg("z0") = cdouble(0.0, 0.0),
          py::arg("schedule") = std::vector<double>{2, 3, 4, 5, 6, 7}, py::arg("xi") = 2.0,
          py::arg("k_max") = 2, py::arg("budget") = 100000, py::arg("seed") = 0xC0FFEE);
    m.def("hypothesis_probe",
          [](const FunctionHandle& h, const py::object& profile, cdouble center, double radius,
             long samples) {
              return json_to_py(probe_to_json(
                  hypothesis_probe(h, profile_from_py(profile), center, radius, samples)));
          },
          py::arg("h"), py::arg("profile"), py::arg("center") = cdouble(0.0, 0.0),
          py::arg("radius") = 2.0, py::arg("samples") = 5000);

    m.def("verify_examples",
          [](long budget, uint64_t seed, int threads) {
              return json_to_py(report_to_json(verify_examples(budget, seed, threads)));
          },
          py::arg("budget") = 100000, py::arg("seed") = 0xC0FFEE, py::arg("threads") = 1);

    m.attr("__version__") = "0.1.0";
}
