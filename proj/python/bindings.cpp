#include <map>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gausslab/dynamics.hpp"
#include "gausslab/error.hpp"
#include "gausslab/funcrep.hpp"
#include "gausslab/harness.hpp"
#include "gausslab/hilbert.hpp"
#include "gausslab/kernels.hpp"
#include "gausslab/specfun.hpp"
#include "gausslab/totpos.hpp"
#include "gausslab/transfer.hpp"

namespace py = pybind11;
using namespace gausslab;

namespace {

kernels::Part parse_part(const std::string& s) {
    if (s == "full") return kernels::Part::full;
    if (s == "I") return kernels::Part::I;
    if (s == "II") return kernels::Part::II;
    throw DomainError("part must be one of full, I, II");
}

funcrep::KernelKind parse_kind(const std::string& s) {
    using K = funcrep::KernelKind;
    static const std::map<std::string, K> names{
        {"K1", K::K1},       {"K1_I", K::K1_I},   {"K1_II", K::K1_II}, {"k1", K::k1},
        {"k1_I", K::k1_I},   {"k1_II", K::k1_II}, {"kappa", K::kappa}, {"g_gamma", K::g_gamma},
        {"Hg_gamma", K::Hg_gamma}};
    const auto it = names.find(s);
    if (it == names.end()) throw DomainError("unknown kernel " + s);
    return it->second;
}

transfer::OperatorKind parse_operator(const std::string& s) {
    if (s == "subtransfer") return transfer::OperatorKind::subtransfer;
    if (s == "full_transfer") return transfer::OperatorKind::full_transfer;
    if (s == "complement_V") return transfer::OperatorKind::complement_V;
    throw DomainError("unknown operator " + s);
}

py::tuple special(const specfun::SpecialValue& v) { return py::make_tuple(v.value, v.error_bound); }

} // namespace

PYBIND11_MODULE(_gausslab, m) {
    m.doc() = "Transfer operators of the even continued fraction map, Hurwitz zeta tools and total positivity checks";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<PoleProximityError>(m, "PoleProximityError", base.ptr());
    py::register_exception<BudgetExhaustedError>(m, "BudgetExhaustedError", base.ptr());
    py::register_exception<SingularityError>(m, "SingularityError", base.ptr());
    py::register_exception<PrecisionError>(m, "PrecisionError", base.ptr());
    py::register_exception<ClassificationError>(m, "ClassificationError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    // specfun
    m.def("hurwitz_zeta", [](double s, double x) { return special(specfun::hurwitz_zeta(s, x)); },
          "zeta(s, x) as (value, error_bound)", py::arg("s"), py::arg("x"));
    m.def("polygamma", [](int k, double x) { return special(specfun::polygamma(k, x)); },
          "psi^(m)(x) as (value, error_bound)", py::arg("m"), py::arg("x"));
    m.def("lambda_tau", [](double tau, double s) { return special(specfun::lambda_tau(tau, s)); },
          py::arg("tau"), py::arg("s"));

    // dynamics
    m.def("tau", [](double beta, double x) { return dynamics::tau(dynamics::MapParam(beta), x); },
          py::arg("beta"), py::arg("x"));
    m.def("orbit", [](double beta, double x, int n) { return dynamics::orbit(dynamics::MapParam(beta), x, n).points; },
          py::arg("beta"), py::arg("x"), py::arg("n"));
    m.def("wandering_measure",
          [](double beta, int N, int samples) {
              return dynamics::wandering_measure(dynamics::MapParam(beta), N, samples);
          },
          py::arg("beta"), py::arg("N"), py::arg("samples") = 200000);

    // transfer
    m.def("apply_kernel",
          [](const std::string& op, double beta, const std::string& kernel, double t, double x, int N) {
              funcrep::KernelParams kp;
              kp.t = t;
              kp.alpha = t;
              kp.gamma = t;
              const auto f = funcrep::FunctionRep::kernel(parse_kind(kernel), kp);
              const auto a = transfer::apply_truncated({parse_operator(op)}, dynamics::MapParam(beta), f, x, N);
              return py::make_tuple(a.value, a.tail_bound);
          },
          "Truncated transfer applied to a named kernel; the kernel parameter is passed as t. "
          "Returns (value, tail_bound).",
          py::arg("op"), py::arg("beta"), py::arg("kernel"), py::arg("t"), py::arg("x"), py::arg("N") = 1000);
    m.def("apply_pole",
          [](double beta, double pole, double x) {
              return transfer::apply_pole_closed(dynamics::MapParam(beta), pole, x);
          },
          "Subtransfer of 1/(x - pole) in closed form", py::arg("beta"), py::arg("pole"), py::arg("x"));

    // kernels
    m.def("hilbert_kernel", [](const std::string& part, double t, double x) {
        return kernels::hilbert_kernel(parse_part(part), {t}, x);
    }, py::arg("part"), py::arg("t"), py::arg("x"));
    m.def("reduced_kernel", [](const std::string& part, double t, double x) {
        return kernels::reduced_kernel(parse_part(part), {t}, x);
    }, py::arg("part"), py::arg("t"), py::arg("x"));
    m.def("taylor_kappa",
          [](double t, int jmax) {
              const auto s = kernels::taylor_kappa({t}, jmax);
              py::dict d;
              d["raw"] = s.raw;
              d["raw_error"] = s.raw_error;
              d["scaled"] = s.scaled;
              return d;
          },
          py::arg("t"), py::arg("jmax"));

    // totpos
    m.def("b_entry", [](int j, int k) { return totpos::b_entry(j, k); }, py::arg("j"), py::arg("k"));
    m.def("sign_changes",
          [](const std::vector<double>& seq, double tol) {
              const auto v = totpos::sign_changes(seq, tol);
              py::dict d;
              d["s_minus"] = v.s_minus;
              d["s_plus"] = v.s_plus;
              d["pattern"] = v.pattern;
              return d;
          },
          py::arg("seq"), py::arg("tol_sign") = totpos::kDefaultTolSign);
    m.def("minors_positive",
          [](int size, int max_order) {
              const auto scan = totpos::minors_positive(totpos::b_section(size), max_order);
              py::dict d;
              d["positive"] = scan.positive();
              d["count"] = scan.count;
              d["worst_margin"] = scan.worst_margin;
              return d;
          },
          "Minor scan of the leading size x size block of b", py::arg("size"), py::arg("max_order"));
    m.def("variation_diminishing",
          [](const std::vector<double>& coeffs, int N) {
              const auto r = totpos::variation_diminishing_F(coeffs, N);
              py::dict d;
              d["F"] = r.F;
              d["pass"] = r.pass;
              d["s_plus"] = r.verdict.s_plus;
              return d;
          },
          py::arg("coeffs"), py::arg("N"));

    // hilbert
    m.def("g_gamma", [](double gamma, double x) { return hilbert::g_gamma({gamma, 200}, x); },
          py::arg("gamma"), py::arg("x"));
    m.def("hg_gamma", [](double gamma, double x) { return hilbert::hg_gamma({gamma, 200}, x); },
          py::arg("gamma"), py::arg("x"));
    m.def("periodized_sum",
          [](double gamma, double x) {
              const auto s = hilbert::periodized_sum({gamma, 200}, x);
              return py::make_tuple(s.value, s.error_estimate);
          },
          py::arg("gamma"), py::arg("x"));
    m.def("norm_gap",
          [](double gamma) {
              const auto g = hilbert::norm_gap({gamma, 200});
              py::dict d;
              d["D"] = g.D;
              d["D_minus_gamma2"] = g.D_minus_gamma2;
              d["predicted"] = g.predicted;
              d["tail_estimate"] = g.tail_estimate;
              return d;
          },
          py::arg("gamma"));

    // harness
    m.def("experiments", [] {
        std::vector<std::string> names;
        for (const auto& s : harness::experiment_schemas()) names.push_back(s.name);
        return names;
    });
    m.def("run_experiment",
          [](const std::string& name, const std::map<std::string, std::string>& params,
             const std::string& output_path, bool parallel) {
              harness::ExperimentSpec spec;
              spec.name = name;
              spec.params = params;
              if (!output_path.empty()) spec.output_path = output_path;
              spec.parallel = parallel;
              harness::ExperimentResult res;
              {
                  py::gil_scoped_release release;
                  res = harness::run_experiment(spec);
              }
              py::list rows;
              for (const auto& r : res.rows) {
                  py::dict d;
                  d["metric"] = r.metric;
                  d["params"] = r.param_echo;
                  d["value"] = r.value;
                  d["certified_bound"] = r.certified_bound;
                  d["threshold"] = r.threshold;
                  d["relation"] = harness::relation_name(r.relation);
                  d["pass"] = r.pass;
                  rows.append(d);
              }
              return rows;
          },
          "Runs a harness experiment and returns its report rows", py::arg("name"),
          py::arg("params") = std::map<std::string, std::string>{}, py::arg("output_path") = "",
          py::arg("parallel") = false);
}
