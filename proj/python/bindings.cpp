#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperac/diagnostics.hpp"
#include "hyperac/errors.hpp"
#include "hyperac/experiments.hpp"
#include "hyperac/io.hpp"
#include "hyperac/kinetics.hpp"
#include "hyperac/potential.hpp"

namespace py = pybind11;
using namespace hyperac;

namespace {

py::dict params_dict(const SchemeParams& p) {
    py::dict d;
    d["epsilon"] = p.epsilon;
    d["tau"] = p.tau;
    d["lambda"] = p.lambda;
    d["gamma"] = p.gamma;
    d["dx"] = p.dx;
    d["dt"] = p.dt;
    d["p"] = p.p;
    d["q"] = p.q;
    return d;
}

std::string report_json(const RunReport& r) {
    auto j = io::report_to_json(r);
    const auto& s = r.final_snapshot().state;
    j["final_state"] = {{"t", s.t}, {"x", s.grid.nodes()}, {"u", s.u()}};
    return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hyperbolic Allen-Cahn kinetic solver";
    m.attr("__version__") = io::kToolVersion;

    py::register_exception<Error>(m, "HyperacError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<BlowUp>(m, "BlowUp", PyExc_ArithmeticError);

    m.def(
        "compute_c0", [](const std::string& name, int n) { return compute_c0(potential_by_name(name), n); },
        py::arg("potential") = "quartic", py::arg("panels") = kDefaultQuadraturePanels);
    m.def(
        "psi", [](double u, const std::string& name) { return psi(potential_by_name(name), u); }, py::arg("u"),
        py::arg("potential") = "quartic");
    m.def(
        "derive_params",
        [](double eps, double tau, double a, double b, std::size_t cells) {
            return params_dict(derive_params(eps, tau, Grid1D(a, b, cells)));
        },
        py::arg("epsilon"), py::arg("tau"), py::arg("a"), py::arg("b"), py::arg("cells"));
    m.def("min_admissible_cells", &min_admissible_cells, py::arg("epsilon"), py::arg("tau"), py::arg("length"));
    m.def(
        "transition_count",
        [](const std::vector<double>& u, double a, double b, double h) {
            return transition_count(u, Grid1D(a, b, u.size()), h);
        },
        py::arg("u"), py::arg("a"), py::arg("b"), py::arg("hysteresis") = kDefaultHysteresis);
    m.def(
        "energy",
        [](const std::vector<double>& u, const std::vector<double>& u_t, double a, double b, double eps, double tau,
           const std::string& name) {
            const auto e = energy_from_fields(u, u_t, Grid1D(a, b, u.size()), eps, tau, potential_by_name(name), 0.0);
            py::dict d;
            d["kinetic"] = e.kinetic;
            d["gradient"] = e.gradient;
            d["potential"] = e.potential;
            d["total_scaled"] = e.total_scaled;
            d["total_unscaled"] = e.total_unscaled;
            return d;
        },
        py::arg("u"), py::arg("u_t"), py::arg("a"), py::arg("b"), py::arg("epsilon"), py::arg("tau"),
        py::arg("potential") = "quartic");
    m.def(
        "run_example_json",
        [](int n, std::optional<double> eps, std::optional<double> tau, std::optional<double> horizon,
           std::optional<std::size_t> cells) {
            RunReport r = [&] {
                py::gil_scoped_release release;
                return run_example(n, ConfigOverrides{.epsilon = eps, .tau = tau, .horizon = horizon, .cells = cells});
            }();
            return report_json(r);
        },
        py::arg("n"), py::arg("epsilon") = py::none(), py::arg("tau") = py::none(), py::arg("horizon") = py::none(),
        py::arg("cells") = py::none());
    m.def(
        "run_config_json",
        [](const std::string& config_text) {
            const auto config = io::config_from_json(nlohmann::json::parse(config_text));
            RunReport r = [&] {
                py::gil_scoped_release release;
                return run_experiment(config);
            }();
            return report_json(r);
        },
        py::arg("config_json"));
    m.def(
        "sweep",
        [](const std::string& config_text, const std::vector<double>& epsilons, double k, double mm) {
            const auto base = io::config_from_json(nlohmann::json::parse(config_text));
            std::vector<SweepRow> rows;
            {
                py::gil_scoped_release release;
                rows = sweep_metastability(base, epsilons, k, mm);
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["epsilon"] = r.epsilon;
                d["cells"] = r.cells;
                d["horizon"] = r.horizon;
                d["capped"] = r.capped;
                d["initial_l1"] = r.initial_l1;
                d["sup_l1"] = r.sup_l1;
                d["exited"] = r.exit ? py::cast(r.exit->exited) : py::none();
                d["exit_time"] = r.exit ? py::cast(r.exit->time) : py::none();
                d["initial_transitions"] = r.initial_transitions;
                d["final_transitions"] = r.final_transitions;
                out.append(d);
            }
            return out;
        },
        py::arg("config_json"), py::arg("epsilons"), py::arg("k") = 1.0, py::arg("m") = 1.0);
    m.def("config_hash", py::overload_cast<const std::string&>(&io::config_hash), py::arg("json_text"));
}
