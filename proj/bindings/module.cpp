// Python bindings for the core operations: model construction, polar
// decomposition, fidelity/chi estimation, ensembles, and the analysis
// helpers. CSV/JSON products stay on the CLI side.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "xychain/analysis.hpp"
#include "xychain/chain.hpp"
#include "xychain/ensemble.hpp"
#include "xychain/errors.hpp"
#include "xychain/fidelity.hpp"
#include "xychain/oracle.hpp"
#include "xychain/polar.hpp"
#include "xychain/scan.hpp"

namespace py = pybind11;
using namespace xychain;

PYBIND11_MODULE(_core, m) {
    m.doc() = "disordered XY chain fidelity-susceptibility toolkit";
    m.attr("__version__") = kToolVersion;

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<NumericError>(m, "NumericError");

    py::enum_<Direction>(m, "Direction")
        .value("Field", Direction::Field)
        .value("Anisotropy", Direction::Anisotropy);

    py::class_<ChainSpec>(m, "ChainSpec")
        .def(py::init([](int length, double mean_field, double mean_anisotropy,
                         double disorder_sigma) {
                 ChainSpec s{length, mean_field, mean_anisotropy,
                             disorder_sigma};
                 s.validate();
                 return s;
             }),
             py::arg("length"), py::arg("mean_field"),
             py::arg("mean_anisotropy"), py::arg("disorder_sigma") = 0.0)
        .def_readonly("length", &ChainSpec::length)
        .def_readonly("mean_field", &ChainSpec::mean_field)
        .def_readonly("mean_anisotropy", &ChainSpec::mean_anisotropy)
        .def_readonly("disorder_sigma", &ChainSpec::disorder_sigma);

    py::class_<DisorderRealization>(m, "DisorderRealization")
        .def_readonly("fields", &DisorderRealization::fields)
        .def_readonly("anisotropies", &DisorderRealization::anisotropies)
        .def_readonly("master_seed", &DisorderRealization::master_seed)
        .def_readonly("realization_index",
                      &DisorderRealization::realization_index);

    m.def("sample_realization", &sample_realization, py::arg("spec"),
          py::arg("master_seed"), py::arg("index"));
    m.def(
        "build_matrices",
        [](const DisorderRealization& r) {
            const auto m_ = build_matrices(r);
            return py::make_tuple(m_.A, m_.B, m_.Z);
        },
        py::arg("realization"), "returns the (A, B, Z) coupling matrices");

    py::class_<PolarFactors>(m, "PolarFactors")
        .def_readonly("T", &PolarFactors::T)
        .def_readonly("singular_values", &PolarFactors::singular_values)
        .def("near_singular", &PolarFactors::near_singular);

    m.def("polar_decompose", &polar_decompose, py::arg("Z"));
    m.def("energy_gap", &energy_gap, py::arg("factors"));
    m.def("fidelity",
          py::overload_cast<const Eigen::MatrixXd&, const Eigen::MatrixXd&>(
              &fidelity),
          py::arg("Za"), py::arg("Zb"));

    py::class_<ChiEstimate>(m, "ChiEstimate")
        .def_readonly("chi", &ChiEstimate::chi)
        .def_readonly("step", &ChiEstimate::step)
        .def_readonly("converged", &ChiEstimate::converged)
        .def_readonly("near_singular", &ChiEstimate::near_singular);

    m.def("chi", &chi, py::arg("realization"), py::arg("direction"));
    m.def("chi_log_fidelity", &chi_log_fidelity, py::arg("realization"),
          py::arg("direction"), py::arg("dx") = kDefaultLogFidelityStep);
    m.def("chi_frobenius", &chi_frobenius, py::arg("realization"),
          py::arg("direction"), py::arg("h") = kDefaultFrobeniusStep);

    m.def("exact_fidelity", &exact_fidelity, py::arg("realization"),
          py::arg("direction"), py::arg("dx"),
          "dense Fock-space ground-state overlap, L <= 12");

    py::class_<EnsembleConfig>(m, "EnsembleConfig")
        .def(py::init<>())
        .def_readwrite("n_realizations", &EnsembleConfig::n_realizations)
        .def_readwrite("master_seed", &EnsembleConfig::master_seed)
        .def_readwrite("direction", &EnsembleConfig::direction)
        .def_readwrite("record_gap", &EnsembleConfig::record_gap)
        .def_readwrite("compute_chi", &EnsembleConfig::compute_chi)
        .def_readwrite("n_workers", &EnsembleConfig::n_workers);

    py::class_<SampleSet>(m, "SampleSet")
        .def_readonly("chi_samples", &SampleSet::chi_samples)
        .def_readonly("gap_samples", &SampleSet::gap_samples)
        .def_readonly("n_flagged", &SampleSet::n_flagged);

    py::class_<EnsembleSummary>(m, "EnsembleSummary")
        .def_readonly("ave", &EnsembleSummary::ave)
        .def_readonly("typ", &EnsembleSummary::typ)
        .def_readonly("var", &EnsembleSummary::var)
        .def_readonly("R", &EnsembleSummary::R)
        .def_readonly("n", &EnsembleSummary::n);

    m.def("run_ensemble", &run_ensemble, py::arg("spec"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("summarize_samples", &summarize_samples, py::arg("samples"));

    py::class_<PowerLawFit>(m, "PowerLawFit")
        .def_readonly("exponent", &PowerLawFit::exponent)
        .def_readonly("intercept", &PowerLawFit::intercept)
        .def_readonly("exponent_stderr", &PowerLawFit::exponent_stderr)
        .def_readonly("r_squared", &PowerLawFit::r_squared);

    m.def("power_law_fit", &power_law_fit, py::arg("sizes"),
          py::arg("values"));

    py::enum_<CollapseKind>(m, "CollapseKind")
        .value("PowerLaw", CollapseKind::PowerLaw)
        .value("StretchedExp", CollapseKind::StretchedExp)
        .value("Mixed", CollapseKind::Mixed)
        .value("Extensive", CollapseKind::Extensive);

    py::class_<CollapseFit>(m, "CollapseFit")
        .def_property_readonly(
            "alpha", [](const CollapseFit& f) { return f.form.alpha; })
        .def_property_readonly(
            "beta", [](const CollapseFit& f) { return f.form.beta; })
        .def_readonly("quality", &CollapseFit::quality);

    m.def("fit_collapse", &fit_collapse, py::arg("samples_per_size"),
          py::arg("kind"));
    m.def("ks_distance", &ks_distance, py::arg("a"), py::arg("b"));
    m.def("mckenzie_delta", &mckenzie_delta, py::arg("lambda_"),
          py::arg("gamma"), py::arg("sigma"), py::arg("transition"));
    py::enum_<Transition>(m, "Transition")
        .value("Ising", Transition::Ising)
        .value("Anisotropy", Transition::Anisotropy);
}
