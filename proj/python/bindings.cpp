// bindings.cpp — Python module exposing the core simulation operations.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spc/analysis.hpp"
#include "spc/coherence.hpp"
#include "spc/oracle.hpp"
#include "spc/sequence.hpp"
#include "spc/spectral.hpp"

namespace py = pybind11;
using namespace spc;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pulsed-decoherence simulator: spectral densities, pulse schedules, "
              "coherence traces, and peak-value analysis.";

    py::enum_<SpectralFamily>(m, "SpectralFamily")
        .value("gaussian", SpectralFamily::gaussian)
        .value("semi_elliptic", SpectralFamily::semi_elliptic)
        .value("lorentzian", SpectralFamily::lorentzian)
        .value("tabulated", SpectralFamily::tabulated);

    py::enum_<KernelMethod>(m, "KernelMethod")
        .value("automatic", KernelMethod::automatic)
        .value("closed_form", KernelMethod::closed_form)
        .value("quadrature", KernelMethod::quadrature);

    py::enum_<ExponentMethod>(m, "ExponentMethod")
        .value("automatic", ExponentMethod::automatic)
        .value("kernel", ExponentMethod::kernel)
        .value("direct", ExponentMethod::direct);

    py::enum_<DiscretizationRule>(m, "DiscretizationRule")
        .value("uniform", DiscretizationRule::uniform)
        .value("gauss_weighted", DiscretizationRule::gauss_weighted);

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
        .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
        .def_readwrite("max_subdivisions", &QuadratureConfig::max_subdivisions)
        .def_readwrite("tail_mass", &QuadratureConfig::tail_mass);

    py::class_<AnalysisConfig>(m, "AnalysisConfig")
        .def(py::init<>())
        .def_readwrite("conv_tol", &AnalysisConfig::conv_tol)
        .def_readwrite("conv_window", &AnalysisConfig::conv_window)
        .def_readwrite("n_max", &AnalysisConfig::n_max);

    py::class_<SpectralMoments>(m, "SpectralMoments")
        .def_readonly("weight_0", &SpectralMoments::weight_0)
        .def_readonly("weight_1", &SpectralMoments::weight_1)
        .def_readonly("weight_2", &SpectralMoments::weight_2)
        .def_readonly("err_0", &SpectralMoments::err_0)
        .def_readonly("err_1", &SpectralMoments::err_1)
        .def_readonly("err_2", &SpectralMoments::err_2)
        .def_readonly("truncated", &SpectralMoments::truncated);

    py::class_<KernelValue>(m, "KernelValue")
        .def_readonly("value", &KernelValue::value)
        .def_readonly("error", &KernelValue::error);

    py::class_<SpectralDensity>(m, "SpectralDensity")
        .def_static("gaussian", &SpectralDensity::gaussian, py::arg("omega_p") = 1.0,
                    py::arg("gamma_p") = 0.15, py::arg("strength") = 3.0)
        .def_static("semi_elliptic", &SpectralDensity::semi_elliptic, py::arg("omega_p") = 1.0,
                    py::arg("gamma_p") = 0.15, py::arg("strength") = 3.0)
        .def_static("lorentzian", &SpectralDensity::lorentzian, py::arg("omega_p") = 1.0,
                    py::arg("gamma_p") = 0.15, py::arg("strength") = 3.0)
        .def_static("tabulated", &SpectralDensity::tabulated, py::arg("samples"))
        .def_static("from_csv", &SpectralDensity::from_csv, py::arg("path"))
        .def_property_readonly("family", &SpectralDensity::family)
        .def_property_readonly("omega_p", &SpectralDensity::omega_p)
        .def_property_readonly("gamma_p", &SpectralDensity::gamma_p)
        .def_property_readonly("strength", &SpectralDensity::strength)
        .def("evaluate", &SpectralDensity::evaluate, py::arg("e"))
        .def("cumulative", &SpectralDensity::cumulative, py::arg("e"))
        .def("total_mass", &SpectralDensity::total_mass)
        .def("peak_frequency", &SpectralDensity::peak_frequency)
        .def("support_bounds", &SpectralDensity::support_bounds, py::arg("tail_mass"))
        .def("resolved_bounds", &SpectralDensity::resolved_bounds, py::arg("tail_mass"))
        .def("total_weight", &SpectralDensity::total_weight,
             py::arg("cfg") = QuadratureConfig{})
        .def("cosine_kernel", &SpectralDensity::cosine_kernel, py::arg("x"),
             py::arg("method") = KernelMethod::automatic,
             py::arg("cfg") = QuadratureConfig{});

    py::class_<PulseTrain>(m, "PulseTrain")
        .def(py::init([](long n_pulses, double tau_s) {
                 return PulseTrain{n_pulses, tau_s};
             }),
             py::arg("n_pulses"), py::arg("tau_s"))
        .def_readwrite("n_pulses", &PulseTrain::n_pulses)
        .def_readwrite("tau_s", &PulseTrain::tau_s);

    m.def("displacement_amplitudes",
          [](const PulseTrain& train, double e, double t) {
              const BranchAmplitudes a = displacement_amplitudes(train, e, t);
              return py::make_tuple(a.alpha, a.beta);
          },
          py::arg("train"), py::arg("e"), py::arg("t"),
          "Per-unit-coupling branch amplitudes (alpha, beta) after the schedule.");

    m.def("modulation_delta", &modulation_delta, py::arg("train"), py::arg("e"), py::arg("t"),
          "Delta(e, t) = alpha - beta per unit coupling.");

    m.def("pair_expansion",
          [](const PulseTrain& train, double t) {
              std::vector<std::pair<double, double>> out;
              for (const auto& term : pair_expansion(train, t).terms)
                  out.emplace_back(term.coefficient, term.time_offset);
              return out;
          },
          py::arg("train"), py::arg("t"),
          "(coefficient, time_offset) terms with Delta = sum c_m exp(-i e s_m).");

    py::class_<ExponentValue>(m, "ExponentValue")
        .def_readonly("gamma", &ExponentValue::gamma)
        .def_readonly("error", &ExponentValue::error)
        .def_readonly("converged", &ExponentValue::converged);

    py::class_<IntensityValue>(m, "IntensityValue")
        .def_readonly("value", &IntensityValue::value)
        .def_readonly("error", &IntensityValue::error)
        .def_readonly("converged", &IntensityValue::converged);

    py::class_<TracePoint>(m, "TracePoint")
        .def_readonly("t", &TracePoint::t)
        .def_readonly("intensity", &TracePoint::intensity)
        .def_readonly("exponent", &TracePoint::exponent)
        .def_readonly("n_pulses", &TracePoint::n_pulses)
        .def_readonly("error", &TracePoint::error)
        .def_readonly("converged", &TracePoint::converged);

    py::class_<CoherenceTrace>(m, "CoherenceTrace")
        .def_readonly("points", &CoherenceTrace::points)
        .def_readonly("method", &CoherenceTrace::method);

    m.def("decoherence_exponent", &decoherence_exponent, py::arg("sd"), py::arg("train"),
          py::arg("t"), py::arg("cfg") = QuadratureConfig{},
          py::arg("method") = ExponentMethod::automatic,
          py::arg("form") = KernelMethod::automatic);

    m.def("intensity", &intensity, py::arg("sd"), py::arg("train"), py::arg("t"),
          py::arg("cfg") = QuadratureConfig{}, py::arg("method") = ExponentMethod::automatic,
          py::arg("form") = KernelMethod::automatic);

    m.def("trace", &trace, py::arg("sd"), py::arg("tau_s"), py::arg("max_pulses"),
          py::arg("t_max"), py::arg("dt"), py::arg("cfg") = QuadratureConfig{},
          py::arg("method") = ExponentMethod::automatic,
          py::arg("form") = KernelMethod::automatic);

    py::class_<PeakSeries>(m, "PeakSeries")
        .def_readonly("tau_s", &PeakSeries::tau_s)
        .def_readonly("peak_values", &PeakSeries::peak_values)
        .def_readonly("limit", &PeakSeries::limit)
        .def_readonly("converged", &PeakSeries::converged)
        .def_readonly("n_used", &PeakSeries::n_used)
        .def_readonly("parity_gap", &PeakSeries::parity_gap);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("tau_s", &SweepPoint::tau_s)
        .def_readonly("limit", &SweepPoint::limit)
        .def_readonly("converged", &SweepPoint::converged)
        .def_readonly("n_used", &SweepPoint::n_used);

    py::class_<SweepMaximum>(m, "SweepMaximum")
        .def_readonly("tau_s", &SweepMaximum::tau_s)
        .def_readonly("value", &SweepMaximum::value)
        .def_readonly("prominence", &SweepMaximum::prominence);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("points", &SweepResult::points)
        .def_readonly("maxima", &SweepResult::maxima);

    py::class_<OptimizeResult>(m, "OptimizeResult")
        .def_readonly("tau_s", &OptimizeResult::tau_s)
        .def_readonly("value", &OptimizeResult::value)
        .def_readonly("flat", &OptimizeResult::flat)
        .def_readonly("evaluations", &OptimizeResult::evaluations);

    py::class_<EnvelopeFit>(m, "EnvelopeFit")
        .def_readonly("linear_residual", &EnvelopeFit::linear_residual)
        .def_readonly("quadratic_residual", &EnvelopeFit::quadratic_residual)
        .def_readonly("markovian_like", &EnvelopeFit::markovian_like);

    py::class_<InteractionModeReport>(m, "InteractionModeReport")
        .def_readonly("g", &InteractionModeReport::g)
        .def_readonly("g_error", &InteractionModeReport::g_error)
        .def_readonly("truncated", &InteractionModeReport::truncated)
        .def_readonly("center_mode", &InteractionModeReport::center_mode)
        .def_readonly("center_weighted_mean", &InteractionModeReport::center_weighted_mean)
        .def_readonly("width", &InteractionModeReport::width)
        .def_readonly("fit", &InteractionModeReport::fit)
        .def_readonly("envelope", &InteractionModeReport::envelope);

    m.def("asymptotic_peak", &asymptotic_peak, py::arg("sd"), py::arg("tau_s"),
          py::arg("acfg") = AnalysisConfig{}, py::arg("qcfg") = QuadratureConfig{},
          py::arg("method") = ExponentMethod::automatic);

    m.def("sweep", &sweep, py::arg("sd"), py::arg("lo"), py::arg("hi"), py::arg("step"),
          py::arg("acfg") = AnalysisConfig{}, py::arg("qcfg") = QuadratureConfig{},
          py::arg("method") = ExponentMethod::automatic);

    m.def("optimize_interval", &optimize_interval, py::arg("sd"), py::arg("lo"), py::arg("hi"),
          py::arg("acfg") = AnalysisConfig{}, py::arg("qcfg") = QuadratureConfig{},
          py::arg("method") = ExponentMethod::automatic);

    m.def("interaction_mode_report", &interaction_mode_report, py::arg("sd"),
          py::arg("qcfg") = QuadratureConfig{});

    py::class_<DiscreteMode>(m, "DiscreteMode")
        .def_readonly("epsilon", &DiscreteMode::epsilon)
        .def_readonly("coupling", &DiscreteMode::coupling);

    py::class_<DiscreteModeSet>(m, "DiscreteModeSet")
        .def_readonly("modes", &DiscreteModeSet::modes)
        .def_readonly("weight_error", &DiscreteModeSet::weight_error)
        .def_readonly("coarse", &DiscreteModeSet::coarse);

    m.def("discretize", &discretize, py::arg("sd"), py::arg("n_modes"), py::arg("rule"),
          py::arg("tail_mass") = 1e-10);

    py::class_<CrossCheckReport>(m, "CrossCheckReport")
        .def_readonly("n_modes", &CrossCheckReport::n_modes)
        .def_readonly("max_amplitude_dev", &CrossCheckReport::max_amplitude_dev)
        .def_readonly("intensity_dev", &CrossCheckReport::intensity_dev)
        .def_readonly("worst_mode", &CrossCheckReport::worst_mode)
        .def_readonly("passed", &CrossCheckReport::pass);

    m.def("cross_check", &cross_check, py::arg("sd"), py::arg("train"), py::arg("t"),
          py::arg("n_modes"), py::arg("rule"), py::arg("tolerance") = 1e-10);
}
