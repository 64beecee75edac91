#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fconv/devices.hpp"
#include "fconv/errors.hpp"
#include "fconv/experiments.hpp"
#include "fconv/gaussian.hpp"

namespace py = pybind11;
using namespace fconv;

namespace {

template <class E>
void register_error(py::module_& m, const char* name, py::handle base) {
    py::register_exception<E>(m, name, base);
}

std::string device_repr(const Device& d) {
    std::string out = device_name(d) + "(";
    const auto labels = device_modes(d);
    for (std::size_t k = 0; k < labels.size(); ++k) out += (k ? ", " : "") + labels[k];
    return out + ")";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Truncated-Fock and Gaussian simulation of frequency conversion";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    register_error<InvalidArgument>(m, "InvalidArgument", base);
    register_error<UnknownMode>(m, "UnknownMode", base);
    register_error<OccupationExceedsCutoff>(m, "OccupationExceedsCutoff", base);
    register_error<CutoffTooSmall>(m, "CutoffTooSmall", base);
    register_error<DimensionMismatch>(m, "DimensionMismatch", base);
    register_error<NotUnitary>(m, "NotUnitary", base);
    register_error<TransmissionOutOfRange>(m, "TransmissionOutOfRange", base);
    register_error<NonGaussianDevice>(m, "NonGaussianDevice", base);
    register_error<EnergyConservationViolation>(m, "EnergyConservationViolation", base);

    // ------------------------------------------------------------ modes

    py::class_<Mode>(m, "Mode")
        .def(py::init<std::string, double, int>(), py::arg("label"), py::arg("frequency") = 1.0,
             py::arg("cutoff") = 1)
        .def_readwrite("label", &Mode::label)
        .def_readwrite("frequency", &Mode::frequency)
        .def_readwrite("cutoff", &Mode::cutoff)
        .def("__repr__", [](const Mode& x) {
            return "Mode('" + x.label + "', frequency=" + format_double(x.frequency) +
                   ", cutoff=" + std::to_string(x.cutoff) + ")";
        });

    py::class_<ModeRegistry>(m, "ModeRegistry")
        .def(py::init<std::vector<Mode>>(), py::arg("modes"))
        .def("__len__", &ModeRegistry::size)
        .def_property_readonly("modes", &ModeRegistry::modes)
        .def_property_readonly("dimension", &ModeRegistry::dimension)
        .def("index_of", &ModeRegistry::index_of)
        .def("__contains__", &ModeRegistry::contains)
        .def("basis_index", &ModeRegistry::basis_index)
        .def("occupations", &ModeRegistry::occupations)
        .def("subset", &ModeRegistry::subset)
        .def(py::self == py::self);

    // ------------------------------------------------------------ Fock states

    py::class_<PureState>(m, "PureState")
        .def(py::init<ModeRegistry, CVector>(), py::arg("registry"), py::arg("amplitudes"))
        .def_property_readonly("registry", &PureState::registry)
        .def_property_readonly("amplitudes", &PureState::amplitudes)
        .def("amplitude", &PureState::amplitude, py::arg("occupations"));

    py::class_<FockDensityOp>(m, "FockDensityOp")
        .def(py::init<ModeRegistry, CMatrix>(), py::arg("registry"), py::arg("matrix"))
        .def_property_readonly("registry", &FockDensityOp::registry)
        .def_property_readonly("matrix", &FockDensityOp::matrix)
        .def("trace", &FockDensityOp::trace)
        .def("purity", &FockDensityOp::purity)
        .def("min_eigenvalue", &FockDensityOp::min_eigenvalue);

    m.def("make_vacuum", &make_vacuum, py::arg("registry"));
    m.def("make_fock", &make_fock, py::arg("registry"), py::arg("occupations"));
    m.def("make_coherent", &make_coherent, py::arg("registry"), py::arg("mode"), py::arg("alpha"));
    m.def("tensor", &tensor);
    m.def("to_density", &to_density);
    m.def("required_coherent_cutoff", &required_coherent_cutoff, py::arg("mean_photons"),
          py::arg("tolerance") = kCoherentTailTolerance);
    m.def("apply_loss", &apply_loss, py::arg("state"), py::arg("mode"), py::arg("transmission"));
    m.def("partial_trace", py::overload_cast<const FockDensityOp&, const std::vector<std::string>&>(&partial_trace),
          py::arg("state"), py::arg("keep"));
    m.def("partial_trace", py::overload_cast<const PureState&, const std::vector<std::string>&>(&partial_trace),
          py::arg("state"), py::arg("keep"));
    m.def("apply_unitary", py::overload_cast<const PureState&, const CMatrix&>(&apply_unitary));
    m.def("apply_unitary", py::overload_cast<const FockDensityOp&, const CMatrix&>(&apply_unitary));

    m.def("mean_photon", &mean_photon<PureState>, py::arg("state"), py::arg("mode"));
    m.def("mean_photon", &mean_photon<FockDensityOp>, py::arg("state"), py::arg("mode"));
    m.def("mean_field", &mean_field<PureState>, py::arg("state"), py::arg("mode"));
    m.def("mean_field", &mean_field<FockDensityOp>, py::arg("state"), py::arg("mode"));
    m.def("quadrature_variance", &quadrature_variance<PureState>, py::arg("state"), py::arg("mode"),
          py::arg("phase") = 0.0);
    m.def("quadrature_variance", &quadrature_variance<FockDensityOp>, py::arg("state"), py::arg("mode"),
          py::arg("phase") = 0.0);
    m.def("fidelity", py::overload_cast<const PureState&, const PureState&>(&fidelity));
    m.def("fidelity", py::overload_cast<const PureState&, const FockDensityOp&>(&fidelity));

    // ------------------------------------------------------------ devices

    py::class_<Converter>(m, "Converter")
        .def(py::init<std::string, std::string, double, double>(), py::arg("pump_mode"), py::arg("idler_mode"),
             py::arg("theta"), py::arg("phi_s") = 0.0)
        .def_readwrite("pump_mode", &Converter::pump_mode)
        .def_readwrite("idler_mode", &Converter::idler_mode)
        .def_readwrite("theta", &Converter::theta)
        .def_readwrite("phi_s", &Converter::phi_s);
    py::class_<Amplifier>(m, "Amplifier")
        .def(py::init<std::string, std::string, double, double>(), py::arg("signal_mode"), py::arg("idler_mode"),
             py::arg("squeeze"), py::arg("phi_p") = 0.0)
        .def_readwrite("signal_mode", &Amplifier::signal_mode)
        .def_readwrite("idler_mode", &Amplifier::idler_mode)
        .def_readwrite("squeeze", &Amplifier::squeeze)
        .def_readwrite("phi_p", &Amplifier::phi_p);
    py::class_<TrilinearCoupler>(m, "TrilinearCoupler")
        .def(py::init<std::string, std::string, std::string, double, double>(), py::arg("pump_mode"),
             py::arg("signal_mode"), py::arg("idler_mode"), py::arg("eta_tau"), py::arg("phase") = 0.0)
        .def_readwrite("eta_tau", &TrilinearCoupler::eta_tau)
        .def_readwrite("phase", &TrilinearCoupler::phase);
    py::class_<PhaseShift>(m, "PhaseShift")
        .def(py::init<std::string, double>(), py::arg("mode"), py::arg("phi"))
        .def_readwrite("phi", &PhaseShift::phi);
    py::class_<Attenuator>(m, "Attenuator")
        .def(py::init<std::string, double>(), py::arg("mode"), py::arg("transmission"))
        .def_readwrite("transmission", &Attenuator::transmission);

    m.def("device_name", &device_name);
    m.def("device_repr", &device_repr);

    py::class_<Circuit>(m, "Circuit")
        .def(py::init<ModeRegistry, std::vector<Device>>(), py::arg("registry"), py::arg("devices"))
        .def_readonly("registry", &Circuit::registry)
        .def_readonly("devices", &Circuit::devices);

    m.def("converter_unitary", &converter_unitary);
    m.def("amplifier_unitary", &amplifier_unitary);
    m.def("trilinear_unitary", &trilinear_unitary);
    m.def("required_squeezed_cutoff", &required_squeezed_cutoff, py::arg("squeeze"),
          py::arg("tolerance") = kAmplifierTailTolerance);

    py::enum_<Backend>(m, "Backend").value("fock", Backend::fock).value("gaussian", Backend::gaussian);

    py::class_<CompiledCircuit>(m, "CompiledCircuit")
        .def_property_readonly("backend", &CompiledCircuit::backend)
        .def("__len__", &CompiledCircuit::size)
        .def("is_unitary", &CompiledCircuit::is_unitary)
        .def("run", py::overload_cast<const PureState&>(&CompiledCircuit::run, py::const_))
        .def("run", py::overload_cast<const FockDensityOp&>(&CompiledCircuit::run, py::const_))
        .def("run", py::overload_cast<const GaussianState&>(&CompiledCircuit::run, py::const_));
    m.def("compile_circuit", &compile_circuit, py::arg("circuit"), py::arg("backend") = Backend::fock);

    // ------------------------------------------------------------ Gaussian

    py::class_<GaussianState>(m, "GaussianState")
        .def(py::init<ModeRegistry, Eigen::VectorXd, Eigen::MatrixXd>(), py::arg("registry"), py::arg("means"),
             py::arg("covariance"))
        .def_property_readonly("registry", &GaussianState::registry)
        .def_property_readonly("means", &GaussianState::means)
        .def_property_readonly("covariance", &GaussianState::covariance)
        .def("uncertainty_margin", &GaussianState::uncertainty_margin);

    m.def("gaussian_vacuum", &gaussian_vacuum);
    m.def("gaussian_coherent", &gaussian_coherent, py::arg("registry"), py::arg("mode"), py::arg("alpha"));
    m.def("gaussian_apply", &gaussian_apply);
    m.def("symplectic_matrix", &symplectic_matrix);
    m.def("gaussian_mean_photon", &gaussian_mean_photon);
    m.def("gaussian_mean_field", &gaussian_mean_field);
    m.def("gaussian_quadrature_variance", &gaussian_quadrature_variance, py::arg("state"), py::arg("mode"),
          py::arg("phase") = 0.0);
    m.def("moments_of", py::overload_cast<const PureState&>(&moments_of));
    m.def("moments_of", py::overload_cast<const FockDensityOp&>(&moments_of));

    // ------------------------------------------------------------ experiments

    py::class_<ScanResult>(m, "ScanResult")
        .def_readonly("name", &ScanResult::name)
        .def_readonly("abscissa_label", &ScanResult::abscissa_label)
        .def_readonly("column_labels", &ScanResult::column_labels)
        .def_readonly("metadata", &ScanResult::metadata)
        .def("__len__", [](const ScanResult& r) { return r.rows.size(); })
        .def("abscissas", &ScanResult::abscissas)
        .def("column", &ScanResult::column)
        .def("to_csv", &to_csv);
    m.def("write_csv", &write_csv, py::arg("result"), py::arg("path"));

    py::class_<RunOptions>(m, "RunOptions")
        .def(py::init([](Backend b, std::optional<int> cutoff) { return RunOptions{b, cutoff}; }),
             py::arg("backend") = Backend::fock, py::arg("cutoff") = py::none())
        .def_readwrite("backend", &RunOptions::backend)
        .def_readwrite("cutoff", &RunOptions::cutoff);

    m.def("theta_for_efficiency", &theta_for_efficiency);
    m.def("fringe_visibility", &fringe_visibility);
    m.def("linearized_converter_phase", &linearized_converter_phase);
    m.def("run_linearity", &run_linearity, py::arg("transmissions"), py::arg("theta"), py::arg("alpha_pump"),
          py::arg("noise_floor") = 0.0, py::arg("options") = RunOptions{});
    m.def("run_fringe", &run_fringe, py::arg("phi_p_points"), py::arg("alpha_pump"), py::arg("alpha_ref"),
          py::arg("theta"), py::arg("phi_s") = 0.0, py::arg("options") = RunOptions{});
    m.def("run_noise_comparison", &run_noise_comparison, py::arg("strength_points"),
          py::arg("options") = RunOptions{});
    m.def("run_depletion_convergence", &run_depletion_convergence, py::arg("alpha_s_points"), py::arg("theta"),
          py::arg("pump_input"), py::arg("options") = RunOptions{});

    py::class_<WdmChannel>(m, "WdmChannel")
        .def(py::init<double, double, double>(), py::arg("signal_frequency"), py::arg("theta"),
             py::arg("phi") = 0.0)
        .def_readwrite("signal_frequency", &WdmChannel::signal_frequency)
        .def_readwrite("theta", &WdmChannel::theta)
        .def_readwrite("phi", &WdmChannel::phi);
    py::class_<WdmSpec>(m, "WdmSpec")
        .def(py::init<double, std::vector<WdmChannel>>(), py::arg("pump_frequency"), py::arg("channels"))
        .def_readwrite("pump_frequency", &WdmSpec::pump_frequency)
        .def_readwrite("channels", &WdmSpec::channels)
        .def("idler_frequencies", &WdmSpec::idler_frequencies)
        .def("validate", &WdmSpec::validate);
    py::class_<WdmResult>(m, "WdmResult")
        .def_readonly("scan", &WdmResult::scan)
        .def_readonly("amplitudes", &WdmResult::amplitudes);
    m.def("run_wdm", &run_wdm, py::arg("spec"), py::arg("options") = RunOptions{});
}
