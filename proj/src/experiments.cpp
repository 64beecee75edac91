#include "fconv/experiments.hpp"

#include <algorithm>
#include <numbers>

#include "fconv/errors.hpp"
#include "fconv/gaussian.hpp"

namespace fconv {

namespace {

// Automatic amplifier cutoffs target a much smaller tail than the 1e-8
// admission policy so that moments are accurate to ~1e-10.
constexpr double kAutoSqueezedTail = 1e-16;

ModeRegistry single_mode(const std::string& label, double frequency, int cutoff) {
    return ModeRegistry({Mode{label, frequency, cutoff}});
}

PureState coherent_mode(const std::string& label, double frequency, int cutoff, Complex alpha) {
    return make_coherent(single_mode(label, frequency, cutoff), label, alpha);
}

GaussianState gaussian_coherent_product(const ModeRegistry& reg,
                                        const std::vector<std::pair<std::string, Complex>>& fields) {
    GaussianState g = gaussian_vacuum(reg);
    Eigen::VectorXd means = g.means();
    for (const auto& [label, alpha] : fields) {
        const auto k = static_cast<Eigen::Index>(2 * reg.index_of(label));
        means(k) = kMeanPerCoherentAmplitude * alpha.real();
        means(k + 1) = kMeanPerCoherentAmplitude * alpha.imag();
    }
    return GaussianState(reg, std::move(means), g.covariance());
}

ScanResult make_result(std::string name, std::string abscissa, std::vector<std::string> columns,
                       const RunOptions& options) {
    ScanResult r;
    r.name = std::move(name);
    r.abscissa_label = std::move(abscissa);
    r.column_labels = std::move(columns);
    r.metadata["experiment"] = r.name;
    r.metadata["backend"] = backend_name(options.backend);
    return r;
}

void put(ScanResult& r, const std::string& key, double value) { r.metadata[key] = format_double(value); }

void put(ScanResult& r, const std::string& key, Complex value) {
    put(r, key + "_re", value.real());
    put(r, key + "_im", value.imag());
}

}  // namespace

// ---------------------------------------------------------------- linearity

ScanResult run_linearity(const std::vector<double>& transmissions, double theta,
                         Complex alpha_pump, double noise_floor, const RunOptions& options) {
    if (transmissions.empty()) throw InvalidArgument("linearity: transmission list is empty");
    for (std::size_t j = 0; j < transmissions.size(); ++j) {
        const double t = transmissions[j];
        if (!(t > 0.0 && t <= 1.0))
            throw InvalidArgument("linearity: transmission " + format_double(t) + " outside (0, 1]");
        if (j > 0 && !(t < transmissions[j - 1]))
            throw InvalidArgument("linearity: transmissions must be strictly decreasing");
    }
    if (!(noise_floor >= 0.0)) throw InvalidArgument("linearity: noise floor must be >= 0");

    ScanResult r = make_result("linearity", "transmission", {"idler_signal"}, options);
    put(r, "theta", theta);
    put(r, "alpha_pump", alpha_pump);
    put(r, "noise_floor", noise_floor);

    if (options.backend == Backend::fock) {
        const int cutoff = options.cutoff.value_or(required_coherent_cutoff(std::norm(alpha_pump)));
        r.metadata["cutoff"] = std::to_string(cutoff);
        const ModeRegistry reg({{"pump", 2.0, cutoff}, {"idler", 1.0, cutoff}});
        const FockDensityOp input = to_density(make_coherent(reg, "pump", alpha_pump));
        const BlockedUnitary converter = converter_blocks(reg, Converter{"pump", "idler", theta, 0.0});
        for (double t : transmissions) {
            const FockDensityOp out = converter.apply(apply_loss(input, "pump", t));
            r.add_row(t, {mean_photon(out, "idler") + noise_floor});
        }
    } else {
        const ModeRegistry reg({{"pump", 2.0, 1}, {"idler", 1.0, 1}});
        const GaussianState input = gaussian_coherent(reg, "pump", alpha_pump);
        for (double t : transmissions) {
            const CompiledCircuit c = compile_circuit(
                Circuit(reg, {Attenuator{"pump", t}, Converter{"pump", "idler", theta, 0.0}}),
                Backend::gaussian);
            r.add_row(t, {gaussian_mean_photon(c.run(input), "idler") + noise_floor});
        }
    }
    return r;
}

// ---------------------------------------------------------------- fringe

double fringe_visibility(Complex alpha_pump, Complex alpha_ref, double theta) {
    const double ai = std::abs(alpha_pump) * std::abs(std::sin(theta));
    const double ar = std::abs(alpha_ref);
    const double denom = ai * ai + ar * ar;
    return denom == 0.0 ? 0.0 : 2.0 * ai * ar / denom;
}

ScanResult run_fringe(const std::vector<double>& phi_p_points, Complex alpha_pump,
                      Complex alpha_ref, double theta, double phi_s, const RunOptions& options) {
    for (std::size_t j = 1; j < phi_p_points.size(); ++j)
        if (!(phi_p_points[j] > phi_p_points[j - 1]))
            throw InvalidArgument("fringe: pump phases must be strictly increasing");

    ScanResult r = make_result("fringe", "pump_phase", {"output_photons"}, options);
    put(r, "theta", theta);
    put(r, "phi_s", phi_s);
    put(r, "alpha_pump", alpha_pump);
    put(r, "alpha_ref", alpha_ref);
    put(r, "visibility_closed_form", fringe_visibility(alpha_pump, alpha_ref, theta));

    constexpr double kPumpFrequency = 2.0;
    constexpr double kLaserFrequency = kPumpFrequency / 2.0;  // degenerate: omega_s = omega_i
    const std::vector<Device> devices = {
        Converter{"pump", "idler", theta, phi_s},
        Converter{"idler", "reference", std::numbers::pi / 4.0, 0.0},
    };

    if (options.backend == Backend::fock) {
        const double idler_amp = std::abs(alpha_pump) * std::abs(std::sin(theta));
        const double combined = idler_amp + std::abs(alpha_ref);
        const int pump_cut = options.cutoff.value_or(required_coherent_cutoff(std::norm(alpha_pump)));
        const int laser_cut = options.cutoff.value_or(required_coherent_cutoff(combined * combined));
        r.metadata["cutoff"] = std::to_string(pump_cut) + "/" + std::to_string(laser_cut) + "/" +
                               std::to_string(laser_cut);
        const ModeRegistry reg({{"pump", kPumpFrequency, pump_cut},
                                {"idler", kLaserFrequency, laser_cut},
                                {"reference", kLaserFrequency, laser_cut}});
        const CompiledCircuit circuit = compile_circuit(Circuit(reg, devices), Backend::fock);
        const PureState tail = tensor(make_vacuum(single_mode("idler", kLaserFrequency, laser_cut)),
                                      coherent_mode("reference", kLaserFrequency, laser_cut, alpha_ref));
        for (double phi : phi_p_points) {
            const PureState in = tensor(coherent_mode("pump", kPumpFrequency, pump_cut,
                                                      alpha_pump * std::polar(1.0, phi)),
                                        tail);
            r.add_row(phi, {mean_photon(circuit.run(in), "idler")});
        }
    } else {
        const ModeRegistry reg(
            {{"pump", kPumpFrequency, 1}, {"idler", kLaserFrequency, 1}, {"reference", kLaserFrequency, 1}});
        const CompiledCircuit circuit = compile_circuit(Circuit(reg, devices), Backend::gaussian);
        for (double phi : phi_p_points) {
            const GaussianState in = gaussian_coherent_product(
                reg, {{"pump", alpha_pump * std::polar(1.0, phi)}, {"reference", alpha_ref}});
            r.add_row(phi, {gaussian_mean_photon(circuit.run(in), "idler")});
        }
    }
    return r;
}

// ---------------------------------------------------------------- noise

ScanResult run_noise_comparison(const std::vector<double>& strength_points,
                                const RunOptions& options) {
    ScanResult r = make_result(
        "noise", "strength",
        {"converter_variance", "amplifier_variance", "amplifier_spontaneous_photons"}, options);
    for (std::size_t j = 0; j < strength_points.size(); ++j) {
        if (!(strength_points[j] >= 0.0)) throw InvalidArgument("noise: strengths must be >= 0");
        if (j > 0 && !(strength_points[j] > strength_points[j - 1]))
            throw InvalidArgument("noise: strengths must be strictly increasing");
    }

    if (options.backend == Backend::fock) {
        const double s_max = strength_points.empty() ? 0.0 : strength_points.back();
        const int conv_cut = options.cutoff.value_or(1);
        const int amp_cut = options.cutoff.value_or(required_squeezed_cutoff(s_max, kAutoSqueezedTail));
        r.metadata["cutoff"] = std::to_string(conv_cut) + "/" + std::to_string(amp_cut);
        const ModeRegistry conv_reg({{"pump", 2.0, conv_cut}, {"idler", 1.0, conv_cut}});
        const ModeRegistry amp_reg({{"signal", 1.0, amp_cut}, {"idler", 1.0, amp_cut}});
        const PureState conv_in = make_vacuum(conv_reg);
        const PureState amp_in = make_vacuum(amp_reg);
        for (double s : strength_points) {
            const PureState c = converter_blocks(conv_reg, Converter{"pump", "idler", s, 0.0}).apply(conv_in);
            const PureState a = amplifier_blocks(amp_reg, Amplifier{"signal", "idler", s, 0.0}).apply(amp_in);
            r.add_row(s, {quadrature_variance(c, "idler", 0.0), quadrature_variance(a, "idler", 0.0),
                          mean_photon(a, "idler")});
        }
    } else {
        const ModeRegistry conv_reg({{"pump", 2.0, 1}, {"idler", 1.0, 1}});
        const ModeRegistry amp_reg({{"signal", 1.0, 1}, {"idler", 1.0, 1}});
        for (double s : strength_points) {
            const GaussianState c =
                gaussian_apply(gaussian_vacuum(conv_reg), Converter{"pump", "idler", s, 0.0});
            const GaussianState a =
                gaussian_apply(gaussian_vacuum(amp_reg), Amplifier{"signal", "idler", s, 0.0});
            r.add_row(s, {gaussian_quadrature_variance(c, "idler", 0.0),
                          gaussian_quadrature_variance(a, "idler", 0.0),
                          gaussian_mean_photon(a, "idler")});
        }
    }
    return r;
}

// ---------------------------------------------------------------- depletion

double linearized_converter_phase(double coupler_phase, Complex alpha_s) {
    // theta e^{i phi_s} = -eta_tau conj(e^{i phase}) alpha_s
    return std::arg(-std::polar(1.0, -coupler_phase) * alpha_s);
}

ScanResult run_depletion_convergence(const std::vector<double>& alpha_s_points, double theta,
                                     const PureState& pump_input, const RunOptions& options) {
    if (options.backend != Backend::fock)
        throw NonGaussianDevice(
            "depletion: the trilinear coupler is non-Gaussian; only the Fock backend applies");
    if (pump_input.registry().size() != 1)
        throw DimensionMismatch("depletion: pump input must be a single-mode state");
    for (std::size_t j = 0; j < alpha_s_points.size(); ++j) {
        if (!(alpha_s_points[j] > 0.0)) throw InvalidArgument("depletion: |alpha_s| must be > 0");
        if (j > 0 && !(alpha_s_points[j] > alpha_s_points[j - 1]))
            throw InvalidArgument("depletion: |alpha_s| points must be strictly increasing");
    }

    const Mode pump = pump_input.registry().mode(0);
    const int pump_cut = pump.cutoff;
    const Mode idler{"idler", pump.frequency / 2.0, pump_cut};
    const std::string signal_label = "signal";

    ScanResult r = make_result("depletion", "alpha_s", {"fidelity", "idler_photons"}, options);
    put(r, "theta", theta);
    r.metadata["pump_cutoff"] = std::to_string(pump_cut);

    const ModeRegistry pi_reg({pump, idler});
    const PureState linear_in = tensor(pump_input, make_vacuum(ModeRegistry({idler})));

    std::string cutoffs;
    for (double alpha_s : alpha_s_points) {
        // pump photons can only move into the signal, so pad by the pump cutoff
        const int signal_cut =
            options.cutoff.value_or(required_coherent_cutoff(alpha_s * alpha_s) + pump_cut);
        cutoffs += (cutoffs.empty() ? "" : "/") + std::to_string(signal_cut);

        const PureState signal = coherent_mode(signal_label, pump.frequency / 2.0, signal_cut, alpha_s);
        const PureState in = tensor(tensor(pump_input, signal), make_vacuum(ModeRegistry({idler})));
        const TrilinearCoupler coupler{pump.label, signal_label, "idler", theta / alpha_s, 0.0};
        const PureState out = trilinear_blocks(in.registry(), coupler).apply(in);
        const FockDensityOp reduced = partial_trace(out, {pump.label, "idler"});

        const Converter linear{pump.label, "idler", theta,
                               linearized_converter_phase(coupler.phase, alpha_s)};
        const PureState expected = converter_blocks(pi_reg, linear).apply(linear_in);
        r.add_row(alpha_s, {fidelity(expected, reduced), mean_photon(reduced, "idler")});
    }
    r.metadata["signal_cutoff"] = cutoffs;
    return r;
}

// ---------------------------------------------------------------- WDM

std::vector<double> WdmSpec::idler_frequencies() const {
    std::vector<double> out;
    out.reserve(channels.size());
    for (const auto& c : channels) out.push_back(pump_frequency - c.signal_frequency);
    return out;
}

void WdmSpec::validate() const {
    if (channels.empty()) throw InvalidArgument("wdm: at least one channel is required");
    if (!(pump_frequency > 0.0)) throw InvalidArgument("wdm: pump frequency must be > 0");
    const auto idlers = idler_frequencies();
    for (std::size_t k = 0; k < idlers.size(); ++k) {
        if (!(channels[k].signal_frequency > 0.0))
            throw InvalidArgument("wdm: signal frequency of channel " + std::to_string(k + 1) +
                                  " must be > 0");
        if (!(idlers[k] > 0.0))
            throw EnergyConservationViolation(
                "wdm: channel " + std::to_string(k + 1) + " has idler frequency omega_p - omega_s = " +
                format_double(idlers[k]) + " <= 0");
        if (!(channels[k].theta >= 0.0)) throw InvalidArgument("wdm: theta must be >= 0");
    }
}

WdmResult run_wdm(const WdmSpec& spec, const RunOptions& options) {
    spec.validate();
    if (options.backend != Backend::fock)
        throw NonGaussianDevice("wdm: a single-photon input is non-Gaussian; only the Fock backend applies");

    const int cutoff = options.cutoff.value_or(1);
    const auto idlers = spec.idler_frequencies();
    std::vector<Mode> modes{{"pump", spec.pump_frequency, cutoff}};
    std::vector<Device> devices;
    for (std::size_t k = 0; k < idlers.size(); ++k) {
        const std::string label = "idler_" + std::to_string(k + 1);
        modes.push_back({label, idlers[k], cutoff});
        devices.push_back(Converter{"pump", label, spec.channels[k].theta, spec.channels[k].phi});
    }
    const ModeRegistry reg(modes);
    const CompiledCircuit circuit = compile_circuit(Circuit(reg, devices), Backend::fock);

    std::vector<int> occ(reg.size(), 0);
    occ[0] = 1;
    const PureState out = circuit.run(make_fock(reg, occ));

    WdmResult result;
    result.scan = make_result("wdm", "channel",
                              {"frequency", "probability", "amplitude_re", "amplitude_im"}, options);
    result.scan.metadata["cutoff"] = std::to_string(cutoff);
    put(result.scan, "pump_frequency", spec.pump_frequency);

    double norm = 0.0, photons = 0.0;
    for (std::size_t k = 0; k < reg.size(); ++k) {
        std::vector<int> single(reg.size(), 0);
        single[k] = 1;
        const Complex c = out.amplitude(single);
        result.amplitudes.push_back(c);
        norm += std::norm(c);
        photons += mean_photon(out, reg.mode(k).label);
        result.scan.add_row(static_cast<double>(k),
                            {reg.mode(k).frequency, std::norm(c), c.real(), c.imag()});
    }
    put(result.scan, "norm", norm);
    put(result.scan, "total_photons", photons);
    return result;
}

}  // namespace fconv
