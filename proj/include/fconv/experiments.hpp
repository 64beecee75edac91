// experiments.hpp: scenario runners for the down-conversion experiments.
//
// Each runner is a pure function of its arguments and returns a ScanResult
// whose metadata records the backend, cutoffs and parameters used.

#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "fconv/devices.hpp"
#include "fconv/fock.hpp"
#include "fconv/scan_result.hpp"

namespace fconv {

struct RunOptions {
    Backend backend = Backend::fock;
    // Per-mode cutoff for the Fock backend. When unset, the smallest cutoff
    // meeting the truncation policy is chosen per scenario.
    std::optional<int> cutoff;
};

// Converter angle whose conversion probability sin^2(theta) equals `efficiency`.
inline double theta_for_efficiency(double efficiency) { return std::asin(std::sqrt(efficiency)); }

// Coherent pump -> Attenuator(T) -> Converter(theta); records the idler mean
// photon number plus a constant detector floor. Transmissions must lie in
// (0, 1] and be strictly decreasing.
ScanResult run_linearity(const std::vector<double>& transmissions, double theta,
                         Complex alpha_pump, double noise_floor, const RunOptions& options = {});

// Degenerate configuration (idler and reference at half the pump frequency).
// The pump |alpha_pump e^{i phi_p}> is converted with Converter(theta, phi_s);
// the idler is then mixed with the reference |alpha_ref> on a 50/50 combiner
// (Converter with theta = pi/4) and the photon number of the idler output
// port is recorded. Pump phases must be strictly increasing.
ScanResult run_fringe(const std::vector<double>& phi_p_points, Complex alpha_pump,
                      Complex alpha_ref, double theta, double phi_s,
                      const RunOptions& options = {});

// Visibility of the fringe above: 2|a_i||alpha_ref| / (|a_i|^2 + |alpha_ref|^2)
// with |a_i| = |alpha_pump| sin(theta).
double fringe_visibility(Complex alpha_pump, Complex alpha_ref, double theta);

// For each strength s: idler X-quadrature variance after Converter(theta = s)
// on vacuum, and idler variance and mean photon number after
// Amplifier(squeeze = s) on vacuum.
ScanResult run_noise_comparison(const std::vector<double>& strength_points,
                                const RunOptions& options = {});

// Trilinear evolution of pump_input (x) |alpha_s>_signal (x) |0>_idler with
// eta_tau = theta / alpha_s, signal traced out, compared by fidelity with the
// linearized Converter(theta) acting on pump_input (x) |0>. `pump_input` is a
// single-mode state; the idler gets the same cutoff. Fock backend only.
ScanResult run_depletion_convergence(const std::vector<double>& alpha_s_points, double theta,
                                     const PureState& pump_input,
                                     const RunOptions& options = {});

// Converter phase that the trilinear coupler reduces to when the signal is
// replaced by the classical amplitude alpha_s.
double linearized_converter_phase(double coupler_phase, Complex alpha_s);

struct WdmChannel {
    double signal_frequency = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

struct WdmSpec {
    double pump_frequency = 0.0;
    std::vector<WdmChannel> channels;

    // omega_p - omega_s for every channel.
    std::vector<double> idler_frequencies() const;
    // EnergyConservationViolation if an idler frequency is <= 0, InvalidArgument
    // for an empty channel list.
    void validate() const;
};

struct WdmResult {
    ScanResult scan;
    // amplitudes[0] is the residual pump amplitude c_0, amplitudes[k] the
    // amplitude c_k of one photon in idler channel k.
    std::vector<Complex> amplitudes;
};

// Single pump photon through the cascade pump <-> idler_k (Converter with
// theta_k, phi_k, in channel order). Analytically
//   c_k = -e^{-i phi_k} sin(theta_k) prod_{j<k} cos(theta_j).
WdmResult run_wdm(const WdmSpec& spec, const RunOptions& options = {});

}  // namespace fconv
