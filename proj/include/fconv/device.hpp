// device.hpp: descriptors of the optical transformations.
//
// Strong classical fields never appear on their own: a converter or amplifier
// is parametrized by the coupling angle |eta A| tau and the phase of the
// classical field, which is all the dynamics depend on.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fconv/modes.hpp"

namespace fconv {

// Linearized down-converter (strong signal injected). Heisenberg action:
//   a_p -> a_p cos(theta) + e^{i phi_s} a_i sin(theta)
//   a_i -> a_i cos(theta) - e^{-i phi_s} a_p sin(theta)
struct Converter {
    std::string pump_mode;
    std::string idler_mode;
    double theta = 0.0;
    double phi_s = 0.0;
};

// Parametric amplifier with undepleted classical pump. Heisenberg action:
//   a_s -> G a_s + g a_i^dag,  a_i -> G a_i + g a_s^dag,
//   G = cosh(squeeze),  g = -e^{i phi_p} sinh(squeeze).
struct Amplifier {
    std::string signal_mode;
    std::string idler_mode;
    double squeeze = 0.0;
    double phi_p = 0.0;
};

// Full three-wave mixing, U = exp(eta_tau (e^{i phase} a_p a_s^dag a_i^dag - h.c.)).
struct TrilinearCoupler {
    std::string pump_mode;
    std::string signal_mode;
    std::string idler_mode;
    double eta_tau = 0.0;
    double phase = 0.0;
};

// a -> e^{i phi} a
struct PhaseShift {
    std::string mode;
    double phi = 0.0;
};

struct Attenuator {
    std::string mode;
    double transmission = 1.0;
};

using Device = std::variant<Converter, Amplifier, TrilinearCoupler, PhaseShift, Attenuator>;

std::string device_name(const Device& device);

// Mode labels the device acts on, in declaration order.
std::vector<std::string> device_modes(const Device& device);

// Throws UnknownMode, InvalidArgument (negative strength, repeated modes) or
// TransmissionOutOfRange.
void validate(const Device& device, const ModeRegistry& registry);

struct Circuit {
    ModeRegistry registry;
    std::vector<Device> devices;

    // Validates every device against the registry.
    Circuit(ModeRegistry registry, std::vector<Device> devices);
};

}  // namespace fconv
