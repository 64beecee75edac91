#include "fconv/device.hpp"

#include <set>

#include "fconv/detail/overloaded.hpp"
#include "fconv/errors.hpp"

namespace fconv {

namespace {

using detail::Overloaded;

void require_nonnegative(double value, const char* what) {
    if (!(value >= 0.0))
        throw InvalidArgument(std::string(what) + " must be >= 0 (got " + std::to_string(value) + ")");
}

}  // namespace

std::string device_name(const Device& device) {
    return std::visit(Overloaded{
                          [](const Converter&) { return std::string("Converter"); },
                          [](const Amplifier&) { return std::string("Amplifier"); },
                          [](const TrilinearCoupler&) { return std::string("TrilinearCoupler"); },
                          [](const PhaseShift&) { return std::string("PhaseShift"); },
                          [](const Attenuator&) { return std::string("Attenuator"); },
                      },
                      device);
}

std::vector<std::string> device_modes(const Device& device) {
    return std::visit(
        Overloaded{
            [](const Converter& d) { return std::vector<std::string>{d.pump_mode, d.idler_mode}; },
            [](const Amplifier& d) { return std::vector<std::string>{d.signal_mode, d.idler_mode}; },
            [](const TrilinearCoupler& d) {
                return std::vector<std::string>{d.pump_mode, d.signal_mode, d.idler_mode};
            },
            [](const PhaseShift& d) { return std::vector<std::string>{d.mode}; },
            [](const Attenuator& d) { return std::vector<std::string>{d.mode}; },
        },
        device);
}

void validate(const Device& device, const ModeRegistry& registry) {
    const auto modes = device_modes(device);
    for (const auto& m : modes) (void)registry.index_of(m);
    if (std::set<std::string>(modes.begin(), modes.end()).size() != modes.size())
        throw InvalidArgument(device_name(device) + " must act on distinct modes");

    std::visit(Overloaded{
                   [](const Converter& d) { require_nonnegative(d.theta, "converter theta"); },
                   [](const Amplifier& d) { require_nonnegative(d.squeeze, "amplifier squeeze"); },
                   [](const TrilinearCoupler& d) {
                       require_nonnegative(d.eta_tau, "trilinear eta_tau");
                   },
                   [](const PhaseShift&) {},
                   [](const Attenuator& d) {
                       if (!(d.transmission >= 0.0 && d.transmission <= 1.0))
                           throw TransmissionOutOfRange("transmission " +
                                                        std::to_string(d.transmission) +
                                                        " outside [0, 1]");
                   },
               },
               device);
}

Circuit::Circuit(ModeRegistry reg, std::vector<Device> devs)
    : registry(std::move(reg)), devices(std::move(devs)) {
    for (const auto& d : devices) validate(d, registry);
}

}  // namespace fconv
