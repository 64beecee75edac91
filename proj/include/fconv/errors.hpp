// errors.hpp: exception types raised by the simulator.

#pragma once

#include <stdexcept>
#include <string>

namespace fconv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class UnknownMode : public Error {
public:
    explicit UnknownMode(const std::string& label)
        : Error("unknown mode '" + label + "'"), label_(label) {}
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
};

class OccupationExceedsCutoff : public Error {
public:
    using Error::Error;
};

// Carries the smallest cutoff that would have satisfied the truncation policy.
class CutoffTooSmall : public Error {
public:
    CutoffTooSmall(const std::string& what, int required_cutoff)
        : Error(what + " (required cutoff >= " + std::to_string(required_cutoff) + ")"),
          required_cutoff_(required_cutoff) {}
    int required_cutoff() const noexcept { return required_cutoff_; }

private:
    int required_cutoff_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotUnitary : public Error {
public:
    using Error::Error;
};

class TransmissionOutOfRange : public Error {
public:
    using Error::Error;
};

class NonGaussianDevice : public Error {
public:
    using Error::Error;
};

class EnergyConservationViolation : public Error {
public:
    using Error::Error;
};

}  // namespace fconv
