// fock.hpp: exact states and channels on a truncated multimode Fock space.
//
// Quadrature convention used everywhere in the library:
//   X_phi = (a e^{-i phi} + a^dag e^{i phi}) / 2,   vacuum variance 1/4.
// Expectation values are evaluated from normal-ordered moments so the
// truncation edge does not bias them.

#pragma once

#include <complex>
#include <concepts>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "fconv/modes.hpp"

namespace fconv {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using SparseOp = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr double kCoherentTailTolerance = 1e-10;

class PureState {
public:
    // Throws DimensionMismatch on a size mismatch, InvalidArgument if the norm
    // is off by more than kNormTolerance.
    PureState(ModeRegistry registry, CVector amplitudes);

    const ModeRegistry& registry() const noexcept { return registry_; }
    const CVector& amplitudes() const noexcept { return amplitudes_; }
    Complex amplitude(const std::vector<int>& occupations) const;

private:
    ModeRegistry registry_;
    CVector amplitudes_;
};

class FockDensityOp {
public:
    // Validates Hermiticity and unit trace.
    FockDensityOp(ModeRegistry registry, CMatrix matrix);

    const ModeRegistry& registry() const noexcept { return registry_; }
    const CMatrix& matrix() const noexcept { return matrix_; }
    double trace() const { return matrix_.trace().real(); }
    double purity() const;
    // O(d^3); meant for tests and debug checks.
    double min_eigenvalue() const;

private:
    ModeRegistry registry_;
    CMatrix matrix_;
};

template <class S>
concept FockState = std::same_as<S, PureState> || std::same_as<S, FockDensityOp>;

// ---------------------------------------------------------------- states

PureState make_vacuum(const ModeRegistry& registry);
PureState make_fock(const ModeRegistry& registry, const std::vector<int>& occupations);

// Coherent amplitude on one mode, vacuum elsewhere. Fails with CutoffTooSmall
// when the Poisson tail beyond the cutoff exceeds kCoherentTailTolerance.
PureState make_coherent(const ModeRegistry& registry, std::string_view mode, Complex alpha);

// Product state; the registry is the concatenation of both registries.
PureState tensor(const PureState& a, const PureState& b);

// Poisson(mean) mass strictly above `cutoff`.
double poisson_tail(double mean, int cutoff);
// Smallest cutoff whose Poisson tail is <= tolerance.
int required_coherent_cutoff(double mean_photons, double tolerance = kCoherentTailTolerance);

FockDensityOp to_density(const PureState& state);

// ---------------------------------------------------------------- channels

// U must be square of the registry dimension and unitary within
// kUnitarityTolerance (DimensionMismatch / NotUnitary otherwise).
PureState apply_unitary(const PureState& state, const CMatrix& unitary);
FockDensityOp apply_unitary(const FockDensityOp& state, const CMatrix& unitary);

// Pure-loss channel with Kraus operators
//   K_k = (1-T)^{k/2} T^{n/2} a^k / sqrt(k!),  k = 0..cutoff.
FockDensityOp apply_loss(const FockDensityOp& state, std::string_view mode, double transmission);

// Reduced state on `keep` (registry order is retained).
FockDensityOp partial_trace(const FockDensityOp& state, const std::vector<std::string>& keep);
FockDensityOp partial_trace(const PureState& state, const std::vector<std::string>& keep);

// ---------------------------------------------------------------- observables

SparseOp lowering_operator(const ModeRegistry& registry, std::size_t mode);
SparseOp number_operator(const ModeRegistry& registry, std::size_t mode);

Complex expect(const PureState& state, const SparseOp& op);
Complex expect(const FockDensityOp& state, const SparseOp& op);

// <a_mode>
template <FockState S>
Complex mean_field(const S& state, std::string_view mode) {
    return expect(state, lowering_operator(state.registry(), state.registry().index_of(mode)));
}

template <FockState S>
double mean_photon(const S& state, std::string_view mode) {
    return expect(state, number_operator(state.registry(), state.registry().index_of(mode))).real();
}

template <FockState S>
double quadrature_variance(const S& state, std::string_view mode, double phase) {
    const auto k = state.registry().index_of(mode);
    const SparseOp a = lowering_operator(state.registry(), k);
    const SparseOp aa = a * a;
    const SparseOp n = number_operator(state.registry(), k);
    const Complex rot = std::polar(1.0, -phase);
    const double mean_x = (rot * expect(state, a)).real();
    const double second = 0.5 * (rot * rot * expect(state, aa)).real() +
                          0.5 * expect(state, n).real() + 0.25;
    return second - mean_x * mean_x;
}

// |<a|b>|^2 (DimensionMismatch on differing registries).
double fidelity(const PureState& a, const PureState& b);
// <psi|rho|psi>
double fidelity(const PureState& a, const FockDensityOp& b);

}  // namespace fconv
