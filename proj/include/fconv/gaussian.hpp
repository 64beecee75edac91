// gaussian.hpp: first and second moments of Gaussian states.
//
// Ordering of the phase-space vector is (x_1, p_1, ..., x_M, p_M) with
// x = (a + a^dag)/2 and p = (a - a^dag)/(2i), so [x, p] = i/2, the vacuum
// covariance is I/4 and a coherent state |alpha> has means
// kMeanPerCoherentAmplitude * (Re alpha, Im alpha).

#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "fconv/device.hpp"
#include "fconv/fock.hpp"
#include "fconv/modes.hpp"

namespace fconv {

inline constexpr double kVacuumQuadratureVariance = 0.25;
inline constexpr double kMeanPerCoherentAmplitude = 1.0;

class GaussianState {
public:
    // Sizes must be 2M; covariance symmetric within 1e-12.
    GaussianState(ModeRegistry registry, Eigen::VectorXd means, Eigen::MatrixXd covariance);

    const ModeRegistry& registry() const noexcept { return registry_; }
    const Eigen::VectorXd& means() const noexcept { return means_; }
    const Eigen::MatrixXd& covariance() const noexcept { return covariance_; }

    // Smallest eigenvalue of covariance + (i/4) Omega; >= 0 for physical states.
    double uncertainty_margin() const;

private:
    ModeRegistry registry_;
    Eigen::VectorXd means_;
    Eigen::MatrixXd covariance_;
};

Eigen::MatrixXd symplectic_form(std::size_t modes);

GaussianState gaussian_vacuum(const ModeRegistry& registry);
GaussianState gaussian_coherent(const ModeRegistry& registry, std::string_view mode, Complex alpha);

// Phase-space matrix S of a unitary Gaussian device (R -> S R in the Heisenberg
// picture). NonGaussianDevice for the trilinear coupler, InvalidArgument for
// the attenuator, which is a channel.
Eigen::MatrixXd symplectic_matrix(const ModeRegistry& registry, const Device& device);

// means <- S means, cov <- S cov S^T; the attenuator applies the loss map
// means_k <- sqrt(T) means_k, cov <- X cov X^T + (1-T)/4 on mode k.
GaussianState gaussian_apply(const GaussianState& state, const Device& device);

double gaussian_mean_photon(const GaussianState& state, std::string_view mode);
Complex gaussian_mean_field(const GaussianState& state, std::string_view mode);
double gaussian_quadrature_variance(const GaussianState& state, std::string_view mode, double phase);

// Moments of a Fock-space state in the same convention (used to cross-check
// the two backends).
GaussianState moments_of(const PureState& state);
GaussianState moments_of(const FockDensityOp& state);

}  // namespace fconv
