#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fconv/devices.hpp"
#include "fconv/errors.hpp"
#include "fconv/gaussian.hpp"

using namespace fconv;

namespace {

constexpr double kPi = std::numbers::pi;

ModeRegistry pair_registry(int cutoff = 1) {
    return ModeRegistry({{"p", 2.0, cutoff}, {"i", 1.0, cutoff}});
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(GaussianState, VacuumMoments) {
    const GaussianState v = gaussian_vacuum(pair_registry());
    EXPECT_EQ(v.means().norm(), 0.0);
    EXPECT_EQ(max_abs(v.covariance() - 0.25 * Eigen::MatrixXd::Identity(4, 4)), 0.0);
    EXPECT_EQ(gaussian_mean_photon(v, "p"), 0.0);
    EXPECT_NEAR(v.uncertainty_margin(), 0.0, 1e-12);
}

TEST(GaussianState, RejectsMalformedMoments) {
    EXPECT_THROW(GaussianState(pair_registry(), Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Identity(4, 4)),
                 DimensionMismatch);
    Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(4, 4);
    asym(0, 1) = 0.1;
    EXPECT_THROW(GaussianState(pair_registry(), Eigen::VectorXd::Zero(4), asym), InvalidArgument);
}

TEST(GaussianState, CoherentCalibrationAgreesWithFock) {
    // pinned calibration: coherent alpha = 1 reads one photon in both backends
    const ModeRegistry reg = pair_registry(20);
    const GaussianState g = gaussian_coherent(reg, "p", 1.0);
    EXPECT_NEAR(gaussian_mean_photon(g, "p"), 1.0, 1e-15);
    EXPECT_NEAR(mean_photon(make_coherent(reg, "p", 1.0), "p"), 1.0, 1e-10);

    const Complex alpha(0.6, -1.3);
    const GaussianState g2 = gaussian_coherent(reg, "i", alpha);
    EXPECT_NEAR(gaussian_mean_photon(g2, "i"), std::norm(alpha), 1e-14);
    EXPECT_NEAR(std::abs(gaussian_mean_field(g2, "i") - alpha), 0.0, 1e-15);
    const GaussianState from_fock = moments_of(make_coherent(reg, "i", alpha));
    EXPECT_LE((from_fock.means() - g2.means()).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LE(max_abs(from_fock.covariance() - g2.covariance()), 1e-9);
}

TEST(GaussianApply, ConverterZeroIsIdentity) {
    const GaussianState in = gaussian_coherent(pair_registry(), "p", Complex(0.3, 0.9));
    const GaussianState out = gaussian_apply(in, Converter{"p", "i", 0.0, 1.1});
    EXPECT_EQ(out.means(), in.means());
    EXPECT_EQ(out.covariance(), in.covariance());
}

TEST(GaussianApply, ConverterQuarterTurnSwapsPumpIntoIdler) {
    const Complex alpha(1.1, -0.4);
    const GaussianState out =
        gaussian_apply(gaussian_coherent(pair_registry(), "p", alpha), Converter{"p", "i", kPi / 2, 0.0});
    // a_i -> -e^{-i phi_s} a_p
    EXPECT_NEAR(std::abs(gaussian_mean_field(out, "i") + alpha), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(gaussian_mean_field(out, "p")), 0.0, 1e-15);
    EXPECT_LE(max_abs(out.covariance() - 0.25 * Eigen::MatrixXd::Identity(4, 4)), 1e-15);

    const GaussianState phased = gaussian_apply(gaussian_coherent(pair_registry(), "p", alpha),
                                                Converter{"p", "i", kPi / 2, 0.9});
    EXPECT_NEAR(std::abs(gaussian_mean_field(phased, "i") + std::polar(1.0, -0.9) * alpha), 0.0, 1e-15);
}

TEST(GaussianApply, AmplifierIdlerNoiseMatchesFock) {
    for (double r : {0.3, 0.8}) {
        const int cutoff = required_squeezed_cutoff(r, 1e-16);
        const ModeRegistry reg({{"s", 1.0, cutoff}, {"i", 1.0, cutoff}});
        const Amplifier amp{"s", "i", r, 0.4};
        const GaussianState g = gaussian_apply(gaussian_vacuum(reg), amp);
        const PureState f = amplifier_blocks(reg, amp).apply(make_vacuum(reg));
        const double g2 = std::sinh(r) * std::sinh(r);
        for (double phi : {0.0, kPi / 2, 1.0}) {
            EXPECT_NEAR(gaussian_quadrature_variance(g, "i", phi), (2 * g2 + 1) / 4, 1e-12);
            EXPECT_NEAR(gaussian_quadrature_variance(g, "i", phi), quadrature_variance(f, "i", phi), 1e-8);
        }
        EXPECT_NEAR(gaussian_mean_photon(g, "i"), g2, 1e-12);
        EXPECT_NEAR(gaussian_mean_photon(g, "i"), mean_photon(f, "i"), 1e-8);
    }
}

TEST(GaussianApply, AttenuatorIsLossMap) {
    const ModeRegistry reg = pair_registry();
    GaussianState sq = gaussian_apply(gaussian_coherent(reg, "p", 1.0), Amplifier{"p", "i", 0.4, 0.0});
    const GaussianState out = gaussian_apply(sq, Attenuator{"p", 0.3});
    EXPECT_NEAR(out.means()(0), std::sqrt(0.3) * sq.means()(0), 1e-15);
    EXPECT_NEAR(out.covariance()(0, 0), 0.3 * sq.covariance()(0, 0) + 0.7 * 0.25, 1e-15);
    EXPECT_NEAR(out.covariance()(0, 2), std::sqrt(0.3) * sq.covariance()(0, 2), 1e-15);
    EXPECT_NEAR(out.covariance()(2, 2), sq.covariance()(2, 2), 1e-15);
    EXPECT_GE(out.uncertainty_margin(), -1e-9);
    EXPECT_THROW(gaussian_apply(sq, Attenuator{"p", 1.2}), TransmissionOutOfRange);
}

TEST(GaussianApply, RejectsTrilinear) {
    const ModeRegistry reg({{"p", 2.0, 1}, {"s", 1.0, 1}, {"i", 1.0, 1}});
    EXPECT_THROW(gaussian_apply(gaussian_vacuum(reg), TrilinearCoupler{"p", "s", "i", 0.1, 0.0}),
                 NonGaussianDevice);
}

TEST(Symplectic, UnitaryDevicesPreserveOmega) {
    const ModeRegistry reg({{"a", 1.0, 1}, {"b", 1.0, 1}, {"c", 1.0, 1}});
    const Eigen::MatrixXd omega = symplectic_form(3);
    const std::vector<Device> devices = {
        Converter{"a", "c", 0.7, 1.9}, Amplifier{"b", "c", 0.6, -0.8}, PhaseShift{"b", 2.2},
        Converter{"b", "a", kPi / 2, 0.0}, Amplifier{"a", "b", 1.3, 0.0}};
    for (const auto& d : devices) {
        const Eigen::MatrixXd s = symplectic_matrix(reg, d);
        EXPECT_LE(max_abs(s * omega * s.transpose() - omega), 1e-10) << device_name(d);
    }
}

TEST(Symplectic, ConverterIsPassiveAmplifierIsNot) {
    const ModeRegistry reg = pair_registry();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
    const Eigen::MatrixXd conv = symplectic_matrix(reg, Converter{"p", "i", 0.9, 0.3});
    EXPECT_LE(max_abs(conv * conv.transpose() - id), 1e-12);
    const Eigen::MatrixXd amp = symplectic_matrix(reg, Amplifier{"p", "i", 0.5, 0.3});
    EXPECT_GT(max_abs(amp * amp.transpose() - id), 0.1);
    EXPECT_THROW(symplectic_matrix(reg, Attenuator{"p", 0.5}), InvalidArgument);
}

TEST(CrossBackend, TwoModeSqueezedVacuum) {
    const double r = 0.7;
    const int cutoff = required_squeezed_cutoff(r, 1e-16);
    const ModeRegistry reg({{"s", 1.0, cutoff}, {"i", 1.0, cutoff}});
    const Amplifier amp{"s", "i", r, 0.0};
    const GaussianState from_fock = moments_of(amplifier_blocks(reg, amp).apply(make_vacuum(reg)));
    const GaussianState g = gaussian_apply(gaussian_vacuum(reg), amp);
    EXPECT_LE(max_abs(from_fock.covariance() - g.covariance()), 1e-8);
    EXPECT_NEAR(gaussian_mean_photon(g, "i"), std::sinh(r) * std::sinh(r), 1e-12);
    EXPECT_NEAR(gaussian_mean_photon(from_fock, "i"), std::sinh(r) * std::sinh(r), 1e-8);
}

TEST(CrossBackend, MixedCircuitWithLoss) {
    const int cutoff = 25;
    const ModeRegistry reg({{"p", 2.0, cutoff}, {"i", 1.0, cutoff}});
    const Circuit c(reg, {Converter{"p", "i", 0.6, 0.4}, Amplifier{"p", "i", 0.15, 1.0}, Attenuator{"i", 0.7},
                          PhaseShift{"p", 0.8}, Converter{"p", "i", 1.1, -0.3}});
    const Complex alpha(0.9, -0.6);
    const FockDensityOp f = compile_circuit(c, Backend::fock).run(to_density(make_coherent(reg, "p", alpha)));
    const GaussianState g = compile_circuit(c, Backend::gaussian).run(gaussian_coherent(reg, "p", alpha));
    const GaussianState m = moments_of(f);
    EXPECT_LE((m.means() - g.means()).cwiseAbs().maxCoeff(), 1e-7);
    EXPECT_LE(max_abs(m.covariance() - g.covariance()), 1e-7);
    EXPECT_GE(g.uncertainty_margin(), -1e-9);
    EXPECT_GE(m.uncertainty_margin(), -1e-9);
}
