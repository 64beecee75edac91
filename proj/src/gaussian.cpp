#include "fconv/gaussian.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "fconv/detail/overloaded.hpp"
#include "fconv/errors.hpp"

namespace fconv {

using detail::Overloaded;

GaussianState::GaussianState(ModeRegistry registry, Eigen::VectorXd means,
                             Eigen::MatrixXd covariance)
    : registry_(std::move(registry)), means_(std::move(means)), covariance_(std::move(covariance)) {
    const auto n = static_cast<Eigen::Index>(2 * registry_.size());
    if (means_.size() != n || covariance_.rows() != n || covariance_.cols() != n)
        throw DimensionMismatch("Gaussian moments must have size 2M = " + std::to_string(n));
    if (n > 0 && (covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidArgument("covariance matrix is not symmetric");
}

double GaussianState::uncertainty_margin() const {
    const CMatrix m = covariance_.cast<Complex>() +
                      Complex(0.0, 0.25) * symplectic_form(registry_.size()).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Eigen::MatrixXd symplectic_form(std::size_t modes) {
    const auto n = static_cast<Eigen::Index>(2 * modes);
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; k += 2) {
        omega(k, k + 1) = 1.0;
        omega(k + 1, k) = -1.0;
    }
    return omega;
}

GaussianState gaussian_vacuum(const ModeRegistry& registry) {
    const auto n = static_cast<Eigen::Index>(2 * registry.size());
    return GaussianState(registry, Eigen::VectorXd::Zero(n),
                         kVacuumQuadratureVariance * Eigen::MatrixXd::Identity(n, n));
}

GaussianState gaussian_coherent(const ModeRegistry& registry, std::string_view mode, Complex alpha) {
    const auto k = static_cast<Eigen::Index>(registry.index_of(mode));
    GaussianState vac = gaussian_vacuum(registry);
    Eigen::VectorXd means = vac.means();
    means(2 * k) = kMeanPerCoherentAmplitude * alpha.real();
    means(2 * k + 1) = kMeanPerCoherentAmplitude * alpha.imag();
    return GaussianState(registry, std::move(means), vac.covariance());
}

Eigen::MatrixXd symplectic_matrix(const ModeRegistry& registry, const Device& device) {
    validate(device, registry);
    const auto n = static_cast<Eigen::Index>(2 * registry.size());
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n);
    auto idx = [&](const std::string& label) {
        return static_cast<Eigen::Index>(2 * registry.index_of(label));
    };

    std::visit(
        Overloaded{
            [&](const Converter& d) {
                const auto p = idx(d.pump_mode), i = idx(d.idler_mode);
                const double c = std::cos(d.theta), sn = std::sin(d.theta);
                const double cf = std::cos(d.phi_s), sf = std::sin(d.phi_s);
                s(p, p) = c;
                s(p, i) = sn * cf;
                s(p, i + 1) = -sn * sf;
                s(p + 1, p + 1) = c;
                s(p + 1, i) = sn * sf;
                s(p + 1, i + 1) = sn * cf;
                s(i, i) = c;
                s(i, p) = -sn * cf;
                s(i, p + 1) = -sn * sf;
                s(i + 1, i + 1) = c;
                s(i + 1, p) = sn * sf;
                s(i + 1, p + 1) = -sn * cf;
            },
            [&](const Amplifier& d) {
                const auto a = idx(d.signal_mode), b = idx(d.idler_mode);
                const double gain = std::cosh(d.squeeze), gm = std::sinh(d.squeeze);
                // g = -e^{i phi_p} sinh(r) = |g| e^{i psi}
                const double psi = d.phi_p + M_PI;
                const double gc = gm * std::cos(psi), gs = gm * std::sin(psi);
                for (auto [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
                    s(u, u) = gain;
                    s(u + 1, u + 1) = gain;
                    s(u, v) = gc;
                    s(u, v + 1) = gs;
                    s(u + 1, v) = gs;
                    s(u + 1, v + 1) = -gc;
                }
            },
            [&](const TrilinearCoupler&) {
                throw NonGaussianDevice(
                    "TrilinearCoupler has no Gaussian representation; use the Fock backend");
            },
            [&](const PhaseShift& d) {
                const auto k = idx(d.mode);
                const double c = std::cos(d.phi), sn = std::sin(d.phi);
                s(k, k) = c;
                s(k, k + 1) = -sn;
                s(k + 1, k) = sn;
                s(k + 1, k + 1) = c;
            },
            [&](const Attenuator&) {
                throw InvalidArgument("Attenuator is a channel, not a symplectic map");
            },
        },
        device);
    return s;
}

GaussianState gaussian_apply(const GaussianState& state, const Device& device) {
    const ModeRegistry& reg = state.registry();
    if (const auto* att = std::get_if<Attenuator>(&device)) {
        validate(device, reg);
        const auto k = static_cast<Eigen::Index>(2 * reg.index_of(att->mode));
        const double t = att->transmission;
        const double st = std::sqrt(t);
        Eigen::VectorXd means = state.means();
        Eigen::MatrixXd cov = state.covariance();
        means.segment(k, 2) *= st;
        cov.middleRows(k, 2) *= st;
        cov.middleCols(k, 2) *= st;
        cov(k, k) += (1.0 - t) * kVacuumQuadratureVariance;
        cov(k + 1, k + 1) += (1.0 - t) * kVacuumQuadratureVariance;
        return GaussianState(reg, std::move(means), std::move(cov));
    }
    const Eigen::MatrixXd s = symplectic_matrix(reg, device);
    Eigen::MatrixXd cov = s * state.covariance() * s.transpose();
    cov = 0.5 * (cov + cov.transpose()).eval();
    return GaussianState(reg, s * state.means(), std::move(cov));
}

double gaussian_mean_photon(const GaussianState& state, std::string_view mode) {
    const auto k = static_cast<Eigen::Index>(2 * state.registry().index_of(mode));
    const auto& m = state.means();
    const auto& c = state.covariance();
    // n = x^2 + p^2 - 1/2 in this convention
    const double second = c(k, k) + c(k + 1, k + 1) + m(k) * m(k) + m(k + 1) * m(k + 1);
    return second / (kMeanPerCoherentAmplitude * kMeanPerCoherentAmplitude) -
           2.0 * kVacuumQuadratureVariance;
}

Complex gaussian_mean_field(const GaussianState& state, std::string_view mode) {
    const auto k = static_cast<Eigen::Index>(2 * state.registry().index_of(mode));
    return Complex(state.means()(k), state.means()(k + 1)) / kMeanPerCoherentAmplitude;
}

double gaussian_quadrature_variance(const GaussianState& state, std::string_view mode,
                                    double phase) {
    const auto k = static_cast<Eigen::Index>(2 * state.registry().index_of(mode));
    const Eigen::Vector2d v(std::cos(phase), std::sin(phase));
    return v.dot(state.covariance().block<2, 2>(k, k) * v);
}

namespace {

template <FockState S>
GaussianState fock_moments(const S& state) {
    const ModeRegistry& reg = state.registry();
    const std::size_t m = reg.size();
    std::vector<SparseOp> lower(m), raise(m);
    for (std::size_t k = 0; k < m; ++k) {
        lower[k] = lowering_operator(reg, k);
        raise[k] = SparseOp(lower[k].adjoint());
    }

    const auto n = static_cast<Eigen::Index>(2 * m);
    Eigen::VectorXd means(n);
    for (std::size_t k = 0; k < m; ++k) {
        const Complex a = expect(state, lower[k]);
        means(2 * k) = a.real();
        means(2 * k + 1) = a.imag();
    }

    Eigen::MatrixXd second(n, n);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            const Complex dag_lower = expect(state, SparseOp(raise[j] * lower[k]));  // <a_j^dag a_k>
            const Complex lower_lower = expect(state, SparseOp(lower[j] * lower[k]));  // <a_j a_k>
            const double delta = j == k ? kVacuumQuadratureVariance : 0.0;
            const auto x = static_cast<Eigen::Index>(2 * j), y = static_cast<Eigen::Index>(2 * k);
            second(x, y) = 0.5 * (lower_lower + dag_lower).real() + delta;
            second(x + 1, y + 1) = 0.5 * (dag_lower - lower_lower).real() + delta;
            second(x, y + 1) = 0.5 * (lower_lower + dag_lower).imag();
            second(y + 1, x) = second(x, y + 1);
        }
    }
    Eigen::MatrixXd cov = second - means * means.transpose();
    cov = 0.5 * (cov + cov.transpose()).eval();
    return GaussianState(reg, kMeanPerCoherentAmplitude * means,
                         kMeanPerCoherentAmplitude * kMeanPerCoherentAmplitude * cov);
}

}  // namespace

GaussianState moments_of(const PureState& state) { return fock_moments(state); }
GaussianState moments_of(const FockDensityOp& state) { return fock_moments(state); }

}  // namespace fconv
