#include "fconv/devices.hpp"

#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "fconv/detail/overloaded.hpp"
#include "fconv/errors.hpp"

namespace fconv {

using detail::Overloaded;

// ---------------------------------------------------------------- BlockedUnitary

BlockedUnitary::BlockedUnitary(ModeRegistry registry, const SparseOp& generator,
                               const std::vector<ChargeWeights>& charges)
    : registry_(std::move(registry)) {
    const std::size_t d = registry_.dimension();
    const std::size_t m = registry_.size();
    if (static_cast<std::size_t>(generator.rows()) != d ||
        static_cast<std::size_t>(generator.cols()) != d)
        throw DimensionMismatch("generator dimension does not match registry");

    std::vector<ChargeWeights> all = charges;
    for (const auto& w : all)
        if (w.size() != m) throw DimensionMismatch("charge weights must have one entry per mode");
    for (std::size_t k = 0; k < m; ++k) {
        bool touched = false;
        for (const auto& w : charges) touched = touched || w[k] != 0;
        if (!touched) {
            ChargeWeights unit(m, 0);
            unit[k] = 1;
            all.push_back(std::move(unit));
        }
    }

    std::map<std::vector<int>, std::size_t> sector;
    block_of_.resize(d);
    local_index_.resize(d);
    std::vector<int> key(all.size());
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t c = 0; c < all.size(); ++c) {
            int q = 0;
            for (std::size_t k = 0; k < m; ++k) q += all[c][k] * registry_.occupation(i, k);
            key[c] = q;
        }
        auto [it, inserted] = sector.try_emplace(key, blocks_.size());
        if (inserted) blocks_.emplace_back();
        Block& b = blocks_[it->second];
        block_of_[i] = it->second;
        local_index_[i] = static_cast<Eigen::Index>(b.basis.size());
        b.basis.push_back(static_cast<Eigen::Index>(i));
    }

    for (auto& b : blocks_) {
        const auto n = static_cast<Eigen::Index>(b.basis.size());
        b.generator = CMatrix::Zero(n, n);
    }
    for (Eigen::Index r = 0; r < generator.outerSize(); ++r) {
        for (SparseOp::InnerIterator it(generator, r); it; ++it) {
            const auto br = block_of_[static_cast<std::size_t>(r)];
            const auto bc = block_of_[static_cast<std::size_t>(it.col())];
            if (br != bc) {
                if (std::abs(it.value()) == 0.0) continue;
                throw InvalidArgument("generator couples different charge sectors");
            }
            blocks_[br].generator(local_index_[r], local_index_[it.col()]) = it.value();
        }
    }

    for (const auto& b : blocks_)
        if ((b.generator - b.generator.adjoint()).cwiseAbs().maxCoeff() >
            1e-12 * std::max(1.0, b.generator.cwiseAbs().maxCoeff()))
            throw InvalidArgument("generator is not Hermitian");

    cache_.reserve(blocks_.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b) cache_.push_back(std::make_shared<Cache>());
}

const CMatrix& BlockedUnitary::block_unitary(std::size_t b) const {
    Cache& c = *cache_.at(b);
    std::call_once(c.once, [&] {
        const CMatrix& k = blocks_[b].generator;
        if (k.rows() == 1) {
            c.unitary = CMatrix::Constant(1, 1, std::exp(Complex(0.0, -1.0) * k(0, 0).real()));
            return;
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(k);
        const Eigen::VectorXcd phases =
            (Complex(0.0, -1.0) * solver.eigenvalues().cast<Complex>()).array().exp();
        const CMatrix& v = solver.eigenvectors();
        c.unitary = v * phases.asDiagonal() * v.adjoint();
    });
    return c.unitary;
}

CMatrix BlockedUnitary::to_dense() const {
    const auto d = static_cast<Eigen::Index>(dimension());
    CMatrix u = CMatrix::Zero(d, d);
    for (std::size_t b = 0; b < blocks_.size(); ++b)
        u(blocks_[b].basis, blocks_[b].basis) = block_unitary(b);
    return u;
}

PureState BlockedUnitary::apply(const PureState& state) const {
    if (!(state.registry() == registry_))
        throw DimensionMismatch("state registry does not match the unitary");
    const CVector& in = state.amplitudes();
    CVector out = CVector::Zero(in.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const auto& idx = blocks_[b].basis;
        const CVector sub = in(idx);
        if (sub.isZero(0.0)) continue;
        out(idx) = block_unitary(b) * sub;
    }
    return PureState(registry_, std::move(out));
}

FockDensityOp BlockedUnitary::apply(const FockDensityOp& state) const {
    if (!(state.registry() == registry_))
        throw DimensionMismatch("state registry does not match the unitary");
    const CMatrix& rho = state.matrix();
    std::vector<std::size_t> support;
    for (std::size_t b = 0; b < blocks_.size(); ++b)
        if (!rho(blocks_[b].basis, Eigen::all).isZero(0.0)) support.push_back(b);

    CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
    for (std::size_t b1 : support) {
        const CMatrix& u1 = block_unitary(b1);
        for (std::size_t b2 : support) {
            const auto& i1 = blocks_[b1].basis;
            const auto& i2 = blocks_[b2].basis;
            const CMatrix sub = rho(i1, i2);
            if (sub.isZero(0.0)) continue;
            out(i1, i2) = u1 * sub * block_unitary(b2).adjoint();
        }
    }
    return FockDensityOp(registry_, 0.5 * (out + out.adjoint()));
}

// ---------------------------------------------------------------- generators

namespace {

constexpr Complex kI(0.0, 1.0);

SparseOp lower(const ModeRegistry& reg, const std::string& label) {
    return lowering_operator(reg, reg.index_of(label));
}

SparseOp dag(const SparseOp& op) { return SparseOp(op.adjoint()); }

ChargeWeights weights(const ModeRegistry& reg,
                      std::initializer_list<std::pair<std::string, int>> terms) {
    ChargeWeights w(reg.size(), 0);
    for (const auto& [label, weight] : terms) w[reg.index_of(label)] += weight;
    return w;
}

}  // namespace

SparseOp converter_generator(const ModeRegistry& registry, const Converter& device) {
    validate(device, registry);
    const SparseOp ap = lower(registry, device.pump_mode);
    const SparseOp ai = lower(registry, device.idler_mode);
    // U = exp(theta (e^{i phi} a_p^dag a_i - e^{-i phi} a_i^dag a_p))
    const Complex c = kI * device.theta * std::polar(1.0, device.phi_s);
    SparseOp forward = dag(ap) * ai;
    SparseOp k = c * forward + std::conj(c) * dag(forward);
    return k;
}

SparseOp amplifier_generator(const ModeRegistry& registry, const Amplifier& device) {
    validate(device, registry);
    const SparseOp as = lower(registry, device.signal_mode);
    const SparseOp ai = lower(registry, device.idler_mode);
    // U = exp(r (-e^{i phi} a_s^dag a_i^dag + e^{-i phi} a_s a_i))
    const Complex c = -kI * device.squeeze * std::polar(1.0, device.phi_p);
    SparseOp create_pair = dag(as) * dag(ai);
    SparseOp k = c * create_pair + std::conj(c) * dag(create_pair);
    return k;
}

SparseOp trilinear_generator(const ModeRegistry& registry, const TrilinearCoupler& device) {
    validate(device, registry);
    const SparseOp ap = lower(registry, device.pump_mode);
    const SparseOp as = lower(registry, device.signal_mode);
    const SparseOp ai = lower(registry, device.idler_mode);
    // U = exp(eta_tau (e^{i phase} a_p a_s^dag a_i^dag - h.c.))
    const Complex c = kI * device.eta_tau * std::polar(1.0, device.phase);
    SparseOp split = SparseOp(dag(as) * dag(ai)) * ap;
    SparseOp k = c * split + std::conj(c) * dag(split);
    return k;
}

SparseOp phase_shift_generator(const ModeRegistry& registry, const PhaseShift& device) {
    validate(device, registry);
    SparseOp k = -device.phi * number_operator(registry, registry.index_of(device.mode));
    return k;
}

// ---------------------------------------------------------------- blocked unitaries

BlockedUnitary converter_blocks(const ModeRegistry& registry, const Converter& device) {
    return BlockedUnitary(registry, converter_generator(registry, device),
                          {weights(registry, {{device.pump_mode, 1}, {device.idler_mode, 1}})});
}

double squeezed_vacuum_tail(double squeeze, int cutoff) {
    return std::pow(std::tanh(squeeze), 2.0 * (cutoff + 1));
}

int required_squeezed_cutoff(double squeeze, double tolerance) {
    int c = 1;
    while (squeezed_vacuum_tail(squeeze, c) > tolerance) ++c;
    return c;
}

BlockedUnitary amplifier_blocks(const ModeRegistry& registry, const Amplifier& device) {
    validate(device, registry);
    const int cutoff = std::min(registry.cutoff(registry.index_of(device.signal_mode)),
                                registry.cutoff(registry.index_of(device.idler_mode)));
    if (squeezed_vacuum_tail(device.squeeze, cutoff) > kAmplifierTailTolerance)
        throw CutoffTooSmall("amplifier squeeze " + std::to_string(device.squeeze) +
                                 " with cutoff " + std::to_string(cutoff),
                             required_squeezed_cutoff(device.squeeze));
    return BlockedUnitary(registry, amplifier_generator(registry, device),
                          {weights(registry, {{device.signal_mode, 1}, {device.idler_mode, -1}})});
}

BlockedUnitary trilinear_blocks(const ModeRegistry& registry, const TrilinearCoupler& device) {
    return BlockedUnitary(registry, trilinear_generator(registry, device),
                          {weights(registry, {{device.pump_mode, 1}, {device.signal_mode, 1}}),
                           weights(registry, {{device.signal_mode, 1}, {device.idler_mode, -1}})});
}

BlockedUnitary phase_shift_blocks(const ModeRegistry& registry, const PhaseShift& device) {
    return BlockedUnitary(registry, phase_shift_generator(registry, device),
                          {weights(registry, {{device.mode, 1}})});
}

CMatrix converter_unitary(const ModeRegistry& registry, const Converter& device) {
    return converter_blocks(registry, device).to_dense();
}

CMatrix amplifier_unitary(const ModeRegistry& registry, const Amplifier& device) {
    return amplifier_blocks(registry, device).to_dense();
}

CMatrix trilinear_unitary(const ModeRegistry& registry, const TrilinearCoupler& device) {
    return trilinear_blocks(registry, device).to_dense();
}

// ---------------------------------------------------------------- circuits

const char* backend_name(Backend backend) {
    return backend == Backend::fock ? "fock" : "gaussian";
}

bool CompiledCircuit::is_unitary() const noexcept {
    for (const auto& s : steps_) {
        if (std::holds_alternative<Attenuator>(s)) return false;
        if (const auto* d = std::get_if<Device>(&s); d && std::holds_alternative<Attenuator>(*d))
            return false;
    }
    return true;
}

PureState CompiledCircuit::run(const PureState& state) const {
    if (backend_ != Backend::fock) throw InvalidArgument("circuit was compiled for the Gaussian backend");
    if (!is_unitary())
        throw InvalidArgument("circuit contains a loss channel; run it on a density operator");
    PureState out = state;
    for (const auto& s : steps_) out = std::get<BlockedUnitary>(s).apply(out);
    return out;
}

FockDensityOp CompiledCircuit::run(const FockDensityOp& state) const {
    if (backend_ != Backend::fock) throw InvalidArgument("circuit was compiled for the Gaussian backend");
    FockDensityOp out = state;
    for (const auto& s : steps_) {
        if (const auto* u = std::get_if<BlockedUnitary>(&s)) out = u->apply(out);
        else out = apply_loss(out, std::get<Attenuator>(s).mode, std::get<Attenuator>(s).transmission);
    }
    return out;
}

GaussianState CompiledCircuit::run(const GaussianState& state) const {
    if (backend_ != Backend::gaussian) throw InvalidArgument("circuit was compiled for the Fock backend");
    GaussianState out = state;
    for (const auto& s : steps_) out = gaussian_apply(out, std::get<Device>(s));
    return out;
}

CompiledCircuit compile_circuit(const Circuit& circuit, Backend backend) {
    CompiledCircuit out;
    out.backend_ = backend;
    out.registry_ = circuit.registry;
    const ModeRegistry& reg = circuit.registry;
    for (const auto& device : circuit.devices) {
        if (backend == Backend::gaussian) {
            if (std::holds_alternative<TrilinearCoupler>(device))
                throw NonGaussianDevice(
                    "TrilinearCoupler cannot run on the Gaussian backend (non-Gaussian dynamics)");
            validate(device, reg);
            out.steps_.emplace_back(device);
            continue;
        }
        std::visit(Overloaded{
                       [&](const Converter& d) { out.steps_.emplace_back(converter_blocks(reg, d)); },
                       [&](const Amplifier& d) { out.steps_.emplace_back(amplifier_blocks(reg, d)); },
                       [&](const TrilinearCoupler& d) {
                           out.steps_.emplace_back(trilinear_blocks(reg, d));
                       },
                       [&](const PhaseShift& d) { out.steps_.emplace_back(phase_shift_blocks(reg, d)); },
                       [&](const Attenuator& d) {
                           validate(d, reg);
                           out.steps_.emplace_back(d);
                       },
                   },
                   device);
    }
    return out;
}

}  // namespace fconv
