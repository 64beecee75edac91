// devices.hpp: Fock-space unitaries of the optical devices and circuit
// compilation for either backend.
//
// Every unitary is U = exp(-i K) for a Hermitian generator K that commutes with
// a set of integer charges (photon-number combinations). The basis is split
// into the joint eigenspaces of those charges and each block is exponentiated
// on its own, so the cost is the sum of cubes of the block sizes rather than
// the cube of the full dimension.

#pragma once

#include <memory>
#include <mutex>
#include <variant>
#include <vector>

#include "fconv/device.hpp"
#include "fconv/fock.hpp"
#include "fconv/gaussian.hpp"

namespace fconv {

// Charge = sum_k weights[k] * n_k.
using ChargeWeights = std::vector<int>;

class BlockedUnitary {
public:
    struct Block {
        std::vector<Eigen::Index> basis;  // full-space indices, ascending
        CMatrix generator;                // K restricted to the block
    };

    // Groups basis states by the charges (plus one charge per mode that no
    // charge touches) and slices the generator into blocks. Throws
    // InvalidArgument if the generator couples two different sectors.
    BlockedUnitary(ModeRegistry registry, const SparseOp& generator,
                   const std::vector<ChargeWeights>& charges);

    const ModeRegistry& registry() const noexcept { return registry_; }
    std::size_t dimension() const noexcept { return registry_.dimension(); }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }

    // exp(-i K_b); computed once per block on first use (thread-safe).
    const CMatrix& block_unitary(std::size_t b) const;

    CMatrix to_dense() const;

    // Only blocks with support in the input are exponentiated.
    PureState apply(const PureState& state) const;
    FockDensityOp apply(const FockDensityOp& state) const;

private:
    struct Cache {
        std::once_flag once;
        CMatrix unitary;
    };

    ModeRegistry registry_;
    std::vector<Block> blocks_;
    std::vector<std::size_t> block_of_;
    std::vector<Eigen::Index> local_index_;
    std::vector<std::shared_ptr<Cache>> cache_;
};

// Hermitian generators K with U = exp(-i K).
SparseOp converter_generator(const ModeRegistry& registry, const Converter& device);
SparseOp amplifier_generator(const ModeRegistry& registry, const Amplifier& device);
SparseOp trilinear_generator(const ModeRegistry& registry, const TrilinearCoupler& device);
SparseOp phase_shift_generator(const ModeRegistry& registry, const PhaseShift& device);

// Conserves n_p + n_i.
BlockedUnitary converter_blocks(const ModeRegistry& registry, const Converter& device);
// Conserves n_s - n_i. CutoffTooSmall when the two-mode squeezed vacuum tail
// tanh(r)^{2(c+1)} at the smaller cutoff exceeds kAmplifierTailTolerance.
BlockedUnitary amplifier_blocks(const ModeRegistry& registry, const Amplifier& device);
// Conserves n_p + n_s and n_s - n_i.
BlockedUnitary trilinear_blocks(const ModeRegistry& registry, const TrilinearCoupler& device);
BlockedUnitary phase_shift_blocks(const ModeRegistry& registry, const PhaseShift& device);

inline constexpr double kAmplifierTailTolerance = 1e-8;
double squeezed_vacuum_tail(double squeeze, int cutoff);
int required_squeezed_cutoff(double squeeze, double tolerance = kAmplifierTailTolerance);

// Dense forms of the above.
CMatrix converter_unitary(const ModeRegistry& registry, const Converter& device);
CMatrix amplifier_unitary(const ModeRegistry& registry, const Amplifier& device);
CMatrix trilinear_unitary(const ModeRegistry& registry, const TrilinearCoupler& device);

enum class Backend { fock, gaussian };

const char* backend_name(Backend backend);

class CompiledCircuit {
public:
    Backend backend() const noexcept { return backend_; }
    const ModeRegistry& registry() const noexcept { return registry_; }
    std::size_t size() const noexcept { return steps_.size(); }
    // True when every step is unitary, i.e. pure states stay pure.
    bool is_unitary() const noexcept;

    // Fock backend. run(PureState) requires is_unitary().
    PureState run(const PureState& state) const;
    FockDensityOp run(const FockDensityOp& state) const;
    // Gaussian backend.
    GaussianState run(const GaussianState& state) const;

private:
    friend CompiledCircuit compile_circuit(const Circuit& circuit, Backend backend);

    using Step = std::variant<BlockedUnitary, Attenuator, Device>;

    Backend backend_ = Backend::fock;
    ModeRegistry registry_;
    std::vector<Step> steps_;
};

// Left-to-right composition. NonGaussianDevice if the Gaussian backend is
// asked for a trilinear coupler.
CompiledCircuit compile_circuit(const Circuit& circuit, Backend backend);

}  // namespace fconv
