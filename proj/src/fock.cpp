#include "fconv/fock.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "fconv/errors.hpp"

namespace fconv {

namespace {

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

void require_same_registry(const ModeRegistry& a, const ModeRegistry& b, const char* what) {
    if (!(a == b)) throw DimensionMismatch(std::string(what) + ": states live on different registries");
}

}  // namespace

// ---------------------------------------------------------------- PureState

PureState::PureState(ModeRegistry registry, CVector amplitudes)
    : registry_(std::move(registry)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != registry_.dimension())
        throw DimensionMismatch("amplitude vector has size " + std::to_string(amplitudes_.size()) +
                                ", registry dimension is " +
                                std::to_string(registry_.dimension()));
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kNormTolerance)
        throw InvalidArgument("state is not normalized (norm " + std::to_string(norm) + ")");
}

Complex PureState::amplitude(const std::vector<int>& occupations) const {
    return amplitudes_(static_cast<Eigen::Index>(registry_.basis_index(occupations)));
}

// ---------------------------------------------------------------- FockDensityOp

FockDensityOp::FockDensityOp(ModeRegistry registry, CMatrix matrix)
    : registry_(std::move(registry)), matrix_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(registry_.dimension());
    if (matrix_.rows() != d || matrix_.cols() != d)
        throw DimensionMismatch("density matrix is " + std::to_string(matrix_.rows()) + "x" +
                                std::to_string(matrix_.cols()) + ", registry dimension is " +
                                std::to_string(d));
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTolerance)
        throw InvalidArgument("density matrix is not Hermitian");
    const Complex tr = matrix_.trace();
    if (std::abs(tr - 1.0) > kNormTolerance)
        throw InvalidArgument("density matrix trace is " + std::to_string(tr.real()));
}

double FockDensityOp::purity() const {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return matrix_.squaredNorm();
}

double FockDensityOp::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------- states

PureState make_vacuum(const ModeRegistry& registry) {
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(registry.dimension()));
    amps(0) = 1.0;
    return PureState(registry, std::move(amps));
}

PureState make_fock(const ModeRegistry& registry, const std::vector<int>& occupations) {
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(registry.dimension()));
    amps(static_cast<Eigen::Index>(registry.basis_index(occupations))) = 1.0;
    return PureState(registry, std::move(amps));
}

double poisson_tail(double mean, int cutoff) {
    if (mean <= 0.0) return 0.0;
    const double log_mean = std::log(mean);
    double tail = 0.0;
    for (int n = cutoff + 1;; ++n) {
        const double term = std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
        tail += term;
        if (n > mean && term < 1e-18 * std::max(tail, 1e-300)) break;
        if (n > mean && term == 0.0) break;
    }
    return tail;
}

int required_coherent_cutoff(double mean_photons, double tolerance) {
    int c = 1;
    while (poisson_tail(mean_photons, c) > tolerance) ++c;
    return c;
}

PureState make_coherent(const ModeRegistry& registry, std::string_view mode, Complex alpha) {
    const auto k = registry.index_of(mode);
    const int cutoff = registry.cutoff(k);
    const double mean = std::norm(alpha);
    if (poisson_tail(mean, cutoff) > kCoherentTailTolerance)
        throw CutoffTooSmall("coherent amplitude |alpha|^2=" + std::to_string(mean) +
                                 " on mode '" + std::string(mode) + "' with cutoff " +
                                 std::to_string(cutoff),
                             required_coherent_cutoff(mean));

    CVector amps = CVector::Zero(static_cast<Eigen::Index>(registry.dimension()));
    Complex amp = std::exp(-0.5 * mean);
    const auto stride = static_cast<Eigen::Index>(registry.stride(k));
    for (int n = 0; n <= cutoff; ++n) {
        if (n > 0) amp *= alpha / std::sqrt(static_cast<double>(n));
        amps(n * stride) = amp;
    }
    amps.normalize();
    return PureState(registry, std::move(amps));
}

PureState tensor(const PureState& a, const PureState& b) {
    std::vector<Mode> modes = a.registry().modes();
    modes.insert(modes.end(), b.registry().modes().begin(), b.registry().modes().end());
    ModeRegistry reg(std::move(modes));
    const auto db = b.amplitudes().size();
    CVector amps(a.amplitudes().size() * db);
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
        amps.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
    return PureState(std::move(reg), std::move(amps));
}

FockDensityOp to_density(const PureState& state) {
    const CVector& v = state.amplitudes();
    return FockDensityOp(state.registry(), hermitian_part(v * v.adjoint()));
}

// ---------------------------------------------------------------- channels

namespace {

void check_unitary(const ModeRegistry& registry, const CMatrix& u) {
    const auto d = static_cast<Eigen::Index>(registry.dimension());
    if (u.rows() != d || u.cols() != d)
        throw DimensionMismatch("unitary is " + std::to_string(u.rows()) + "x" +
                                std::to_string(u.cols()) + ", registry dimension is " +
                                std::to_string(d));
    const double dev = (u.adjoint() * u - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > kUnitarityTolerance)
        throw NotUnitary("||U^dag U - I||_max = " + std::to_string(dev));
}

}  // namespace

PureState apply_unitary(const PureState& state, const CMatrix& unitary) {
    check_unitary(state.registry(), unitary);
    CVector out = unitary * state.amplitudes();
    return PureState(state.registry(), std::move(out));
}

FockDensityOp apply_unitary(const FockDensityOp& state, const CMatrix& unitary) {
    check_unitary(state.registry(), unitary);
    return FockDensityOp(state.registry(),
                         hermitian_part(unitary * state.matrix() * unitary.adjoint()));
}

FockDensityOp apply_loss(const FockDensityOp& state, std::string_view mode, double transmission) {
    if (!(transmission >= 0.0 && transmission <= 1.0))
        throw TransmissionOutOfRange("transmission " + std::to_string(transmission) +
                                     " outside [0, 1]");
    const auto& reg = state.registry();
    const auto k = reg.index_of(mode);
    const int cutoff = reg.cutoff(k);
    const auto stride = static_cast<Eigen::Index>(reg.stride(k));

    // coef[n][j] = <n-j| K_j |n> = sqrt(C(n,j) T^{n-j} (1-T)^j)
    std::vector<std::vector<double>> coef(cutoff + 1);
    std::vector<double> binom(1, 1.0);
    for (int n = 0; n <= cutoff; ++n) {
        if (n > 0) {
            std::vector<double> next(n + 1, 1.0);
            for (int j = 1; j < n; ++j) next[j] = binom[j - 1] + binom[j];
            binom = std::move(next);
        }
        coef[n].resize(n + 1);
        for (int j = 0; j <= n; ++j)
            coef[n][j] = std::sqrt(binom[j] * std::pow(transmission, n - j) *
                                   std::pow(1.0 - transmission, j));
    }

    const auto d = static_cast<Eigen::Index>(reg.dimension());
    std::vector<int> occ(d);
    for (Eigen::Index i = 0; i < d; ++i) occ[i] = reg.occupation(static_cast<std::size_t>(i), k);

    const CMatrix& rho = state.matrix();
    CMatrix out = CMatrix::Zero(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        const int n = occ[c];
        for (Eigen::Index r = 0; r < d; ++r) {
            const Complex v = rho(r, c);
            if (v == Complex(0.0)) continue;
            const int m = occ[r];
            const int jmax = std::min(m, n);
            for (int j = 0; j <= jmax; ++j)
                out(r - j * stride, c - j * stride) += coef[m][j] * coef[n][j] * v;
        }
    }
    return FockDensityOp(reg, hermitian_part(out));
}

namespace {

// Splits every full basis index into (kept index, traced index).
struct TraceSplit {
    ModeRegistry kept;
    std::vector<Eigen::Index> kept_index;
    std::vector<Eigen::Index> traced_index;
    Eigen::Index traced_dim = 1;
};

TraceSplit split_for_trace(const ModeRegistry& reg, const std::vector<std::string>& keep) {
    if (keep.empty()) throw InvalidArgument("partial_trace: keep list is empty");
    TraceSplit s{reg.subset(keep), {}, {}, 1};
    std::vector<bool> is_kept(reg.size(), false);
    for (const auto& l : keep) is_kept[reg.index_of(l)] = true;

    std::vector<std::size_t> traced_stride(reg.size(), 0);
    std::size_t tdim = 1;
    for (std::size_t m = reg.size(); m-- > 0;) {
        if (is_kept[m]) continue;
        traced_stride[m] = tdim;
        tdim *= static_cast<std::size_t>(reg.cutoff(m) + 1);
    }
    s.traced_dim = static_cast<Eigen::Index>(tdim);

    std::vector<std::size_t> kept_stride(reg.size(), 0);
    for (std::size_t m = 0, j = 0; m < reg.size(); ++m)
        if (is_kept[m]) kept_stride[m] = s.kept.stride(j++);

    const std::size_t d = reg.dimension();
    s.kept_index.resize(d);
    s.traced_index.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t ki = 0, ti = 0;
        for (std::size_t m = 0; m < reg.size(); ++m) {
            const auto n = static_cast<std::size_t>(reg.occupation(i, m));
            if (is_kept[m]) ki += n * kept_stride[m];
            else ti += n * traced_stride[m];
        }
        s.kept_index[i] = static_cast<Eigen::Index>(ki);
        s.traced_index[i] = static_cast<Eigen::Index>(ti);
    }
    return s;
}

}  // namespace

FockDensityOp partial_trace(const FockDensityOp& state, const std::vector<std::string>& keep) {
    const TraceSplit s = split_for_trace(state.registry(), keep);
    const auto dk = static_cast<Eigen::Index>(s.kept.dimension());

    std::vector<std::vector<Eigen::Index>> groups(s.traced_dim);
    for (std::size_t i = 0; i < s.traced_index.size(); ++i)
        groups[s.traced_index[i]].push_back(static_cast<Eigen::Index>(i));

    CMatrix out = CMatrix::Zero(dk, dk);
    const CMatrix& rho = state.matrix();
    for (const auto& g : groups)
        for (Eigen::Index c : g)
            for (Eigen::Index r : g) out(s.kept_index[r], s.kept_index[c]) += rho(r, c);
    return FockDensityOp(s.kept, hermitian_part(out));
}

FockDensityOp partial_trace(const PureState& state, const std::vector<std::string>& keep) {
    const TraceSplit s = split_for_trace(state.registry(), keep);
    const auto dk = static_cast<Eigen::Index>(s.kept.dimension());
    // psi reshaped as (kept x traced); rho = M M^dag
    CMatrix m = CMatrix::Zero(dk, s.traced_dim);
    const CVector& psi = state.amplitudes();
    for (Eigen::Index i = 0; i < psi.size(); ++i) m(s.kept_index[i], s.traced_index[i]) = psi(i);
    return FockDensityOp(s.kept, hermitian_part(m * m.adjoint()));
}

// ---------------------------------------------------------------- observables

SparseOp lowering_operator(const ModeRegistry& registry, std::size_t mode) {
    const auto d = static_cast<Eigen::Index>(registry.dimension());
    const auto stride = static_cast<Eigen::Index>(registry.stride(mode));
    std::vector<Eigen::Triplet<Complex>> entries;
    entries.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
        const int n = registry.occupation(static_cast<std::size_t>(i), mode);
        if (n > 0) entries.emplace_back(i - stride, i, std::sqrt(static_cast<double>(n)));
    }
    SparseOp a(d, d);
    a.setFromTriplets(entries.begin(), entries.end());
    return a;
}

SparseOp number_operator(const ModeRegistry& registry, std::size_t mode) {
    const auto d = static_cast<Eigen::Index>(registry.dimension());
    std::vector<Eigen::Triplet<Complex>> entries;
    for (Eigen::Index i = 0; i < d; ++i) {
        const int n = registry.occupation(static_cast<std::size_t>(i), mode);
        if (n > 0) entries.emplace_back(i, i, static_cast<double>(n));
    }
    SparseOp op(d, d);
    op.setFromTriplets(entries.begin(), entries.end());
    return op;
}

Complex expect(const PureState& state, const SparseOp& op) {
    const CVector& v = state.amplitudes();
    if (op.rows() != v.size() || op.cols() != v.size())
        throw DimensionMismatch("operator dimension does not match state");
    return v.dot(op * v);
}

Complex expect(const FockDensityOp& state, const SparseOp& op) {
    const CMatrix& rho = state.matrix();
    if (op.rows() != rho.rows() || op.cols() != rho.cols())
        throw DimensionMismatch("operator dimension does not match state");
    Complex sum = 0.0;
    for (Eigen::Index r = 0; r < op.outerSize(); ++r)
        for (SparseOp::InnerIterator it(op, r); it; ++it) sum += it.value() * rho(it.col(), r);
    return sum;
}

double fidelity(const PureState& a, const PureState& b) {
    require_same_registry(a.registry(), b.registry(), "fidelity");
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double fidelity(const PureState& a, const FockDensityOp& b) {
    require_same_registry(a.registry(), b.registry(), "fidelity");
    const CVector& v = a.amplitudes();
    return v.dot(b.matrix() * v).real();
}

}  // namespace fconv
