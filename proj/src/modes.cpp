#include "fconv/modes.hpp"

#include <algorithm>
#include <set>

#include "fconv/errors.hpp"

namespace fconv {

ModeRegistry::ModeRegistry(std::vector<Mode> modes) : modes_(std::move(modes)) {
    std::set<std::string> seen;
    for (const auto& m : modes_) {
        if (!seen.insert(m.label).second)
            throw InvalidArgument("duplicate mode label '" + m.label + "'");
        if (m.cutoff < 1)
            throw InvalidArgument("mode '" + m.label + "' has cutoff < 1");
        if (!(m.frequency > 0.0))
            throw InvalidArgument("mode '" + m.label + "' has non-positive frequency");
    }
    strides_.assign(modes_.size(), 1);
    dimension_ = 1;
    for (std::size_t k = modes_.size(); k-- > 0;) {
        strides_[k] = dimension_;
        dimension_ *= static_cast<std::size_t>(modes_[k].cutoff + 1);
    }
}

std::size_t ModeRegistry::index_of(std::string_view label) const {
    for (std::size_t k = 0; k < modes_.size(); ++k)
        if (modes_[k].label == label) return k;
    throw UnknownMode(std::string(label));
}

bool ModeRegistry::contains(std::string_view label) const noexcept {
    return std::any_of(modes_.begin(), modes_.end(),
                       [&](const Mode& m) { return m.label == label; });
}

std::vector<int> ModeRegistry::occupations(std::size_t basis_index) const {
    std::vector<int> occ(modes_.size());
    for (std::size_t k = 0; k < modes_.size(); ++k) occ[k] = occupation(basis_index, k);
    return occ;
}

std::size_t ModeRegistry::basis_index(const std::vector<int>& occupations) const {
    if (occupations.size() != modes_.size())
        throw DimensionMismatch("expected " + std::to_string(modes_.size()) +
                                " occupations, got " + std::to_string(occupations.size()));
    std::size_t idx = 0;
    for (std::size_t k = 0; k < modes_.size(); ++k) {
        if (occupations[k] < 0 || occupations[k] > modes_[k].cutoff)
            throw OccupationExceedsCutoff("occupation " + std::to_string(occupations[k]) +
                                          " outside [0, " + std::to_string(modes_[k].cutoff) +
                                          "] for mode '" + modes_[k].label + "'");
        idx += static_cast<std::size_t>(occupations[k]) * strides_[k];
    }
    return idx;
}

bool ModeRegistry::operator==(const ModeRegistry& other) const noexcept {
    if (modes_.size() != other.modes_.size()) return false;
    for (std::size_t k = 0; k < modes_.size(); ++k) {
        const auto& a = modes_[k];
        const auto& b = other.modes_[k];
        if (a.label != b.label || a.cutoff != b.cutoff || a.frequency != b.frequency) return false;
    }
    return true;
}

ModeRegistry ModeRegistry::subset(const std::vector<std::string>& labels) const {
    std::vector<bool> keep(modes_.size(), false);
    for (const auto& l : labels) keep[index_of(l)] = true;
    std::vector<Mode> kept;
    for (std::size_t k = 0; k < modes_.size(); ++k)
        if (keep[k]) kept.push_back(modes_[k]);
    return ModeRegistry(std::move(kept));
}

}  // namespace fconv
