// modes.hpp: ordered mode registry shared by both backends.
//
// Basis convention: a Fock basis state |n_1,...,n_M> is stored at the
// row-major multi-index  sum_k n_k * stride_k  where mode 1 varies slowest
// (stride of the last mode is 1).

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fconv {

struct Mode {
    std::string label;
    double frequency = 1.0;  // arbitrary but consistent angular units
    int cutoff = 1;          // highest retained occupation
};

class ModeRegistry {
public:
    ModeRegistry() = default;

    // Throws InvalidArgument on duplicate labels, cutoff < 1 or frequency <= 0.
    explicit ModeRegistry(std::vector<Mode> modes);

    std::size_t size() const noexcept { return modes_.size(); }
    const std::vector<Mode>& modes() const noexcept { return modes_; }
    const Mode& mode(std::size_t k) const { return modes_.at(k); }

    // Throws UnknownMode.
    std::size_t index_of(std::string_view label) const;
    bool contains(std::string_view label) const noexcept;

    // Product of (cutoff + 1) over modes.
    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t stride(std::size_t k) const { return strides_.at(k); }
    int cutoff(std::size_t k) const { return modes_.at(k).cutoff; }

    int occupation(std::size_t basis_index, std::size_t k) const {
        return static_cast<int>((basis_index / strides_[k]) %
                                static_cast<std::size_t>(modes_[k].cutoff + 1));
    }
    std::vector<int> occupations(std::size_t basis_index) const;

    // Throws OccupationExceedsCutoff / DimensionMismatch.
    std::size_t basis_index(const std::vector<int>& occupations) const;

    // Same modes in the same order, cutoffs included.
    bool operator==(const ModeRegistry& other) const noexcept;

    // Sub-registry of the listed modes, kept in registry order.
    ModeRegistry subset(const std::vector<std::string>& labels) const;

private:
    std::vector<Mode> modes_;
    std::vector<std::size_t> strides_;
    std::size_t dimension_ = 1;
};

}  // namespace fconv
