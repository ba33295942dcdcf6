#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qlbm {

/// A fixed-width computational basis label. Qubit 0 is the leftmost
/// character in ket/string notation, and for registers small enough to
/// expand densely the index is the big-endian integer value of the bits,
/// so |q0 q1 q2 q3> = |1010> sits at dense index 0b1010.
///
/// Width is dynamic; permutation-only circuits routinely run on registers
/// of a few hundred qubits.
class BasisLabel {
public:
    BasisLabel() = default;
    explicit BasisLabel(std::uint32_t width) : width_(width), words_((width + 63) / 64, 0) {}

    static BasisLabel from_string(std::string_view bits);
    /// Big-endian value -> label, for widths up to 64.
    static BasisLabel from_index(std::uint32_t width, std::uint64_t index);

    std::uint32_t width() const { return width_; }

    bool get(std::uint32_t qubit) const {
        return (words_[qubit >> 6] >> (qubit & 63u)) & 1u;
    }
    void set(std::uint32_t qubit, bool value) {
        const std::uint64_t mask = std::uint64_t{1} << (qubit & 63u);
        if (value)
            words_[qubit >> 6] |= mask;
        else
            words_[qubit >> 6] &= ~mask;
    }
    void flip(std::uint32_t qubit) { words_[qubit >> 6] ^= std::uint64_t{1} << (qubit & 63u); }

    /// Big-endian integer value; width must be <= 64.
    std::uint64_t to_index() const;
    std::string to_string() const;

    friend bool operator==(const BasisLabel& a, const BasisLabel& b) {
        return a.width_ == b.width_ && a.words_ == b.words_;
    }
    /// Lexicographic by bit string; used for canonical ordering in output.
    bool operator<(const BasisLabel& other) const;

    std::size_t hash() const;

private:
    std::uint32_t width_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BasisLabelHash {
    std::size_t operator()(const BasisLabel& label) const { return label.hash(); }
};

} // namespace qlbm
