#include "qlbm/basis_label.hpp"

#include <stdexcept>

namespace qlbm {

BasisLabel BasisLabel::from_string(std::string_view bits) {
    BasisLabel label(static_cast<std::uint32_t>(bits.size()));
    for (std::uint32_t q = 0; q < label.width_; ++q) {
        const char c = bits[q];
        if (c != '0' && c != '1')
            throw std::invalid_argument("basis label must contain only 0/1");
        if (c == '1') label.set(q, true);
    }
    return label;
}

BasisLabel BasisLabel::from_index(std::uint32_t width, std::uint64_t index) {
    if (width > 64) throw std::invalid_argument("from_index supports widths up to 64");
    if (width < 64 && (index >> width) != 0)
        throw std::invalid_argument("index does not fit the label width");
    BasisLabel label(width);
    for (std::uint32_t q = 0; q < width; ++q)
        if ((index >> (width - 1 - q)) & 1u) label.set(q, true);
    return label;
}

std::uint64_t BasisLabel::to_index() const {
    if (width_ > 64) throw std::invalid_argument("label too wide for an integer index");
    std::uint64_t index = 0;
    for (std::uint32_t q = 0; q < width_; ++q)
        index = (index << 1) | static_cast<std::uint64_t>(get(q));
    return index;
}

std::string BasisLabel::to_string() const {
    std::string s(width_, '0');
    for (std::uint32_t q = 0; q < width_; ++q)
        if (get(q)) s[q] = '1';
    return s;
}

bool BasisLabel::operator<(const BasisLabel& other) const {
    if (width_ != other.width_) return width_ < other.width_;
    // Qubit 0 is the most significant position in string order; it lives in
    // the low bits of words_[0], so compare bit-reversed words directly.
    for (std::uint32_t q = 0; q < width_; ++q) {
        const bool a = get(q), b = other.get(q);
        if (a != b) return b;
    }
    return false;
}

std::size_t BasisLabel::hash() const {
    // FNV-1a over the words plus the width.
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    mix(width_);
    for (std::uint64_t w : words_) mix(w);
    return static_cast<std::size_t>(h);
}

} // namespace qlbm
