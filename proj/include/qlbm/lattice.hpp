#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qlbm {

/// A discrete velocity set: `dimension` spatial axes, `velocities.size()`
/// directions with components in {-1, 0, +1}. Every moving velocity has its
/// opposite in the set; at most one rest (all-zero) velocity.
///
/// Canonical direction ordering (fixed project-wide):
///   D1Q2: (+1), (-1)
///   D1Q3: (+1), (-1), (0)
///   D2Q4: (+1,0), (0,+1), (-1,0), (0,-1)
///   D2Q5: D2Q4 order, rest (0,0) last
/// For the planar sets this gives e[j+2] = -e[j] on the moving directions.
struct LatticeDescriptor {
    int dimension = 0;
    std::vector<std::vector<int>> velocities;
    std::string name;

    friend bool operator==(const LatticeDescriptor&, const LatticeDescriptor&) = default;

    int num_directions() const { return static_cast<int>(velocities.size()); }
    bool is_rest(int j) const;
    bool has_rest() const;
    /// Indices of nonzero velocities, in descriptor order.
    std::vector<int> moving_directions() const;
    /// Index of -e[j]; rest maps to itself.
    int opposite_direction(int j) const;
};

/// Builds the descriptor for one of the supported lattice names
/// (case-insensitive). Throws std::invalid_argument for anything else,
/// including D2Q6/D2Q9 style sets this toolkit does not cover.
LatticeDescriptor build_descriptor(std::string_view name);

/// Local velocity patterns are m-bit integers read big-endian: direction 0
/// is the most significant bit, so the literal 0b1010 is the D2Q4 pattern
/// with directions 0 and 2 occupied.
inline bool pattern_bit(std::uint32_t pattern, int num_directions, int direction) {
    return (pattern >> (num_directions - 1 - direction)) & 1u;
}
inline std::uint32_t pattern_with_bit(std::uint32_t pattern, int num_directions, int direction,
                                      bool value) {
    const std::uint32_t mask = 1u << (num_directions - 1 - direction);
    return value ? (pattern | mask) : (pattern & ~mask);
}
std::string pattern_to_string(std::uint32_t pattern, int num_directions);
std::uint32_t pattern_from_string(std::string_view text);

/// Total mass (bit count) and momentum (velocity sum) of a local pattern.
struct MassMomentum {
    int mass = 0;
    std::vector<int> momentum;

    friend bool operator==(const MassMomentum&, const MassMomentum&) = default;
    bool operator<(const MassMomentum& other) const;
};

MassMomentum mass_momentum(std::uint32_t pattern, const LatticeDescriptor& descriptor);

/// Partition of all 2^m local patterns into classes of equal mass and
/// momentum. Class members are sorted ascending.
struct EquivalenceClassTable {
    LatticeDescriptor descriptor;
    std::vector<std::vector<std::uint32_t>> classes;
    std::vector<std::size_t> class_of; // pattern -> index into classes

    const std::vector<std::uint32_t>& class_of_pattern(std::uint32_t pattern) const {
        return classes[class_of[pattern]];
    }
    /// The other member when the pattern's class has exactly two elements.
    std::optional<std::uint32_t> swap_partner(std::uint32_t pattern) const;
};

EquivalenceClassTable equivalence_classes(const LatticeDescriptor& descriptor);

/// Site-resolved occupancy of a periodic grid: one bit per (site, direction),
/// stored at index site * m + direction. Sites are linearized with axis 0
/// fastest: site = x0 + extents[0] * (x1 + extents[1] * ...).
class OccupancyField {
public:
    OccupancyField(LatticeDescriptor descriptor, std::vector<int> extents);

    const LatticeDescriptor& descriptor() const { return descriptor_; }
    const std::vector<int>& extents() const { return extents_; }
    std::size_t num_sites() const { return num_sites_; }
    std::size_t num_bits() const { return bits_.size(); }

    bool get(std::size_t site, int direction) const;
    void set(std::size_t site, int direction, bool value);
    std::uint32_t local_pattern(std::size_t site) const;
    void set_local_pattern(std::size_t site, std::uint32_t pattern);

    std::size_t site_index(const std::vector<int>& coords) const;
    std::vector<int> site_coords(std::size_t site) const;
    /// site shifted by `delta`, wrapped periodically.
    std::size_t shifted_site(std::size_t site, const std::vector<int>& delta) const;

    std::size_t total_mass() const;
    std::vector<int> total_momentum() const;

    friend bool operator==(const OccupancyField&, const OccupancyField&) = default;

private:
    LatticeDescriptor descriptor_;
    std::vector<int> extents_;
    std::size_t num_sites_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// One streaming step with periodic wrap: output bit (x, j) is input bit
/// (x - e_j, j).
OccupancyField stream_classical(const OccupancyField& field);

enum class CollisionRule {
    Identity,
    /// Deterministically map each member of a two-element equivalence class
    /// to the other member; all other patterns are fixed points.
    SwapClass,
};

OccupancyField collide_classical(const OccupancyField& field, CollisionRule rule);

/// Pattern-level form of the swap-class rule.
std::uint32_t collide_pattern(std::uint32_t pattern, const EquivalenceClassTable& table,
                              CollisionRule rule);

} // namespace qlbm
