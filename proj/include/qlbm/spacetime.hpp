#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qlbm/circuit.hpp"
#include "qlbm/lattice.hpp"

namespace qlbm {

/// Qubit layout for the space-time window of a focal site: one qubit per
/// (lattice offset, direction) with the offset's Manhattan norm at most
/// `extent`. Offsets are enumerated by (norm, lexicographic coordinates),
/// directions in descriptor order within each offset, so the origin comes
/// first (focal qubits are 0..m-1) and truncating to a smaller norm is a
/// prefix of the index space.
class VicinityLayout {
public:
    VicinityLayout(LatticeDescriptor descriptor, int extent);

    const LatticeDescriptor& descriptor() const { return descriptor_; }
    int extent() const { return extent_; }
    const std::vector<std::vector<int>>& offsets() const { return offsets_; }
    std::uint32_t num_qubits() const {
        return static_cast<std::uint32_t>(offsets_.size()) *
               static_cast<std::uint32_t>(descriptor_.num_directions());
    }

    bool contains(const std::vector<int>& offset) const;
    std::size_t offset_rank(const std::vector<int>& offset) const;
    std::uint32_t qubit(const std::vector<int>& offset, int direction) const;
    const std::vector<int>& offset_of(std::uint32_t qubit) const;
    int direction_of(std::uint32_t qubit) const;

    /// Offsets with Manhattan norm <= radius; a prefix of offsets().
    /// Negative radius gives zero.
    std::size_t offsets_within(int radius) const;

private:
    LatticeDescriptor descriptor_;
    int extent_ = 0;
    std::vector<std::vector<int>> offsets_;
    std::map<std::vector<int>, std::size_t> rank_;
};

/// Extended von Neumann window enumeration; only the von Neumann lattice
/// families are supported (Moore/hexagonal neighborhoods are not).
VicinityLayout enumerate_vicinity(const LatticeDescriptor& descriptor, int extent);

/// Closed-form window qubit count: m times the diamond size, which for
/// D2Q4 evaluates to 8*Nt^2 + 8*Nt + 4.
std::int64_t qubit_count_formula(const LatticeDescriptor& descriptor, int extent);

/// Swap gates in streaming step t of an extent-Nt window: one per retained
/// (offset, moving direction) pair; 8(Nt-t)^2 + 8(Nt-t) + 4 for D2Q4.
/// Requires 1 <= t <= Nt.
std::int64_t swap_count_formula(const LatticeDescriptor& descriptor, int extent, int t);

/// Local collision applications in step t: the retained diamond size,
/// 2(Nt-t)^2 + 2(Nt-t) + 1, for the lattices with a two-member class
/// (D2Q4/D2Q5); zero for D1Q2/D1Q3 where collision is the identity.
/// Requires 1 <= t <= Nt.
std::int64_t collision_count_formula(const LatticeDescriptor& descriptor, int extent, int t);

/// Amplitude pair of the two-member-class rotation: the class-preserving
/// collision keeps weight alpha on the incoming pattern and moves weight
/// beta onto its partner.
struct CollisionParams {
    std::complex<double> alpha{1.0, 0.0};
    std::complex<double> beta{0.0, 0.0};

    void validate() const;
};

/// Seven-gate collision unitary on one direction quad: three CNOTs focus
/// the two class patterns onto a shared control triple, a triple-controlled
/// rotation mixes them, and the CNOTs are undone in reverse order. Maps
///   |1010> -> alpha|1010> + beta|0101>
///   |0101> -> -conj(beta)|1010> + conj(alpha)|0101>
/// and fixes the other 14 basis states of the quad.
Circuit collision_local_circuit(const CollisionParams& params,
                                const std::array<std::uint32_t, 4>& quad);

/// Collision applied to the direction quad of every offset retained at
/// step t (Manhattan norm <= extent - t). Empty for lattices whose
/// equivalence classes are all singletons.
Circuit collision_total_circuit(const VicinityLayout& layout, const CollisionParams& params,
                                int t);

struct StreamingStep {
    Circuit circuit; // layered SWAP network
    /// Value at qubit q moves to permutation[q]; identity outside the lines
    /// that feed the retained region.
    std::vector<std::uint32_t> permutation;
};

/// Streaming for step t: every retained (offset, direction) qubit receives
/// the value of (offset - e_j, direction). Each feeding line segment is
/// rotated by one position via two layers of disjoint transpositions, which
/// keeps the whole step a permutation; displaced values park on the segment
/// head just outside the retained region. Rest-direction qubits never move.
StreamingStep streaming_step(const VicinityLayout& layout, int t);

/// Measured layer count of the streaming circuit at step t.
int swap_depth(const VicinityLayout& layout, int t);

/// Depth bound asserted by the test suite for the layered scheduler.
int swap_depth_bound(int extent, int t);

/// Per-step circuit bundle with the gate counts the formulas predict.
struct StepCircuits {
    int t = 0;
    Circuit collision;
    Circuit streaming;
    std::size_t collisions_applied = 0;
    std::size_t swaps_applied = 0;
};

StepCircuits build_step_circuits(const VicinityLayout& layout, const CollisionParams& params,
                                 int t);

} // namespace qlbm
