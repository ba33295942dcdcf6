#include "qlbm/spacetime.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qlbm {

namespace {

int manhattan(const std::vector<int>& v) {
    int s = 0;
    for (int c : v) s += std::abs(c);
    return s;
}

void check_step(int extent, int t) {
    if (t < 1 || t > extent)
        throw std::out_of_range("time step " + std::to_string(t) + " outside 1.." +
                                std::to_string(extent));
}

/// Retention radius for step t; negative means nothing is retained.
int retained_radius(int extent, int t) { return extent - t; }

/// The four moving directions, or empty when the lattice's collision is
/// trivial (no two-member equivalence class).
std::vector<int> collision_quad(const LatticeDescriptor& descriptor) {
    if (descriptor.dimension != 2) return {};
    return descriptor.moving_directions();
}

} // namespace

VicinityLayout::VicinityLayout(LatticeDescriptor descriptor, int extent)
    : descriptor_(std::move(descriptor)), extent_(extent) {
    if (extent_ < 0) throw std::invalid_argument("vicinity extent must be nonnegative");

    // Every offset with Manhattan norm <= extent, shell by shell.
    std::vector<int> cursor(static_cast<std::size_t>(descriptor_.dimension), -extent_);
    std::vector<std::vector<int>> all;
    for (;;) {
        if (manhattan(cursor) <= extent_) all.push_back(cursor);
        std::size_t axis = 0;
        while (axis < cursor.size() && ++cursor[axis] > extent_) cursor[axis++] = -extent_;
        if (axis == cursor.size()) break;
    }
    std::sort(all.begin(), all.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        const int na = manhattan(a), nb = manhattan(b);
        if (na != nb) return na < nb;
        return a < b;
    });
    offsets_ = std::move(all);
    for (std::size_t r = 0; r < offsets_.size(); ++r) rank_[offsets_[r]] = r;
}

bool VicinityLayout::contains(const std::vector<int>& offset) const {
    return rank_.count(offset) != 0;
}

std::size_t VicinityLayout::offset_rank(const std::vector<int>& offset) const {
    auto it = rank_.find(offset);
    if (it == rank_.end()) throw std::out_of_range("offset outside the vicinity");
    return it->second;
}

std::uint32_t VicinityLayout::qubit(const std::vector<int>& offset, int direction) const {
    if (direction < 0 || direction >= descriptor_.num_directions())
        throw std::out_of_range("direction index out of range");
    return static_cast<std::uint32_t>(offset_rank(offset) *
                                          static_cast<std::size_t>(descriptor_.num_directions()) +
                                      static_cast<std::size_t>(direction));
}

const std::vector<int>& VicinityLayout::offset_of(std::uint32_t qubit) const {
    return offsets_.at(qubit / static_cast<std::uint32_t>(descriptor_.num_directions()));
}

int VicinityLayout::direction_of(std::uint32_t qubit) const {
    return static_cast<int>(qubit % static_cast<std::uint32_t>(descriptor_.num_directions()));
}

std::size_t VicinityLayout::offsets_within(int radius) const {
    if (radius < 0) return 0;
    if (radius >= extent_) return offsets_.size();
    std::size_t count = 0;
    while (count < offsets_.size() && manhattan(offsets_[count]) <= radius) ++count;
    return count;
}

VicinityLayout enumerate_vicinity(const LatticeDescriptor& descriptor, int extent) {
    for (int j = 0; j < descriptor.num_directions(); ++j) {
        const auto& e = descriptor.velocities[static_cast<std::size_t>(j)];
        const int nonzero = static_cast<int>(
            std::count_if(e.begin(), e.end(), [](int c) { return c != 0; }));
        if (nonzero > 1)
            throw std::invalid_argument(
                "vicinity enumeration supports von Neumann lattices only (axis velocities)");
    }
    return VicinityLayout(descriptor, extent);
}

namespace {

/// Diamond size |{o : manhattan(o) <= r}| per dimension.
std::int64_t diamond_size(int dimension, int r) {
    if (r < 0) return 0;
    const auto radius = static_cast<std::int64_t>(r);
    switch (dimension) {
    case 1:
        return 2 * radius + 1;
    case 2:
        return 2 * radius * radius + 2 * radius + 1;
    default:
        throw std::invalid_argument("closed forms cover 1 and 2 dimensions");
    }
}

} // namespace

std::int64_t qubit_count_formula(const LatticeDescriptor& descriptor, int extent) {
    if (extent < 0) throw std::out_of_range("extent must be nonnegative");
    return diamond_size(descriptor.dimension, extent) * descriptor.num_directions();
}

std::int64_t swap_count_formula(const LatticeDescriptor& descriptor, int extent, int t) {
    check_step(extent, t);
    return diamond_size(descriptor.dimension, retained_radius(extent, t)) *
           static_cast<std::int64_t>(descriptor.moving_directions().size());
}

std::int64_t collision_count_formula(const LatticeDescriptor& descriptor, int extent, int t) {
    check_step(extent, t);
    if (collision_quad(descriptor).empty()) return 0;
    return diamond_size(descriptor.dimension, retained_radius(extent, t));
}

void CollisionParams::validate() const {
    if (!amplitude_pair_normalized(alpha, beta))
        throw std::invalid_argument("collision amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
}

Circuit collision_local_circuit(const CollisionParams& params,
                                const std::array<std::uint32_t, 4>& quad) {
    params.validate();
    std::array<std::uint32_t, 4> sorted = quad;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("collision quad qubits must be distinct");

    // Focus 1010 -> 1110 and 0101 -> 1111 so that both class members, and
    // only they, raise the control triple (q0, q1, q2).
    Circuit c;
    c.num_qubits = *std::max_element(quad.begin(), quad.end()) + 1;
    c.append(Gate::cnot(quad[0], quad[1]));
    c.append(Gate::cnot(quad[3], quad[0]));
    c.append(Gate::cnot(quad[3], quad[2]));
    c.append(Gate::mc_rot({quad[0], quad[1], quad[2]}, quad[3], params.alpha, params.beta));
    c.append(Gate::cnot(quad[3], quad[2]));
    c.append(Gate::cnot(quad[3], quad[0]));
    c.append(Gate::cnot(quad[0], quad[1]));
    return c;
}

Circuit collision_total_circuit(const VicinityLayout& layout, const CollisionParams& params,
                                int t) {
    params.validate();
    if (t < 1 || (layout.extent() > 0 && t > layout.extent()))
        throw std::out_of_range("time step outside 1..extent");
    Circuit total;
    total.num_qubits = layout.num_qubits();
    const std::vector<int> quad_dirs = collision_quad(layout.descriptor());
    if (quad_dirs.size() != 4) return total;

    const std::size_t retained = layout.offsets_within(retained_radius(layout.extent(), t));
    for (std::size_t rank = 0; rank < retained; ++rank) {
        const auto& offset = layout.offsets()[rank];
        const std::array<std::uint32_t, 4> quad = {
            layout.qubit(offset, quad_dirs[0]), layout.qubit(offset, quad_dirs[1]),
            layout.qubit(offset, quad_dirs[2]), layout.qubit(offset, quad_dirs[3])};
        total.append(collision_local_circuit(params, quad));
    }
    total.num_qubits = layout.num_qubits();
    return total;
}

StreamingStep streaming_step(const VicinityLayout& layout, int t) {
    if (t < 1 || (layout.extent() > 0 && t > layout.extent()))
        throw std::out_of_range("time step outside 1..extent");
    const int radius = retained_radius(layout.extent(), t);
    const auto& descriptor = layout.descriptor();

    StreamingStep step;
    step.circuit.num_qubits = layout.num_qubits();
    step.permutation.resize(layout.num_qubits());
    std::iota(step.permutation.begin(), step.permutation.end(), 0u);

    for (int j : descriptor.moving_directions()) {
        const auto& e = descriptor.velocities[static_cast<std::size_t>(j)];
        std::size_t axis = 0;
        while (e[axis] == 0) ++axis;
        const int sign = e[axis];

        // Group retained offsets into lines parallel to e_j, each keyed by
        // the coordinates transverse to the flow axis.
        std::map<std::vector<int>, std::vector<std::pair<int, std::vector<int>>>> lines;
        const std::size_t retained = layout.offsets_within(radius);
        for (std::size_t rank = 0; rank < retained; ++rank) {
            const auto& offset = layout.offsets()[rank];
            std::vector<int> key = offset;
            key[axis] = 0;
            lines[key].push_back({sign * offset[axis], offset});
        }

        for (auto& [key, members] : lines) {
            std::sort(members.begin(), members.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            // Segment: feeder position one step upstream, then the retained
            // run. Rotating it by one moves every retained qubit's upstream
            // value in and parks the displaced head value outside.
            std::vector<std::uint32_t> segment;
            std::vector<int> feeder = members.front().second;
            feeder[axis] -= sign;
            segment.push_back(layout.qubit(feeder, j));
            for (const auto& [pos, offset] : members) segment.push_back(layout.qubit(offset, j));

            const std::size_t k = segment.size() - 1;
            for (std::size_t i = 0; i < k; ++i)
                step.permutation[segment[i]] = segment[i + 1];
            step.permutation[segment[k]] = segment[0];

            // Rotation by one = reverse the segment, then reverse its tail.
            for (std::size_t i = 0; i < k + 1 - i - 1; ++i)
                step.circuit.append(Gate::swap(segment[i], segment[k - i]), 0);
            for (std::size_t i = 1; i < k + 1 - i; ++i)
                step.circuit.append(Gate::swap(segment[i], segment[k + 1 - i]), 1);
        }
    }
    step.circuit.validate();
    return step;
}

int swap_depth(const VicinityLayout& layout, int t) {
    return streaming_step(layout, t).circuit.depth();
}

int swap_depth_bound(int extent, int t) {
    const int span = std::max(2, extent - t + 2);
    return 2 * static_cast<int>(std::ceil(std::log2(static_cast<double>(span))));
}

StepCircuits build_step_circuits(const VicinityLayout& layout, const CollisionParams& params,
                                 int t) {
    StepCircuits step;
    step.t = t;
    step.collision = collision_total_circuit(layout, params, t);
    step.streaming = streaming_step(layout, t).circuit;
    step.collisions_applied = step.collision.count_kind(GateKind::McRot);
    step.swaps_applied = step.streaming.count_kind(GateKind::Swap);
    return step;
}

} // namespace qlbm
