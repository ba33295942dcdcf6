#pragma once

#include <complex>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qlbm/basis_label.hpp"
#include "qlbm/circuit.hpp"

namespace qlbm {

/// Amplitudes below this magnitude are dropped after amplitude-splitting
/// gates so zero-weight entries cannot accumulate.
inline constexpr double kPruneThreshold = 1e-14;

/// Map-backed statevector keyed by basis label. All circuit families in
/// this toolkit are label permutations plus isolated two-branch rotations,
/// so the entry count grows by at most a factor of two per active rotation
/// and registers of hundreds of qubits stay cheap.
class SparseState {
public:
    using AmplitudeMap = std::unordered_map<BasisLabel, std::complex<double>, BasisLabelHash>;

    SparseState() = default;
    explicit SparseState(std::uint32_t num_qubits) : num_qubits_(num_qubits) {}

    std::uint32_t num_qubits() const { return num_qubits_; }
    std::size_t entry_count() const { return amps_.size(); }
    const AmplitudeMap& entries() const { return amps_; }

    std::complex<double> amplitude(const BasisLabel& label) const;
    void set_amplitude(const BasisLabel& label, std::complex<double> value);

    double norm() const;
    /// Entries in canonical (label-sorted) order, for deterministic output.
    std::vector<std::pair<BasisLabel, std::complex<double>>> sorted_entries() const;

    /// Applies one gate. Returns the number of amplitude merges: target
    /// labels that received contributions from more than one source entry.
    /// Permutation-style gates never merge; a merge during McRot is the
    /// interference signal surfaced by the simulator.
    std::size_t apply(const Gate& gate);
    /// Applies every gate in order; returns the total merge count.
    std::size_t apply(const Circuit& circuit);

private:
    std::uint32_t num_qubits_ = 0;
    AmplitudeMap amps_;
};

/// Single-entry state |label> with amplitude 1.
SparseState init_basis(std::uint32_t num_qubits, const BasisLabel& label);

/// Normalized superposition of weighted labels. Labels must be distinct,
/// weights must not all vanish; zero-weight terms are discarded.
SparseState superpose(std::uint32_t num_qubits,
                      const std::vector<std::pair<std::complex<double>, BasisLabel>>& terms);

/// <a|b>; both states must share the register width.
std::complex<double> inner_product(const SparseState& a, const SparseState& b);

} // namespace qlbm
