#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qlbm {

enum class GateKind { X, Swap, Cnot, Permute, McRot };

/// Gates are permutation-style label rewrites except for McRot, the lone
/// amplitude-splitting gate: controlled on all `controls` being 1, the
/// target transforms by [[alpha, -conj(beta)], [beta, conj(alpha)]] on the
/// {|0>, |1>} target basis.
struct Gate {
    GateKind kind;
    std::vector<std::uint32_t> qubits;      // X: {q}; Swap: {a,b}; Cnot: {control,target};
                                            // McRot: controls..., target last
    std::vector<std::uint32_t> permutation; // Permute only: value at q moves to permutation[q]
    std::complex<double> alpha{1.0, 0.0};   // McRot only
    std::complex<double> beta{0.0, 0.0};

    static Gate x(std::uint32_t q);
    static Gate swap(std::uint32_t a, std::uint32_t b);
    static Gate cnot(std::uint32_t control, std::uint32_t target);
    static Gate permute(std::vector<std::uint32_t> permutation);
    static Gate mc_rot(std::vector<std::uint32_t> controls, std::uint32_t target,
                       std::complex<double> alpha, std::complex<double> beta);

    std::uint32_t target() const { return qubits.back(); }
    /// Qubits the gate can change or read; used for layer disjointness.
    std::vector<std::uint32_t> qubits_touched() const;
    /// Largest operand index + 1.
    std::uint32_t min_register_width() const;
};

/// An ordered gate list with an optional layer annotation per gate. When
/// `layers` is nonempty it has one entry per gate and gates sharing a layer
/// must touch disjoint qubits (validated by `layers_are_disjoint`).
struct Circuit {
    std::uint32_t num_qubits = 0;
    std::vector<Gate> gates;
    std::vector<std::int32_t> layers;

    void append(Gate gate);
    void append(Gate gate, std::int32_t layer);
    void append(const Circuit& other);

    std::size_t gate_count() const { return gates.size(); }
    std::size_t count_kind(GateKind kind) const;
    /// Number of distinct nonempty layers; 0 for an empty circuit. Gates
    /// without annotation are treated as one layer each.
    int depth() const;
    bool layers_are_disjoint() const;
    void validate() const;
};

inline constexpr double kAmplitudePairTol = 1e-12;

/// Checks |alpha|^2 + |beta|^2 == 1 within kAmplitudePairTol.
bool amplitude_pair_normalized(std::complex<double> alpha, std::complex<double> beta);

} // namespace qlbm
