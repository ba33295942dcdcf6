#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "qlbm/circuit.hpp"
#include "qlbm/sparse_state.hpp"

namespace qlbm {

/// Square 2^k x 2^k complex matrices on up to kDenseQubitCap qubits.
/// Row/column index is the big-endian value of the basis label.
using DenseOperator = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

inline constexpr std::uint32_t kDenseQubitCap = 16;

/// Exact dense expansion; register width must be <= kDenseQubitCap.
DenseVector to_dense(const SparseState& state);

SparseState from_dense(std::uint32_t num_qubits, const DenseVector& amplitudes);

/// Applies a gate directly to a dense amplitude vector with index bit
/// arithmetic. This path never consults the sparse engine, so the two can
/// cross-validate each other.
void apply_gate_dense(DenseVector& amplitudes, std::uint32_t num_qubits, const Gate& gate);

void apply_circuit_dense(DenseVector& amplitudes, const Circuit& circuit);

/// Composes the circuit's gates in application order into one operator,
/// column by column through the dense path.
DenseOperator circuit_to_operator(const Circuit& circuit);

struct UnitarityReport {
    double max_deviation = 0.0; // max |(U^dag U - I)_ij|
    bool pass = false;
    double tolerance = 0.0;
};

UnitarityReport unitarity_check(const DenseOperator& op, double tol);

} // namespace qlbm
