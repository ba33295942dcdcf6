#include "qlbm/dense.hpp"

#include <stdexcept>

#include "qlbm/errors.hpp"

namespace qlbm {

namespace {

std::uint64_t check_width(std::uint32_t num_qubits) {
    if (num_qubits == 0 || num_qubits > kDenseQubitCap)
        throw BudgetError("register too large for dense expansion (cap " +
                          std::to_string(kDenseQubitCap) + " qubits)");
    return std::uint64_t{1} << num_qubits;
}

// Qubit q occupies index bit (width - 1 - q): big-endian labels.
inline std::uint64_t bit_mask(std::uint32_t num_qubits, std::uint32_t q) {
    return std::uint64_t{1} << (num_qubits - 1 - q);
}

} // namespace

DenseVector to_dense(const SparseState& state) {
    const std::uint64_t dim = check_width(state.num_qubits());
    DenseVector v = DenseVector::Zero(static_cast<Eigen::Index>(dim));
    for (const auto& [label, amp] : state.entries())
        v(static_cast<Eigen::Index>(label.to_index())) = amp;
    return v;
}

SparseState from_dense(std::uint32_t num_qubits, const DenseVector& amplitudes) {
    check_width(num_qubits);
    if (amplitudes.size() != (Eigen::Index{1} << num_qubits))
        throw std::invalid_argument("dense vector size does not match register");
    SparseState state(num_qubits);
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i)
        if (std::abs(amplitudes(i)) >= kPruneThreshold)
            state.set_amplitude(
                BasisLabel::from_index(num_qubits, static_cast<std::uint64_t>(i)), amplitudes(i));
    return state;
}

void apply_gate_dense(DenseVector& amplitudes, std::uint32_t num_qubits, const Gate& gate) {
    const std::uint64_t dim = check_width(num_qubits);
    if (amplitudes.size() != static_cast<Eigen::Index>(dim))
        throw std::invalid_argument("dense vector size does not match register");
    if (gate.min_register_width() > num_qubits)
        throw std::out_of_range("gate operand outside register");

    switch (gate.kind) {
    case GateKind::X: {
        const std::uint64_t m = bit_mask(num_qubits, gate.qubits[0]);
        for (std::uint64_t i = 0; i < dim; ++i)
            if (!(i & m))
                std::swap(amplitudes(static_cast<Eigen::Index>(i)),
                          amplitudes(static_cast<Eigen::Index>(i | m)));
        break;
    }
    case GateKind::Swap: {
        const std::uint64_t ma = bit_mask(num_qubits, gate.qubits[0]);
        const std::uint64_t mb = bit_mask(num_qubits, gate.qubits[1]);
        for (std::uint64_t i = 0; i < dim; ++i)
            if ((i & ma) && !(i & mb))
                std::swap(amplitudes(static_cast<Eigen::Index>(i)),
                          amplitudes(static_cast<Eigen::Index>((i & ~ma) | mb)));
        break;
    }
    case GateKind::Cnot: {
        const std::uint64_t mc = bit_mask(num_qubits, gate.qubits[0]);
        const std::uint64_t mt = bit_mask(num_qubits, gate.qubits[1]);
        for (std::uint64_t i = 0; i < dim; ++i)
            if ((i & mc) && !(i & mt))
                std::swap(amplitudes(static_cast<Eigen::Index>(i)),
                          amplitudes(static_cast<Eigen::Index>(i | mt)));
        break;
    }
    case GateKind::Permute: {
        DenseVector next = DenseVector::Zero(amplitudes.size());
        for (std::uint64_t i = 0; i < dim; ++i) {
            std::uint64_t j = 0;
            for (std::uint32_t q = 0; q < num_qubits; ++q)
                if (i & bit_mask(num_qubits, q)) j |= bit_mask(num_qubits, gate.permutation[q]);
            next(static_cast<Eigen::Index>(j)) = amplitudes(static_cast<Eigen::Index>(i));
        }
        amplitudes = std::move(next);
        break;
    }
    case GateKind::McRot: {
        std::uint64_t controls = 0;
        for (std::size_t i = 0; i + 1 < gate.qubits.size(); ++i)
            controls |= bit_mask(num_qubits, gate.qubits[i]);
        const std::uint64_t mt = bit_mask(num_qubits, gate.target());
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & controls) != controls || (i & mt)) continue;
            const auto lo = static_cast<Eigen::Index>(i);
            const auto hi = static_cast<Eigen::Index>(i | mt);
            const std::complex<double> a0 = amplitudes(lo);
            const std::complex<double> a1 = amplitudes(hi);
            amplitudes(lo) = gate.alpha * a0 - std::conj(gate.beta) * a1;
            amplitudes(hi) = gate.beta * a0 + std::conj(gate.alpha) * a1;
        }
        break;
    }
    }
}

void apply_circuit_dense(DenseVector& amplitudes, const Circuit& circuit) {
    for (const Gate& gate : circuit.gates)
        apply_gate_dense(amplitudes, circuit.num_qubits, gate);
}

DenseOperator circuit_to_operator(const Circuit& circuit) {
    const std::uint64_t dim = check_width(circuit.num_qubits);
    DenseOperator op(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t col = 0; col < dim; ++col) {
        DenseVector v = DenseVector::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(col)) = 1.0;
        apply_circuit_dense(v, circuit);
        op.col(static_cast<Eigen::Index>(col)) = v;
    }
    return op;
}

UnitarityReport unitarity_check(const DenseOperator& op, double tol) {
    if (op.rows() != op.cols()) throw std::invalid_argument("operator must be square");
    DenseOperator defect = op.adjoint() * op;
    defect.diagonal().array() -= 1.0;
    UnitarityReport report;
    report.max_deviation = defect.cwiseAbs().maxCoeff();
    report.tolerance = tol;
    report.pass = report.max_deviation <= tol;
    return report;
}

} // namespace qlbm
