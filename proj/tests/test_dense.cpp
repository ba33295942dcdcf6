#include <doctest.h>

#include <cmath>
#include <complex>

#include "qlbm/dense.hpp"
#include "qlbm/errors.hpp"
#include "qlbm/lattice.hpp"
#include "qlbm/spacetime.hpp"

using namespace qlbm;
using Complex = std::complex<double>;

TEST_CASE("dense expansion uses big-endian indices") {
    const SparseState s = init_basis(2, BasisLabel::from_string("01"));
    const DenseVector v = to_dense(s);
    CHECK(v.size() == 4);
    CHECK(v(0) == Complex{0.0, 0.0});
    CHECK(v(1) == Complex{1.0, 0.0});
    CHECK(v(2) == Complex{0.0, 0.0});
    CHECK(v(3) == Complex{0.0, 0.0});

    const SparseState back = from_dense(2, v);
    CHECK(back.amplitude(BasisLabel::from_string("01")) == Complex{1.0, 0.0});

    CHECK_THROWS_AS(to_dense(init_basis(17, BasisLabel(17))), BudgetError);
}

TEST_CASE("empty circuit expands to the identity") {
    Circuit circuit;
    circuit.num_qubits = 3;
    const DenseOperator op = circuit_to_operator(circuit);
    CHECK((op - DenseOperator::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("collision circuit maps the class pair as required") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const CollisionParams params{{inv_sqrt2, 0.0}, {inv_sqrt2, 0.0}};
    const Circuit circuit = collision_local_circuit(params, {0, 1, 2, 3});
    const DenseOperator op = circuit_to_operator(circuit);

    // Column of e_{1010}: alpha e_{1010} + beta e_{0101}.
    CHECK(op(0b1010, 0b1010).real() == doctest::Approx(inv_sqrt2));
    CHECK(op(0b0101, 0b1010).real() == doctest::Approx(inv_sqrt2));
    // Column of e_{0101}: -conj(beta) e_{1010} + conj(alpha) e_{0101}.
    CHECK(op(0b1010, 0b0101).real() == doctest::Approx(-inv_sqrt2));
    CHECK(op(0b0101, 0b0101).real() == doctest::Approx(inv_sqrt2));

    CHECK(unitarity_check(op, 1e-12).pass);
}

TEST_CASE("unitarity report for the identity") {
    const UnitarityReport report = unitarity_check(DenseOperator::Identity(8, 8), 1e-12);
    CHECK(report.max_deviation == 0.0);
    CHECK(report.pass);
}

TEST_CASE("the basis-level streaming assignment is far from unitary") {
    // Stream the two 4-site configurations classically and constrain the
    // matrix on the |site>|pattern> basis terms they touch; every other
    // basis state is fixed. Two input pairs collapse onto shared images, so
    // the columns cannot be orthonormal.
    const LatticeDescriptor d1q2 = build_descriptor("D1Q2");
    const std::vector<std::vector<std::uint32_t>> configs = {{0b00, 0b11, 0b10, 0b10},
                                                             {0b01, 0b01, 0b00, 0b11}};
    DenseOperator op = DenseOperator::Identity(16, 16);
    for (const auto& patterns : configs) {
        OccupancyField field(d1q2, {4});
        for (std::size_t s = 0; s < 4; ++s) field.set_local_pattern(s, patterns[s]);
        const OccupancyField next = stream_classical(field);
        for (std::size_t s = 0; s < 4; ++s) {
            const auto col = static_cast<Eigen::Index>((s << 2) | patterns[s]);
            const auto row = static_cast<Eigen::Index>((s << 2) | next.local_pattern(s));
            op.col(col).setZero();
            op(row, col) = 1.0;
        }
    }
    const UnitarityReport report = unitarity_check(op, 1e-12);
    CHECK(report.max_deviation >= 0.5);
    CHECK_FALSE(report.pass);
}

TEST_CASE("dense gate application agrees with hand-computed cases") {
    // CNOT on |10>: qubit 0 controls qubit 1.
    DenseVector v = DenseVector::Zero(4);
    v(0b10) = 1.0;
    apply_gate_dense(v, 2, Gate::cnot(0, 1));
    CHECK(v(0b11) == Complex{1.0, 0.0});

    // McRot without controls on |0>.
    DenseVector w = DenseVector::Zero(2);
    w(0) = 1.0;
    apply_gate_dense(w, 1, Gate::mc_rot({}, 0, {0.6, 0.0}, {0.8, 0.0}));
    CHECK(w(0).real() == doctest::Approx(0.6));
    CHECK(w(1).real() == doctest::Approx(0.8));

    // Permutation 0->1->2->0 moves the set bit.
    DenseVector p = DenseVector::Zero(8);
    p(0b100) = 1.0; // qubit 0 set
    apply_gate_dense(p, 3, Gate::permute({1, 2, 0}));
    CHECK(p(0b010) == Complex{1.0, 0.0}); // qubit 1 set
}
