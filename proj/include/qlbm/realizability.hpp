#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "qlbm/dense.hpp"
#include "qlbm/sparse_state.hpp"

namespace qlbm {

/// A finite set of required state transitions |in_i> -> |out_i> on one
/// register. A unitary realizing all of them exists iff the pairwise inner
/// products of inputs and outputs agree (Gram-matrix test).
struct TransitionSpec {
    std::uint32_t num_qubits = 0;
    std::vector<std::pair<SparseState, SparseState>> pairs;
};

struct GramViolation {
    std::size_t i = 0;
    std::size_t j = 0;
    std::complex<double> inner_in;
    std::complex<double> inner_out;
    double abs_difference = 0.0;
};

struct GramReport {
    bool realizable = false;
    double tolerance = 0.0;
    Eigen::MatrixXcd gram_in;
    Eigen::MatrixXcd gram_out;
    std::vector<GramViolation> violations; // i <= j, ordered
};

inline constexpr double kGramTolerance = 1e-10;

/// Compares the input and output Gram matrices entry by entry. Violations
/// are reported as magnitudes of complex differences so phase conventions
/// cannot mask a mismatch.
GramReport gram_check(const TransitionSpec& spec, double tol = kGramTolerance);

/// Constructive converse of gram_check: orthonormalizes inputs and outputs
/// with matched coefficients, completes both bases, and returns a unitary U
/// with U in_i = out_i. Throws NotRealizableError when the Gram test fails
/// and BudgetError above 12 qubits.
DenseOperator synthesize_unitary(const TransitionSpec& spec);

inline constexpr std::uint32_t kSynthesisQubitCap = 12;

/// Parameters of the amplitude-encoding collision instance. The state with
/// weight on directions v0/v1 must acquire weight gamma1 on the equivalent
/// v2/v3 combination, while the pure-v2 state may only pick up a phase.
/// Pairs (alpha0, alpha1), (beta2, beta3), (gamma0, gamma1) are each
/// normalized to 1e-12.
struct AmplitudeNogoParams {
    std::complex<double> alpha0{M_SQRT1_2, 0.0};
    std::complex<double> alpha1{M_SQRT1_2, 0.0};
    std::complex<double> beta2{M_SQRT1_2, 0.0};
    std::complex<double> beta3{M_SQRT1_2, 0.0};
    std::complex<double> gamma0{0.0, 0.0};
    std::complex<double> gamma1{1.0, 0.0};
    double theta = 0.0;

    void validate() const;
};

/// Two-pair spec on the 2-qubit velocity register (v0..v3 as basis labels
/// 00..11; the constant position factor drops out of every inner product):
///   in1 = alpha0|v0> + alpha1|v1>
///   out1 = gamma0 (alpha0|v0> + alpha1|v1>) + gamma1 (beta2|v2> + beta3|v3>)
///   in2 = |v2>,  out2 = e^{i theta} |v2>
/// The Gram test fails exactly when |gamma1 beta2| exceeds the tolerance.
TransitionSpec amplitude_nogo_instance(const AmplitudeNogoParams& params);

/// Four-qubit (2 position + 2 velocity) D1Q2 streaming instance on a 4-site
/// periodic line: two orthogonal configurations whose streamed images have
/// inner product 1/2. gram_check on it reports the violation 0 vs 0.5.
TransitionSpec cbs_nogo_instance();

} // namespace qlbm
