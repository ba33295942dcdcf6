#include "qlbm/realizability.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qlbm/errors.hpp"
#include "qlbm/lattice.hpp"

namespace qlbm {

namespace {

void check_spec(const TransitionSpec& spec) {
    if (spec.pairs.empty()) throw std::invalid_argument("transition spec needs at least one pair");
    for (const auto& [in, out] : spec.pairs) {
        if (in.num_qubits() != spec.num_qubits || out.num_qubits() != spec.num_qubits)
            throw std::invalid_argument("transition pair register size mismatch");
        if (std::abs(in.norm() - 1.0) > 1e-8 || std::abs(out.norm() - 1.0) > 1e-8)
            throw std::invalid_argument("transition states must be unit norm");
    }
}

} // namespace

GramReport gram_check(const TransitionSpec& spec, double tol) {
    check_spec(spec);
    const auto n = static_cast<Eigen::Index>(spec.pairs.size());
    GramReport report;
    report.tolerance = tol;
    report.gram_in.resize(n, n);
    report.gram_out.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            report.gram_in(i, j) = inner_product(spec.pairs[static_cast<std::size_t>(i)].first,
                                                 spec.pairs[static_cast<std::size_t>(j)].first);
            report.gram_out(i, j) = inner_product(spec.pairs[static_cast<std::size_t>(i)].second,
                                                  spec.pairs[static_cast<std::size_t>(j)].second);
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double diff = std::abs(report.gram_in(i, j) - report.gram_out(i, j));
            if (diff > tol)
                report.violations.push_back({static_cast<std::size_t>(i),
                                             static_cast<std::size_t>(j), report.gram_in(i, j),
                                             report.gram_out(i, j), diff});
        }
    }
    report.realizable = report.violations.empty();
    return report;
}

DenseOperator synthesize_unitary(const TransitionSpec& spec) {
    check_spec(spec);
    if (spec.num_qubits > kSynthesisQubitCap)
        throw BudgetError("synthesis register cap is " + std::to_string(kSynthesisQubitCap) +
                          " qubits");
    const GramReport gram = gram_check(spec);
    if (!gram.realizable)
        throw NotRealizableError("transition spec fails the Gram-matrix test");

    const auto dim = Eigen::Index{1} << spec.num_qubits;
    std::vector<DenseVector> in_basis, out_basis;

    // Matched Gram-Schmidt: whenever an input survives orthogonalization,
    // reduce its output by the same already-accepted pairs. Gram agreement
    // makes the reduced outputs come out orthonormal as well; a final
    // renormalization absorbs the tolerance slack.
    constexpr double kDependentTol = 1e-7;
    for (const auto& [in_state, out_state] : spec.pairs) {
        DenseVector u = to_dense(in_state);
        DenseVector w = to_dense(out_state);
        for (std::size_t k = 0; k < in_basis.size(); ++k) {
            const std::complex<double> overlap = in_basis[k].dot(u);
            u -= overlap * in_basis[k];
            w -= overlap * out_basis[k];
        }
        const double residual = u.norm();
        if (residual < kDependentTol) continue; // linearly dependent on accepted inputs
        in_basis.push_back(u / residual);
        out_basis.push_back(w / w.norm());
    }

    // Re-orthonormalize the outputs to wash out tolerance-level drift.
    for (std::size_t k = 0; k < out_basis.size(); ++k) {
        for (std::size_t l = 0; l < k; ++l)
            out_basis[k] -= out_basis[l].dot(out_basis[k]) * out_basis[l];
        out_basis[k].normalize();
    }

    auto complete_basis = [dim](std::vector<DenseVector>& basis) {
        for (Eigen::Index e = 0; e < dim && static_cast<Eigen::Index>(basis.size()) < dim; ++e) {
            DenseVector v = DenseVector::Zero(dim);
            v(e) = 1.0;
            for (const DenseVector& b : basis) v -= b.dot(v) * b;
            const double residual = v.norm();
            if (residual > 0.5) basis.push_back(v / residual);
        }
        if (static_cast<Eigen::Index>(basis.size()) != dim)
            throw std::logic_error("basis completion fell short");
    };
    complete_basis(in_basis);
    complete_basis(out_basis);

    DenseOperator unitary = DenseOperator::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        unitary += out_basis[static_cast<std::size_t>(k)] *
                   in_basis[static_cast<std::size_t>(k)].adjoint();
    return unitary;
}

void AmplitudeNogoParams::validate() const {
    auto normalized = [](std::complex<double> a, std::complex<double> b) {
        return std::abs(std::norm(a) + std::norm(b) - 1.0) <= 1e-12;
    };
    if (!normalized(alpha0, alpha1))
        throw std::invalid_argument("|alpha0|^2 + |alpha1|^2 must equal 1");
    if (!normalized(beta2, beta3))
        throw std::invalid_argument("|beta2|^2 + |beta3|^2 must equal 1");
    if (!normalized(gamma0, gamma1))
        throw std::invalid_argument("|gamma0|^2 + |gamma1|^2 must equal 1");
}

TransitionSpec amplitude_nogo_instance(const AmplitudeNogoParams& params) {
    params.validate();
    const BasisLabel v0 = BasisLabel::from_string("00");
    const BasisLabel v1 = BasisLabel::from_string("01");
    const BasisLabel v2 = BasisLabel::from_string("10");
    const BasisLabel v3 = BasisLabel::from_string("11");

    const SparseState in1 = superpose(2, {{params.alpha0, v0}, {params.alpha1, v1}});
    const SparseState out1 = superpose(2, {{params.gamma0 * params.alpha0, v0},
                                           {params.gamma0 * params.alpha1, v1},
                                           {params.gamma1 * params.beta2, v2},
                                           {params.gamma1 * params.beta3, v3}});
    const SparseState in2 = init_basis(2, v2);
    const std::complex<double> phase = std::polar(1.0, params.theta);
    const SparseState out2 = superpose(2, {{phase, v2}});

    TransitionSpec spec;
    spec.num_qubits = 2;
    spec.pairs = {{in1, out1}, {in2, out2}};
    return spec;
}

TransitionSpec cbs_nogo_instance() {
    // Two 4-site D1Q2 configurations, written as equal superpositions of
    // |site>|pattern at site>. The per-site patterns are streamed through
    // the classical reference so the transcription cannot drift from it.
    const std::vector<std::uint32_t> config1 = {0b00, 0b11, 0b10, 0b10};
    const std::vector<std::uint32_t> config2 = {0b01, 0b01, 0b00, 0b11};

    const LatticeDescriptor d1q2 = build_descriptor("D1Q2");
    auto encode = [&](const std::vector<std::uint32_t>& patterns) {
        std::vector<std::pair<std::complex<double>, BasisLabel>> terms;
        for (std::size_t site = 0; site < patterns.size(); ++site) {
            const std::uint64_t index =
                (static_cast<std::uint64_t>(site) << 2) | patterns[site];
            terms.push_back({{1.0, 0.0}, BasisLabel::from_index(4, index)});
        }
        return superpose(4, terms);
    };
    auto streamed = [&](const std::vector<std::uint32_t>& patterns) {
        OccupancyField field(d1q2, {static_cast<int>(patterns.size())});
        for (std::size_t site = 0; site < patterns.size(); ++site)
            field.set_local_pattern(site, patterns[site]);
        const OccupancyField next = stream_classical(field);
        std::vector<std::uint32_t> out(patterns.size());
        for (std::size_t site = 0; site < patterns.size(); ++site)
            out[site] = next.local_pattern(site);
        return out;
    };

    TransitionSpec spec;
    spec.num_qubits = 4;
    spec.pairs = {{encode(config1), encode(streamed(config1))},
                  {encode(config2), encode(streamed(config2))}};
    return spec;
}

} // namespace qlbm
