#include "qlbm/sparse_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qlbm {

std::complex<double> SparseState::amplitude(const BasisLabel& label) const {
    auto it = amps_.find(label);
    return it == amps_.end() ? std::complex<double>{0.0, 0.0} : it->second;
}

void SparseState::set_amplitude(const BasisLabel& label, std::complex<double> value) {
    if (label.width() != num_qubits_)
        throw std::invalid_argument("label width does not match register");
    if (std::abs(value) < kPruneThreshold)
        amps_.erase(label);
    else
        amps_[label] = value;
}

double SparseState::norm() const {
    double sum = 0.0;
    for (const auto& [label, amp] : amps_) sum += std::norm(amp);
    return std::sqrt(sum);
}

std::vector<std::pair<BasisLabel, std::complex<double>>> SparseState::sorted_entries() const {
    std::vector<std::pair<BasisLabel, std::complex<double>>> out(amps_.begin(), amps_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::size_t SparseState::apply(const Gate& gate) {
    if (gate.min_register_width() > num_qubits_)
        throw std::out_of_range("gate operand outside register");
    if (gate.kind == GateKind::Permute && gate.permutation.size() != num_qubits_)
        throw std::invalid_argument("permute gate must cover the full register");

    AmplitudeMap next;
    next.reserve(amps_.size() * (gate.kind == GateKind::McRot ? 2 : 1));
    std::size_t merges = 0;
    auto accumulate = [&](BasisLabel&& label, std::complex<double> amp) {
        auto [it, inserted] = next.try_emplace(std::move(label), amp);
        if (!inserted) {
            it->second += amp;
            ++merges;
        }
    };

    switch (gate.kind) {
    case GateKind::X:
        for (const auto& [label, amp] : amps_) {
            BasisLabel moved = label;
            moved.flip(gate.qubits[0]);
            accumulate(std::move(moved), amp);
        }
        break;
    case GateKind::Swap:
        for (const auto& [label, amp] : amps_) {
            BasisLabel moved = label;
            const bool a = label.get(gate.qubits[0]);
            moved.set(gate.qubits[0], label.get(gate.qubits[1]));
            moved.set(gate.qubits[1], a);
            accumulate(std::move(moved), amp);
        }
        break;
    case GateKind::Cnot:
        for (const auto& [label, amp] : amps_) {
            BasisLabel moved = label;
            if (label.get(gate.qubits[0])) moved.flip(gate.qubits[1]);
            accumulate(std::move(moved), amp);
        }
        break;
    case GateKind::Permute:
        for (const auto& [label, amp] : amps_) {
            BasisLabel moved = label;
            for (std::uint32_t q = 0; q < num_qubits_; ++q)
                if (gate.permutation[q] != q) moved.set(gate.permutation[q], label.get(q));
            accumulate(std::move(moved), amp);
        }
        break;
    case GateKind::McRot:
        for (const auto& [label, amp] : amps_) {
            bool active = true;
            for (std::size_t i = 0; i + 1 < gate.qubits.size(); ++i)
                if (!label.get(gate.qubits[i])) {
                    active = false;
                    break;
                }
            if (!active) {
                accumulate(BasisLabel(label), amp);
                continue;
            }
            const std::uint32_t target = gate.target();
            BasisLabel lo = label, hi = label;
            lo.set(target, false);
            hi.set(target, true);
            if (!label.get(target)) {
                accumulate(std::move(lo), gate.alpha * amp);
                accumulate(std::move(hi), gate.beta * amp);
            } else {
                accumulate(std::move(lo), -std::conj(gate.beta) * amp);
                accumulate(std::move(hi), std::conj(gate.alpha) * amp);
            }
        }
        // The rotation is the only gate that can produce (near-)zero and
        // merged amplitudes; prune them here.
        for (auto it = next.begin(); it != next.end();)
            it = std::abs(it->second) < kPruneThreshold ? next.erase(it) : std::next(it);
        break;
    }

    amps_ = std::move(next);
    return merges;
}

std::size_t SparseState::apply(const Circuit& circuit) {
    if (circuit.num_qubits != num_qubits_)
        throw std::invalid_argument("circuit register size does not match state");
    std::size_t merges = 0;
    for (const Gate& gate : circuit.gates) merges += apply(gate);
    return merges;
}

SparseState init_basis(std::uint32_t num_qubits, const BasisLabel& label) {
    if (label.width() != num_qubits)
        throw std::invalid_argument("label width does not match register");
    SparseState state(num_qubits);
    state.set_amplitude(label, {1.0, 0.0});
    return state;
}

SparseState superpose(std::uint32_t num_qubits,
                      const std::vector<std::pair<std::complex<double>, BasisLabel>>& terms) {
    if (terms.empty()) throw std::invalid_argument("superpose requires at least one term");
    SparseState state(num_qubits);
    std::unordered_map<BasisLabel, bool, BasisLabelHash> seen;
    double norm_sq = 0.0;
    for (const auto& [weight, label] : terms) {
        if (label.width() != num_qubits)
            throw std::invalid_argument("label width does not match register");
        if (!seen.emplace(label, true).second)
            throw std::invalid_argument("superpose labels must be distinct");
        norm_sq += std::norm(weight);
    }
    if (norm_sq == 0.0) throw std::invalid_argument("superpose weights must not all be zero");
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (const auto& [weight, label] : terms) {
        if (std::abs(weight) == 0.0) continue;
        state.set_amplitude(label, weight * scale);
    }
    return state;
}

std::complex<double> inner_product(const SparseState& a, const SparseState& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("inner product requires equal register sizes");
    const SparseState& small = a.entry_count() <= b.entry_count() ? a : b;
    const SparseState& large = a.entry_count() <= b.entry_count() ? b : a;
    const bool small_is_a = &small == &a;
    std::complex<double> sum{0.0, 0.0};
    for (const auto& [label, amp] : small.entries()) {
        const std::complex<double> other = large.amplitude(label);
        if (other == std::complex<double>{0.0, 0.0}) continue;
        sum += small_is_a ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return sum;
}

} // namespace qlbm
