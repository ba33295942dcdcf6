#include "qlbm/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace qlbm {

namespace {

void require_distinct(const std::vector<std::uint32_t>& qubits) {
    std::set<std::uint32_t> seen(qubits.begin(), qubits.end());
    if (seen.size() != qubits.size())
        throw std::invalid_argument("gate operands must be distinct qubits");
}

} // namespace

bool amplitude_pair_normalized(std::complex<double> alpha, std::complex<double> beta) {
    return std::abs(std::norm(alpha) + std::norm(beta) - 1.0) <= kAmplitudePairTol;
}

Gate Gate::x(std::uint32_t q) {
    Gate g;
    g.kind = GateKind::X;
    g.qubits = {q};
    return g;
}

Gate Gate::swap(std::uint32_t a, std::uint32_t b) {
    Gate g;
    g.kind = GateKind::Swap;
    g.qubits = {a, b};
    require_distinct(g.qubits);
    return g;
}

Gate Gate::cnot(std::uint32_t control, std::uint32_t target) {
    Gate g;
    g.kind = GateKind::Cnot;
    g.qubits = {control, target};
    require_distinct(g.qubits);
    return g;
}

Gate Gate::permute(std::vector<std::uint32_t> permutation) {
    Gate g;
    g.kind = GateKind::Permute;
    g.permutation = std::move(permutation);
    std::vector<std::uint32_t> sorted = g.permutation;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i)
            throw std::invalid_argument("permute gate requires a permutation of 0..n-1");
    return g;
}

Gate Gate::mc_rot(std::vector<std::uint32_t> controls, std::uint32_t target,
                  std::complex<double> alpha, std::complex<double> beta) {
    if (!amplitude_pair_normalized(alpha, beta))
        throw std::invalid_argument("mc_rot amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
    Gate g;
    g.kind = GateKind::McRot;
    g.qubits = std::move(controls);
    g.qubits.push_back(target);
    require_distinct(g.qubits);
    g.alpha = alpha;
    g.beta = beta;
    return g;
}

std::vector<std::uint32_t> Gate::qubits_touched() const {
    if (kind != GateKind::Permute) return qubits;
    std::vector<std::uint32_t> moved;
    for (std::uint32_t q = 0; q < permutation.size(); ++q)
        if (permutation[q] != q) moved.push_back(q);
    return moved;
}

std::uint32_t Gate::min_register_width() const {
    if (kind == GateKind::Permute) return static_cast<std::uint32_t>(permutation.size());
    std::uint32_t w = 0;
    for (std::uint32_t q : qubits) w = std::max(w, q + 1);
    return w;
}

void Circuit::append(Gate gate) {
    if (!layers.empty())
        throw std::logic_error("mixing annotated and unannotated gates");
    gates.push_back(std::move(gate));
}

void Circuit::append(Gate gate, std::int32_t layer) {
    if (layers.size() != gates.size())
        throw std::logic_error("mixing annotated and unannotated gates");
    gates.push_back(std::move(gate));
    layers.push_back(layer);
}

void Circuit::append(const Circuit& other) {
    const bool self_annotated = !gates.empty() && !layers.empty();
    const bool other_annotated = !other.gates.empty() && !other.layers.empty();
    if ((self_annotated || gates.empty()) && other_annotated) {
        std::int32_t base = 0;
        for (std::int32_t l : layers) base = std::max(base, l + 1);
        for (std::size_t i = 0; i < other.gates.size(); ++i) {
            gates.push_back(other.gates[i]);
            layers.push_back(base + other.layers[i]);
        }
    } else {
        if (!layers.empty() || !other.layers.empty())
            throw std::logic_error("mixing annotated and unannotated circuits");
        gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    }
}

std::size_t Circuit::count_kind(GateKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(), [&](const Gate& g) { return g.kind == kind; }));
}

int Circuit::depth() const {
    if (gates.empty()) return 0;
    if (layers.empty()) return static_cast<int>(gates.size());
    std::set<std::int32_t> distinct(layers.begin(), layers.end());
    return static_cast<int>(distinct.size());
}

bool Circuit::layers_are_disjoint() const {
    if (layers.empty()) return true;
    std::set<std::pair<std::int32_t, std::uint32_t>> used;
    for (std::size_t i = 0; i < gates.size(); ++i)
        for (std::uint32_t q : gates[i].qubits_touched())
            if (!used.insert({layers[i], q}).second) return false;
    return true;
}

void Circuit::validate() const {
    if (!layers.empty() && layers.size() != gates.size())
        throw std::invalid_argument("layer annotation size mismatch");
    for (const Gate& g : gates) {
        if (g.min_register_width() > num_qubits)
            throw std::out_of_range("gate operand outside register");
        if (g.kind == GateKind::Permute && g.permutation.size() != num_qubits)
            throw std::invalid_argument("permute gate must cover the full register");
    }
    if (!layers_are_disjoint())
        throw std::invalid_argument("gates within one layer must touch disjoint qubits");
}

} // namespace qlbm
