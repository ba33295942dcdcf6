#include "qlbm/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qlbm/errors.hpp"

namespace qlbm {

namespace {

constexpr std::uint32_t kClassPatternA = 0b1010;
constexpr std::uint32_t kClassPatternB = 0b0101;

struct Prepared {
    LatticeDescriptor descriptor;
    VicinityLayout layout;
    std::vector<Circuit> collision;  // index t-1
    std::vector<Circuit> streaming;  // index t-1
    std::vector<int> quad_dirs;      // empty when collision is trivial
};

Prepared prepare(const RunConfig& config) {
    if (config.extent < 0) throw std::invalid_argument("extent must be nonnegative");
    config.collision.validate();
    if (config.windows.empty()) throw std::invalid_argument("run needs at least one window");
    double weight_sum = 0.0;
    for (const auto& member : config.windows) {
        if (member.weight < 0.0) throw std::invalid_argument("window weights must be nonnegative");
        weight_sum += member.weight;
    }
    if (std::abs(weight_sum - 1.0) > 1e-9)
        throw std::invalid_argument("window weights must sum to 1");

    LatticeDescriptor descriptor = build_descriptor(config.lattice);
    Prepared prep{descriptor, enumerate_vicinity(descriptor, config.extent), {}, {}, {}};
    if (descriptor.dimension == 2) prep.quad_dirs = descriptor.moving_directions();
    for (const auto& member : config.windows)
        if (member.bits.size() != prep.layout.num_qubits())
            throw std::invalid_argument("window bit count does not match the vicinity layout");
    for (int t = 1; t <= config.extent; ++t) {
        prep.collision.push_back(collision_total_circuit(prep.layout, config.collision, t));
        prep.streaming.push_back(streaming_step(prep.layout, t).circuit);
    }
    return prep;
}

std::uint32_t focal_pattern_of_label(const BasisLabel& label, int num_directions) {
    std::uint32_t p = 0;
    for (int j = 0; j < num_directions; ++j)
        p = pattern_with_bit(p, num_directions, j, label.get(static_cast<std::uint32_t>(j)));
    return p;
}

} // namespace

WindowBits window_from_entries(const VicinityLayout& layout,
                               const std::vector<std::pair<std::vector<int>, int>>& occupied) {
    WindowBits bits(layout.num_qubits(), 0);
    for (const auto& [offset, direction] : occupied)
        bits.at(layout.qubit(offset, direction)) = 1;
    return bits;
}

SparseState encode_window(const VicinityLayout& layout, const WindowBits& window) {
    if (window.size() != layout.num_qubits())
        throw std::invalid_argument("window must supply one bit per layout qubit");
    BasisLabel label(layout.num_qubits());
    for (std::uint32_t q = 0; q < layout.num_qubits(); ++q)
        if (window[q]) label.set(q, true);
    return init_basis(layout.num_qubits(), label);
}

double FocalDistribution::total() const {
    double s = 0.0;
    for (const auto& [pattern, p] : probs) s += p;
    return s;
}

double FocalDistribution::probability(std::uint32_t pattern) const {
    auto it = probs.find(pattern);
    return it == probs.end() ? 0.0 : it->second;
}

RunResult run(const RunConfig& config) {
    const Prepared prep = prepare(config);
    const int m = prep.descriptor.num_directions();

    RunResult result;
    result.focal.num_directions = m;
    for (const auto& member : config.windows) {
        SparseState state = encode_window(prep.layout, member.bits);
        for (int t = 1; t <= config.extent; ++t) {
            const Circuit& first =
                config.order == StepOrder::CollideThenStream ? prep.collision[t - 1]
                                                             : prep.streaming[t - 1];
            const Circuit& second =
                config.order == StepOrder::CollideThenStream ? prep.streaming[t - 1]
                                                             : prep.collision[t - 1];
            for (const Circuit* circuit : {&first, &second}) {
                for (const Gate& gate : circuit->gates) {
                    result.merges += state.apply(gate);
                    if (state.entry_count() > config.entry_cap)
                        throw BudgetError("sparse entry count exceeded cap of " +
                                          std::to_string(config.entry_cap));
                    result.peak_entries = std::max(result.peak_entries, state.entry_count());
                }
            }
        }
        result.peak_entries = std::max(result.peak_entries, state.entry_count());
        for (const auto& [label, amp] : state.entries())
            result.focal.probs[focal_pattern_of_label(label, m)] +=
                member.weight * std::norm(amp);
        result.member_states.push_back(std::move(state));
    }
    return result;
}

OracleResult classical_ensemble_oracle(const RunConfig& config) {
    const Prepared prep = prepare(config);
    const auto& layout = prep.layout;
    const auto& descriptor = prep.descriptor;
    const int m = descriptor.num_directions();
    const double keep_weight = std::norm(config.collision.alpha);
    const double swap_weight = std::norm(config.collision.beta);

    struct Branch {
        double weight;
        WindowBits bits;
    };
    std::vector<Branch> branches;
    for (const auto& member : config.windows)
        if (member.weight > 0.0) branches.push_back({member.weight, member.bits});
    int branching_events = 0;

    auto flip_quad = [&](WindowBits& bits, const std::vector<int>& offset) {
        for (int dir : prep.quad_dirs) bits[layout.qubit(offset, dir)] ^= 1;
    };
    auto quad_is_class = [&](const WindowBits& bits, const std::vector<int>& offset) {
        std::uint32_t p = 0;
        for (std::size_t i = 0; i < prep.quad_dirs.size(); ++i)
            p = pattern_with_bit(p, 4, static_cast<int>(i),
                                 bits[layout.qubit(offset, prep.quad_dirs[i])] != 0);
        return p == kClassPatternA || p == kClassPatternB;
    };

    auto collide_phase = [&](int radius) {
        if (prep.quad_dirs.size() != 4) return;
        const std::size_t retained = layout.offsets_within(radius);
        for (std::size_t rank = 0; rank < retained; ++rank) {
            const auto& offset = layout.offsets()[rank];
            bool any_split = false;
            std::size_t existing = branches.size();
            for (std::size_t b = 0; b < existing; ++b) {
                if (!quad_is_class(branches[b].bits, offset)) continue;
                if (swap_weight == 0.0) continue; // keep as is
                if (keep_weight == 0.0) {
                    flip_quad(branches[b].bits, offset);
                    continue;
                }
                any_split = true;
                Branch swapped{branches[b].weight * swap_weight, branches[b].bits};
                flip_quad(swapped.bits, offset);
                branches[b].weight *= keep_weight;
                branches.push_back(std::move(swapped));
            }
            if (any_split && ++branching_events > config.max_branch_events)
                throw BudgetError("classical ensemble exceeded " +
                                  std::to_string(config.max_branch_events) +
                                  " branching events");
        }
    };

    auto stream_phase = [&](int radius) {
        const std::size_t retained = layout.offsets_within(radius);
        for (auto& branch : branches) {
            WindowBits next(branch.bits.size(), 0);
            for (std::size_t rank = 0; rank < retained; ++rank) {
                const auto& offset = layout.offsets()[rank];
                for (int j = 0; j < m; ++j) {
                    if (descriptor.is_rest(j)) {
                        next[layout.qubit(offset, j)] = branch.bits[layout.qubit(offset, j)];
                        continue;
                    }
                    std::vector<int> source = offset;
                    const auto& e = descriptor.velocities[static_cast<std::size_t>(j)];
                    for (std::size_t a = 0; a < source.size(); ++a) source[a] -= e[a];
                    next[layout.qubit(offset, j)] = branch.bits[layout.qubit(source, j)];
                }
            }
            branch.bits = std::move(next);
        }
    };

    for (int t = 1; t <= config.extent; ++t) {
        const int radius = config.extent - t;
        if (config.order == StepOrder::CollideThenStream) {
            collide_phase(radius);
            stream_phase(radius);
        } else {
            stream_phase(radius);
            collide_phase(radius);
        }
    }

    OracleResult result;
    result.branching_events = branching_events;
    result.branch_count = branches.size();
    result.focal.num_directions = m;
    const std::vector<int> origin(static_cast<std::size_t>(descriptor.dimension), 0);
    for (const auto& branch : branches) {
        std::uint32_t p = 0;
        for (int j = 0; j < m; ++j)
            p = pattern_with_bit(p, m, j, branch.bits[layout.qubit(origin, j)] != 0);
        result.focal.probs[p] += branch.weight;
    }
    return result;
}

ComparisonReport compare(const RunConfig& config, double tol) {
    const RunResult quantum = run(config);
    const OracleResult classical = classical_ensemble_oracle(config);

    ComparisonReport report;
    report.tolerance = tol;
    report.num_directions = quantum.focal.num_directions;
    report.interference_detected = quantum.merges > 0;
    report.branching_events = classical.branching_events;
    for (const auto& [pattern, p] : quantum.focal.probs) report.per_pattern_delta[pattern] += p;
    for (const auto& [pattern, p] : classical.focal.probs)
        report.per_pattern_delta[pattern] -= p;
    double l1 = 0.0;
    for (const auto& [pattern, d] : report.per_pattern_delta) l1 += std::abs(d);
    report.tv_distance = 0.5 * l1;
    report.pass = report.tv_distance <= tol;
    return report;
}

FullGridResult full_grid_run(const FullGridConfig& config, const OccupancyField& initial) {
    config.collision.validate();
    if (config.steps < 0) throw std::invalid_argument("steps must be nonnegative");
    const LatticeDescriptor descriptor = build_descriptor(config.lattice);
    if (initial.descriptor().name != descriptor.name || initial.extents() != config.extents)
        throw std::invalid_argument("initial field does not match the grid config");
    const int m = descriptor.num_directions();
    const std::size_t total_qubits = initial.num_sites() * static_cast<std::size_t>(m);
    if (total_qubits > kFullGridQubitCap)
        throw BudgetError("full grid needs " + std::to_string(total_qubits) +
                          " qubits, cap is " + std::to_string(kFullGridQubitCap));
    const auto width = static_cast<std::uint32_t>(total_qubits);

    // Streaming: value of (x, j) moves to (x + e_j, j).
    std::vector<std::uint32_t> perm(width);
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::size_t site = 0; site < initial.num_sites(); ++site)
        for (int j = 0; j < m; ++j) {
            if (descriptor.is_rest(j)) continue;
            const std::size_t dest =
                initial.shifted_site(site, descriptor.velocities[static_cast<std::size_t>(j)]);
            perm[site * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] =
                static_cast<std::uint32_t>(dest * static_cast<std::size_t>(m) +
                                           static_cast<std::size_t>(j));
        }
    Circuit streaming;
    streaming.num_qubits = width;
    streaming.append(Gate::permute(perm));

    Circuit collision;
    collision.num_qubits = width;
    if (descriptor.dimension == 2) {
        const auto dirs = descriptor.moving_directions();
        for (std::size_t site = 0; site < initial.num_sites(); ++site) {
            const auto base = static_cast<std::uint32_t>(site * static_cast<std::size_t>(m));
            const std::array<std::uint32_t, 4> quad = {
                base + static_cast<std::uint32_t>(dirs[0]),
                base + static_cast<std::uint32_t>(dirs[1]),
                base + static_cast<std::uint32_t>(dirs[2]),
                base + static_cast<std::uint32_t>(dirs[3])};
            collision.append(collision_local_circuit(config.collision, quad));
        }
        collision.num_qubits = width;
    }

    auto decode = [&](const SparseState& state) -> std::optional<OccupancyField> {
        if (state.entry_count() != 1) return std::nullopt;
        const BasisLabel& label = state.entries().begin()->first;
        OccupancyField field(descriptor, config.extents);
        for (std::uint32_t q = 0; q < width; ++q)
            field.set(q / static_cast<std::uint32_t>(m),
                      static_cast<int>(q % static_cast<std::uint32_t>(m)), label.get(q));
        return field;
    };

    BasisLabel label(width);
    for (std::size_t site = 0; site < initial.num_sites(); ++site)
        for (int j = 0; j < m; ++j)
            if (initial.get(site, j))
                label.set(static_cast<std::uint32_t>(site * static_cast<std::size_t>(m) +
                                                     static_cast<std::size_t>(j)),
                          true);
    SparseState state = init_basis(width, label);

    FullGridResult result;
    result.trace.push_back(decode(state));
    for (int step = 0; step < config.steps; ++step) {
        if (config.order == StepOrder::CollideThenStream) {
            state.apply(collision);
            state.apply(streaming);
        } else {
            state.apply(streaming);
            state.apply(collision);
        }
        result.trace.push_back(decode(state));
    }
    result.final_state = std::move(state);
    return result;
}

} // namespace qlbm
