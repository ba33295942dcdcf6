#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlbm/lattice.hpp"
#include "qlbm/sparse_state.hpp"
#include "qlbm/spacetime.hpp"

namespace qlbm {

/// Order of the two phases inside one time step. The default collides
/// first; both orders are supported and the oracle mirrors whichever is
/// configured.
enum class StepOrder { CollideThenStream, StreamThenCollide };

/// Occupancy bits of one space-time window, indexed like the layout's
/// qubits (offset rank * m + direction).
using WindowBits = std::vector<std::uint8_t>;

/// Builds window bits from occupied (offset, direction) entries. Offsets
/// outside the vicinity are rejected rather than ignored.
WindowBits window_from_entries(const VicinityLayout& layout,
                               const std::vector<std::pair<std::vector<int>, int>>& occupied);

/// Single basis state whose bits follow the layout bijection. The window
/// must supply one bit per layout qubit.
SparseState encode_window(const VicinityLayout& layout, const WindowBits& window);

struct WeightedWindow {
    double weight = 1.0;
    WindowBits bits;
};

struct RunConfig {
    std::string lattice = "D2Q4";
    int extent = 1; // time steps to run == vicinity radius of the window
    CollisionParams collision;
    StepOrder order = StepOrder::CollideThenStream;
    std::vector<WeightedWindow> windows; // ensemble; weights must sum to 1
    std::size_t entry_cap = std::size_t{1} << 22;
    int max_branch_events = 20;
};

/// Probability of each m-bit focal velocity pattern, read exactly from the
/// final amplitudes (no sampling).
struct FocalDistribution {
    int num_directions = 0;
    std::map<std::uint32_t, double> probs;

    double total() const;
    double probability(std::uint32_t pattern) const;
};

struct RunResult {
    std::vector<SparseState> member_states; // one per ensemble member
    FocalDistribution focal;                // weighted mixture
    std::size_t peak_entries = 0;
    std::size_t merges = 0; // amplitude merges seen; nonzero means interference

    const SparseState& final_state() const { return member_states.front(); }
};

/// Encodes each window, alternates collision and streaming circuits for
/// `extent` steps, and reads out the focal marginal. Throws BudgetError
/// when the sparse entry count exceeds the configured cap.
RunResult run(const RunConfig& config);

struct OracleResult {
    FocalDistribution focal;
    int branching_events = 0;
    std::size_t branch_count = 0;
};

/// Brute-force classical verifier: evolves windows bitwise, branching with
/// weights |alpha|^2 / |beta|^2 wherever a collision hits a two-member
/// class pattern. Throws BudgetError past `max_branch_events` events.
OracleResult classical_ensemble_oracle(const RunConfig& config);

struct ComparisonReport {
    double tv_distance = 0.0;
    int num_directions = 0;
    std::map<std::uint32_t, double> per_pattern_delta; // quantum minus classical
    bool pass = false;                                 // tv_distance <= tolerance
    double tolerance = 0.0;
    /// Quantum branches re-converged on one basis state; the classical
    /// ensemble is not expected to match in this regime.
    bool interference_detected = false;
    int branching_events = 0;
};

inline constexpr double kComparisonTol = 1e-9;

ComparisonReport compare(const RunConfig& config, double tol = kComparisonTol);

struct FullGridConfig {
    std::string lattice = "D1Q2";
    std::vector<int> extents;
    CollisionParams collision;
    int steps = 1;
    StepOrder order = StepOrder::CollideThenStream;
};

/// Per-step snapshots of a whole-grid run. A snapshot is present when the
/// state is a single basis label (always true for deterministic collision).
struct FullGridResult {
    std::vector<std::optional<OccupancyField>> trace; // trace[0] = initial
    SparseState final_state;
};

inline constexpr std::size_t kFullGridQubitCap = 24;

/// Simulates the entire periodic grid as one register: streaming is a
/// global permutation, collision acts at every site. Requires
/// m * num_sites <= kFullGridQubitCap.
FullGridResult full_grid_run(const FullGridConfig& config, const OccupancyField& initial);

} // namespace qlbm
