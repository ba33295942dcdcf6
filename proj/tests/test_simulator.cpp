#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "qlbm/errors.hpp"
#include "qlbm/simulator.hpp"

using namespace qlbm;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

WindowBits random_window(const VicinityLayout& layout, std::mt19937_64& rng) {
    WindowBits bits(layout.num_qubits());
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
    return bits;
}

} // namespace

TEST_CASE("encode_window follows the layout bijection") {
    const VicinityLayout trivial = enumerate_vicinity(build_descriptor("D2Q4"), 0);
    const SparseState basis =
        encode_window(trivial, window_from_entries(trivial, {{{0, 0}, 1}, {{0, 0}, 2}}));
    CHECK(basis.amplitude(BasisLabel::from_string("0110")) == std::complex<double>{1.0, 0.0});

    const VicinityLayout layout = enumerate_vicinity(build_descriptor("D2Q4"), 1);
    const SparseState empty = encode_window(layout, WindowBits(20, 0));
    CHECK(empty.amplitude(BasisLabel(20)) == std::complex<double>{1.0, 0.0});

    // Focal 1010 on the 20-qubit window: bits 0 and 2 only.
    const SparseState focal =
        encode_window(layout, window_from_entries(layout, {{{0, 0}, 0}, {{0, 0}, 2}}));
    BasisLabel expected(20);
    expected.set(0, true);
    expected.set(2, true);
    CHECK(focal.amplitude(expected) == std::complex<double>{1.0, 0.0});

    CHECK_THROWS_AS(encode_window(layout, WindowBits(19, 0)), std::invalid_argument);
    // Entries outside the vicinity are rejected, not ignored.
    CHECK_THROWS_AS(window_from_entries(layout, {{{2, 0}, 0}}), std::out_of_range);
}

TEST_CASE("a lone focal pair collides away and streams out") {
    const VicinityLayout layout = enumerate_vicinity(build_descriptor("D2Q4"), 1);
    RunConfig config;
    config.lattice = "D2Q4";
    config.extent = 1;
    config.collision = {{0.0, 0.0}, {1.0, 0.0}};
    config.windows = {{1.0, window_from_entries(layout, {{{0, 0}, 0}, {{0, 0}, 2}})}};

    const RunResult result = run(config);
    CHECK(result.focal.probs.size() == 1);
    CHECK(result.focal.probability(0b0000) == doctest::Approx(1.0));
    CHECK(result.peak_entries == 1);
    CHECK(result.merges == 0);
}

TEST_CASE("identity collision keeps any basis window a basis state") {
    std::mt19937_64 rng(51);
    const VicinityLayout layout = enumerate_vicinity(build_descriptor("D2Q4"), 2);
    RunConfig config;
    config.lattice = "D2Q4";
    config.extent = 2;
    config.collision = {{1.0, 0.0}, {0.0, 0.0}};
    config.windows = {{1.0, random_window(layout, rng)}};
    const RunResult result = run(config);
    CHECK(result.final_state().entry_count() == 1);
    CHECK(std::abs(result.final_state().norm() - 1.0) <= 1e-10);
}

TEST_CASE("D1Q2 windows evolve exactly like classical streaming") {
    std::mt19937_64 rng(53);
    for (int nt = 1; nt <= 3; ++nt) {
        const VicinityLayout layout = enumerate_vicinity(build_descriptor("D1Q2"), nt);
        for (int trial = 0; trial < 25; ++trial) {
            RunConfig config;
            config.lattice = "D1Q2";
            config.extent = nt;
            config.collision = {{kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}}; // has no class to act on
            config.windows = {{1.0, random_window(layout, rng)}};
            const RunResult quantum = run(config);
            CHECK(quantum.final_state().entry_count() == 1);

            // Focal pattern after nt pull steps comes from offset -nt*e_j.
            std::uint32_t expected = 0;
            expected = pattern_with_bit(expected, 2, 0,
                                        config.windows[0].bits[layout.qubit({-nt}, 0)] != 0);
            expected = pattern_with_bit(expected, 2, 1,
                                        config.windows[0].bits[layout.qubit({nt}, 1)] != 0);
            CHECK(quantum.focal.probability(expected) == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("ensemble oracle branching matches the collision weights") {
    const VicinityLayout layout = enumerate_vicinity(build_descriptor("D2Q4"), 1);
    const WindowBits focal_pair = window_from_entries(layout, {{{0, 0}, 0}, {{0, 0}, 2}});

    RunConfig config;
    config.lattice = "D2Q4";
    config.extent = 1;
    config.windows = {{1.0, focal_pair}};

    SUBCASE("identity collision: one branch") {
        config.collision = {{1.0, 0.0}, {0.0, 0.0}};
        const OracleResult oracle = classical_ensemble_oracle(config);
        CHECK(oracle.branch_count == 1);
        CHECK(oracle.branching_events == 0);
    }
    SUBCASE("balanced collision: two branches with weight 1/2") {
        config.collision = {{kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}};
        const OracleResult oracle = classical_ensemble_oracle(config);
        CHECK(oracle.branch_count == 2);
        CHECK(oracle.branching_events == 1);
        // Both collided patterns stream away from the focal site.
        CHECK(oracle.focal.probability(0b0000) == doctest::Approx(1.0));
    }
    SUBCASE("swap collision: deterministic single branch") {
        config.collision = {{0.0, 0.0}, {1.0, 0.0}};
        const OracleResult oracle = classical_ensemble_oracle(config);
        CHECK(oracle.branch_count == 1);
        CHECK(oracle.branching_events == 0);
    }
}

TEST_CASE("branch weights land in the focal distribution") {
    // Extent 1, stream-then-collide: the window streams into focal 1010,
    // then the focal collision branches, leaving both outcomes visible.
    const VicinityLayout layout = enumerate_vicinity(build_descriptor("D2Q4"), 1);
    RunConfig config;
    config.lattice = "D2Q4";
    config.extent = 1;
    config.order = StepOrder::StreamThenCollide;
    config.collision = {{0.6, 0.0}, {0.8, 0.0}};
    config.windows = {{1.0, window_from_entries(layout, {{{-1, 0}, 0}, {{1, 0}, 2}})}};

    const RunResult quantum = run(config);
    CHECK(quantum.focal.probability(0b1010) == doctest::Approx(0.36));
    CHECK(quantum.focal.probability(0b0101) == doctest::Approx(0.64));

    const OracleResult oracle = classical_ensemble_oracle(config);
    CHECK(oracle.focal.probability(0b1010) == doctest::Approx(0.36));
    CHECK(oracle.focal.probability(0b0101) == doctest::Approx(0.64));

    const ComparisonReport report = compare(config);
    CHECK(report.pass);
    CHECK(report.tv_distance <= 1e-12);
    CHECK(report.branching_events == 1);
    CHECK_FALSE(report.interference_detected);
}

TEST_CASE("comparison is exact for deterministic collisions") {
    std::mt19937_64 rng(59);
    for (double alpha : {1.0, 0.0}) {
        const VicinityLayout layout = enumerate_vicinity(build_descriptor("D2Q4"), 2);
        RunConfig config;
        config.lattice = "D2Q4";
        config.extent = 2;
        config.collision = {{alpha, 0.0}, {alpha == 0.0 ? 1.0 : 0.0, 0.0}};
        config.windows = {{1.0, random_window(layout, rng)}};
        const ComparisonReport report = compare(config);
        CHECK(report.tv_distance == 0.0);
        CHECK(report.pass);
    }
}

TEST_CASE("entry count is bounded by the branching events") {
    std::mt19937_64 rng(61);
    const VicinityLayout layout = enumerate_vicinity(build_descriptor("D2Q4"), 2);
    for (int trial = 0; trial < 10; ++trial) {
        RunConfig config;
        config.lattice = "D2Q4";
        config.extent = 2;
        config.collision = {{kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}};
        config.windows = {{1.0, random_window(layout, rng)}};
        const RunResult quantum = run(config);
        const OracleResult oracle = classical_ensemble_oracle(config);
        CHECK(quantum.final_state().entry_count() <=
              (std::size_t{1} << oracle.branching_events));
        CHECK(std::abs(quantum.final_state().norm() - 1.0) <= 1e-10);
    }
}

TEST_CASE("weighted window ensembles mix focal distributions") {
    const VicinityLayout layout = enumerate_vicinity(build_descriptor("D2Q4"), 0);
    RunConfig config;
    config.lattice = "D2Q4";
    config.extent = 0;
    config.windows = {{0.25, window_from_entries(layout, {{{0, 0}, 0}})},
                      {0.75, window_from_entries(layout, {{{0, 0}, 1}})}};
    const RunResult result = run(config);
    CHECK(result.focal.probability(0b1000) == doctest::Approx(0.25));
    CHECK(result.focal.probability(0b0100) == doctest::Approx(0.75));
    CHECK(result.focal.total() == doctest::Approx(1.0));

    config.windows[0].weight = 0.5; // sums to 1.25 now
    CHECK_THROWS_AS(run(config), std::invalid_argument);
}

TEST_CASE("sparse entry cap raises a budget error") {
    const VicinityLayout layout = enumerate_vicinity(build_descriptor("D2Q4"), 2);
    WindowBits window(layout.num_qubits(), 0);
    // Plant the class pattern on several offsets to force branching.
    for (const std::vector<int>& offset :
         {std::vector<int>{0, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
        window[layout.qubit(offset, 0)] = 1;
        window[layout.qubit(offset, 2)] = 1;
    }
    RunConfig config;
    config.lattice = "D2Q4";
    config.extent = 2;
    config.collision = {{kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}};
    config.windows = {{1.0, window}};
    config.entry_cap = 4;
    CHECK_THROWS_AS(run(config), BudgetError);
}

TEST_CASE("oracle branch explosion raises a budget error") {
    const VicinityLayout layout = enumerate_vicinity(build_descriptor("D2Q4"), 2);
    WindowBits window(layout.num_qubits(), 0);
    for (const std::vector<int>& offset :
         {std::vector<int>{0, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
        window[layout.qubit(offset, 0)] = 1;
        window[layout.qubit(offset, 2)] = 1;
    }
    RunConfig config;
    config.lattice = "D2Q4";
    config.extent = 2;
    config.collision = {{kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}};
    config.windows = {{1.0, window}};
    config.max_branch_events = 2;
    CHECK_THROWS_AS(classical_ensemble_oracle(config), BudgetError);
}

TEST_CASE("full grid: the two 4-site settings and their periodicity") {
    const LatticeDescriptor d1q2 = build_descriptor("D1Q2");
    const std::vector<std::vector<std::uint32_t>> settings = {{0b00, 0b11, 0b10, 0b10},
                                                              {0b01, 0b01, 0b00, 0b11}};
    const std::vector<std::vector<std::uint32_t>> streamed = {{0b11, 0b00, 0b10, 0b10},
                                                              {0b11, 0b00, 0b01, 0b01}};
    for (std::size_t k = 0; k < settings.size(); ++k) {
        OccupancyField initial(d1q2, {4});
        for (std::size_t s = 0; s < 4; ++s) initial.set_local_pattern(s, settings[k][s]);

        FullGridConfig config;
        config.lattice = "D1Q2";
        config.extents = {4};
        config.steps = 8;
        const FullGridResult result = full_grid_run(config, initial);
        REQUIRE(result.trace.size() == 9);
        for (std::size_t s = 0; s < 4; ++s)
            CHECK(result.trace[1]->local_pattern(s) == streamed[k][s]);
        CHECK(*result.trace[8] == initial);   // line length 4 divides 8
        CHECK(*result.trace[4] == initial);   // exact period
    }
}

TEST_CASE("full grid with swap-class collision tracks the classical rule") {
    std::mt19937_64 rng(67);
    const LatticeDescriptor d2q4 = build_descriptor("D2Q4");
    OccupancyField initial(d2q4, {2, 2});
    for (std::size_t s = 0; s < initial.num_sites(); ++s)
        for (int j = 0; j < 4; ++j) initial.set(s, j, rng() & 1);

    FullGridConfig config;
    config.lattice = "D2Q4";
    config.extents = {2, 2};
    config.collision = {{0.0, 0.0}, {1.0, 0.0}};
    config.steps = 4;
    const FullGridResult result = full_grid_run(config, initial);

    OccupancyField reference = initial;
    for (int step = 1; step <= 4; ++step) {
        reference = stream_classical(collide_classical(reference, CollisionRule::SwapClass));
        REQUIRE(result.trace[static_cast<std::size_t>(step)].has_value());
        CHECK(*result.trace[static_cast<std::size_t>(step)] == reference);
    }
}

TEST_CASE("full grid identity-collision period is the lcm of line lengths") {
    const LatticeDescriptor d2q4 = build_descriptor("D2Q4");
    OccupancyField initial(d2q4, {3, 2});
    initial.set_local_pattern(0, 0b1100);
    initial.set_local_pattern(4, 0b0011);

    FullGridConfig config;
    config.lattice = "D2Q4";
    config.extents = {3, 2};
    config.steps = 6; // lcm(3, 2)
    const FullGridResult result = full_grid_run(config, initial);
    CHECK(*result.trace[6] == initial);
    bool returned_early = false;
    for (int step = 1; step < 6; ++step)
        returned_early = returned_early || *result.trace[static_cast<std::size_t>(step)] == initial;
    CHECK_FALSE(returned_early);
}

TEST_CASE("full grid register cap") {
    FullGridConfig config;
    config.lattice = "D2Q4";
    config.extents = {3, 3}; // 36 qubits
    OccupancyField initial(build_descriptor("D2Q4"), {3, 3});
    CHECK_THROWS_AS(full_grid_run(config, initial), BudgetError);
}

TEST_CASE("superposed full-grid steps mark the trace entries") {
    OccupancyField initial(build_descriptor("D2Q4"), {2, 2});
    initial.set_local_pattern(0, 0b1010);

    FullGridConfig config;
    config.lattice = "D2Q4";
    config.extents = {2, 2};
    config.collision = {{kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}};
    config.steps = 1;
    const FullGridResult result = full_grid_run(config, initial);
    CHECK(result.trace[0].has_value());
    CHECK_FALSE(result.trace[1].has_value());
    CHECK(result.final_state.entry_count() == 2);
    CHECK(std::abs(result.final_state.norm() - 1.0) <= 1e-12);
}
