#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qlbm/sparse_state.hpp"

using namespace qlbm;
using Complex = std::complex<double>;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

SparseState four_term(const char* a, const char* b, const char* c, const char* d) {
    return superpose(4, {{{1.0, 0.0}, BasisLabel::from_string(a)},
                         {{1.0, 0.0}, BasisLabel::from_string(b)},
                         {{1.0, 0.0}, BasisLabel::from_string(c)},
                         {{1.0, 0.0}, BasisLabel::from_string(d)}});
}

} // namespace

TEST_CASE("basis labels read big-endian with qubit 0 leftmost") {
    const BasisLabel label = BasisLabel::from_string("1010");
    CHECK(label.get(0));
    CHECK_FALSE(label.get(1));
    CHECK(label.to_index() == 0b1010);
    CHECK(label.to_string() == "1010");
    CHECK(BasisLabel::from_index(4, 0b1010) == label);

    // Wide labels: 200 qubits, only qubit 131 set.
    BasisLabel wide(200);
    wide.set(131, true);
    CHECK(wide.get(131));
    CHECK_FALSE(wide.get(130));
    CHECK(wide.to_string().size() == 200);
    CHECK(wide.to_string()[131] == '1');
}

TEST_CASE("init_basis") {
    const SparseState s = init_basis(4, BasisLabel::from_string("1010"));
    CHECK(s.entry_count() == 1);
    CHECK(s.amplitude(BasisLabel::from_string("1010")) == Complex{1.0, 0.0});

    const SparseState zeros = init_basis(20, BasisLabel(20));
    CHECK(zeros.entry_count() == 1);
    CHECK(zeros.norm() == doctest::Approx(1.0));

    CHECK_THROWS_AS(init_basis(4, BasisLabel::from_string("10100")), std::invalid_argument);
}

TEST_CASE("superpose normalizes and validates") {
    const SparseState cat = superpose(4, {{{1.0, 0.0}, BasisLabel::from_string("0000")},
                                          {{1.0, 0.0}, BasisLabel::from_string("1111")}});
    CHECK(cat.amplitude(BasisLabel::from_string("0000")).real() == doctest::Approx(kInvSqrt2));
    CHECK(cat.amplitude(BasisLabel::from_string("1111")).real() == doctest::Approx(kInvSqrt2));

    // The four equal-weight terms come out at amplitude 1/2 each.
    const SparseState psi1 = four_term("0000", "0111", "1010", "1110");
    CHECK(psi1.amplitude(BasisLabel::from_string("0111")).real() == doctest::Approx(0.5));
    CHECK(psi1.norm() == doctest::Approx(1.0));

    // Zero-weight terms are discarded by normalization.
    const SparseState single = superpose(2, {{{2.0, 0.0}, BasisLabel::from_string("01")},
                                             {{0.0, 0.0}, BasisLabel::from_string("10")}});
    CHECK(single.entry_count() == 1);
    CHECK(single.amplitude(BasisLabel::from_string("01")) == Complex{1.0, 0.0});

    CHECK_THROWS_AS(superpose(2, {{{1.0, 0.0}, BasisLabel::from_string("01")},
                                  {{1.0, 0.0}, BasisLabel::from_string("01")}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(superpose(2, {{{0.0, 0.0}, BasisLabel::from_string("01")}}),
                    std::invalid_argument);
}

TEST_CASE("gate application on labels") {
    SparseState s = init_basis(2, BasisLabel::from_string("10"));
    s.apply(Gate::cnot(0, 1));
    CHECK(s.amplitude(BasisLabel::from_string("11")) == Complex{1.0, 0.0});

    s.apply(Gate::x(0));
    CHECK(s.amplitude(BasisLabel::from_string("01")) == Complex{1.0, 0.0});

    s.apply(Gate::swap(0, 1));
    CHECK(s.amplitude(BasisLabel::from_string("10")) == Complex{1.0, 0.0});

    // Control at 0 now has value 1? "10": qubit 0 = 1, so CNOT fires again.
    s.apply(Gate::cnot(0, 1));
    CHECK(s.amplitude(BasisLabel::from_string("11")) == Complex{1.0, 0.0});
}

TEST_CASE("permute exchanges bit positions on a 20-qubit register") {
    std::vector<std::uint32_t> perm(20);
    for (std::uint32_t q = 0; q < 20; ++q) perm[q] = q;
    perm[0] = 12; perm[12] = 0;
    perm[1] = 17; perm[17] = 1;
    perm[2] = 6;  perm[6] = 2;
    perm[3] = 11; perm[11] = 3;

    BasisLabel label(20);
    label.set(0, true);
    label.set(2, true);
    label.set(5, true);
    SparseState s = init_basis(20, label);
    s.apply(Gate::permute(perm));

    BasisLabel expected(20);
    expected.set(12, true);
    expected.set(6, true);
    expected.set(5, true);
    CHECK(s.amplitude(expected) == Complex{1.0, 0.0});
    CHECK(s.entry_count() == 1);
}

TEST_CASE("mc-rot splits exactly the control-satisfying entries") {
    SparseState s = init_basis(4, BasisLabel::from_string("1110"));
    s.apply(Gate::mc_rot({0, 1, 2}, 3, {kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}));
    CHECK(s.entry_count() == 2);
    CHECK(s.amplitude(BasisLabel::from_string("1110")).real() == doctest::Approx(kInvSqrt2));
    CHECK(s.amplitude(BasisLabel::from_string("1111")).real() == doctest::Approx(kInvSqrt2));

    // A control is 0: nothing happens.
    SparseState idle = init_basis(4, BasisLabel::from_string("0110"));
    idle.apply(Gate::mc_rot({0, 1, 2}, 3, {0.0, 0.0}, {1.0, 0.0}));
    CHECK(idle.amplitude(BasisLabel::from_string("0110")) == Complex{1.0, 0.0});
    CHECK(idle.entry_count() == 1);

    // Target bit 1 picks up the conjugate column with the sign flip.
    SparseState upper = init_basis(1, BasisLabel::from_string("1"));
    upper.apply(Gate::mc_rot({}, 0, {0.6, 0.0}, {0.0, 0.8}));
    CHECK(upper.amplitude(BasisLabel::from_string("0")) == Complex{0.0, 0.8});
    CHECK(upper.amplitude(BasisLabel::from_string("1")) == Complex{0.6, 0.0});

    CHECK_THROWS_AS(Gate::mc_rot({0}, 1, {0.8, 0.0}, {0.7, 0.0}), std::invalid_argument);
}

TEST_CASE("inner products of the streaming-example states") {
    const SparseState psi1 = four_term("0000", "0111", "1010", "1110");
    const SparseState psi2 = four_term("0001", "0101", "1000", "1111");
    const SparseState psi1p = four_term("0011", "0100", "1010", "1110");
    const SparseState psi2p = four_term("0011", "0100", "1001", "1101");

    CHECK(std::abs(inner_product(psi1, psi2)) == 0.0);
    CHECK(inner_product(psi1p, psi2p).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(inner_product(psi1, psi1).real() == doctest::Approx(1.0));
    CHECK(inner_product(psi2p, psi2p).real() == doctest::Approx(1.0));

    CHECK_THROWS_AS(inner_product(psi1, init_basis(2, BasisLabel::from_string("00"))),
                    std::invalid_argument);
}

TEST_CASE("inner product conjugates the left argument") {
    const SparseState a = superpose(1, {{{1.0, 0.0}, BasisLabel::from_string("0")},
                                        {{0.0, 1.0}, BasisLabel::from_string("1")}});
    const SparseState b = init_basis(1, BasisLabel::from_string("1"));
    CHECK(inner_product(a, b) == Complex{0.0, -kInvSqrt2});
    CHECK(inner_product(b, a) == Complex{0.0, kInvSqrt2});
}

TEST_CASE("swap applied twice is the identity, exactly") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    std::vector<std::pair<Complex, BasisLabel>> terms;
    for (std::uint64_t i : {0ull, 5ull, 9ull, 30ull})
        terms.push_back({{gauss(rng), gauss(rng)}, BasisLabel::from_index(5, i)});
    const SparseState original = superpose(5, terms);

    SparseState s = original;
    s.apply(Gate::swap(1, 4));
    s.apply(Gate::swap(1, 4));
    for (const auto& [label, amp] : original.entries()) CHECK(s.amplitude(label) == amp);
    CHECK(s.entry_count() == original.entry_count());
}

TEST_CASE("mc-rot with alpha=1 is the identity on every state") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::pair<Complex, BasisLabel>> terms;
        for (int k = 0; k < 4; ++k)
            terms.push_back({{gauss(rng), gauss(rng)},
                             BasisLabel::from_index(6, (rng() % 64))});
        SparseState s(6);
        try {
            s = superpose(6, terms);
        } catch (const std::invalid_argument&) {
            continue; // duplicate random labels
        }
        SparseState t = s;
        t.apply(Gate::mc_rot({0, 3}, 5, {1.0, 0.0}, {0.0, 0.0}));
        for (const auto& [label, amp] : s.entries())
            CHECK(std::abs(t.amplitude(label) - amp) <= 1e-15);
    }
}

TEST_CASE("norm is preserved across long circuits") {
    std::mt19937_64 rng(17);
    Circuit circuit;
    circuit.num_qubits = 8;
    for (int g = 0; g < 10000; ++g) {
        const auto q = static_cast<std::uint32_t>(rng() % 8);
        switch (rng() % 4) {
        case 0: circuit.append(Gate::x(q)); break;
        case 1: circuit.append(Gate::swap(q, (q + 1) % 8)); break;
        case 2: circuit.append(Gate::cnot(q, (q + 3) % 8)); break;
        default:
            circuit.append(Gate::mc_rot({(q + 1) % 8}, q, {0.6, 0.0}, {0.0, 0.8}));
        }
    }
    SparseState s = init_basis(8, BasisLabel::from_string("10110100"));
    s.apply(circuit);
    CHECK(std::abs(s.norm() - 1.0) <= 1e-10);
}

TEST_CASE("permutation gates keep the entry count") {
    SparseState s = superpose(3, {{{1.0, 0.0}, BasisLabel::from_string("001")},
                                  {{1.0, 0.0}, BasisLabel::from_string("010")},
                                  {{1.0, 0.0}, BasisLabel::from_string("111")}});
    const std::size_t count = s.entry_count();
    s.apply(Gate::x(1));
    s.apply(Gate::cnot(2, 0));
    s.apply(Gate::swap(0, 2));
    s.apply(Gate::permute({2, 0, 1}));
    CHECK(s.entry_count() == count);
}

TEST_CASE("gate operand validation") {
    SparseState s = init_basis(3, BasisLabel::from_string("000"));
    CHECK_THROWS_AS(s.apply(Gate::x(3)), std::out_of_range);
    CHECK_THROWS_AS(s.apply(Gate::permute({1, 0})), std::invalid_argument);
    CHECK_THROWS_AS(Gate::swap(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(Gate::permute({0, 0, 1}), std::invalid_argument);
}
