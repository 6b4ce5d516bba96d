#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qlth/statevector.hpp"

using namespace qlth;
using std::numbers::pi;

namespace {

State from_amplitudes(int n_qubits, const oracle::CVec &amps) {
    State s(n_qubits);
    for (std::size_t i = 0; i < amps.size(); ++i) s[i] = amps[i];
    return s;
}

} // namespace

TEST_CASE("init_state produces |0...0>") {
    const State s1 = init_state(1);
    CHECK(s1.dim() == 2);
    CHECK(s1[0] == Complex{1.0, 0.0});
    CHECK(s1[1] == Complex{0.0, 0.0});

    const State s2 = init_state(2);
    CHECK(s2.dim() == 4);
    CHECK(s2[0] == Complex{1.0, 0.0});
    for (std::size_t i = 1; i < 4; ++i) CHECK(s2[i] == Complex{0.0, 0.0});

    const State s13 = init_state(13);
    CHECK(s13.dim() == 8192);
    CHECK(s13.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(init_state(0), std::invalid_argument);
    CHECK_THROWS_AS(init_state(21), std::invalid_argument);
}

TEST_CASE("apply_rx matches the analytic matrix") {
    std::mt19937_64 rng(7);
    SUBCASE("zero angle is the identity") {
        const auto amps = oracle::random_state(3, rng);
        State s = from_amplitudes(3, amps);
        apply_rx(s, 1, 0.0);
        CHECK(oracle::max_abs_diff(amps, s.amplitudes()) < 1e-15);
    }
    SUBCASE("Rx(pi)|0> = -i|1>") {
        State s = init_state(1);
        apply_rx(s, 0, pi);
        CHECK(std::abs(s[0]) < 1e-15);
        CHECK(std::abs(s[1] - Complex{0.0, -1.0}) < 1e-15);
    }
    SUBCASE("Rx(pi/2)|0> = (|0> - i|1>)/sqrt(2)") {
        State s = init_state(1);
        apply_rx(s, 0, pi / 2);
        const double r = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(s[0] - Complex{r, 0.0}) < 1e-15);
        CHECK(std::abs(s[1] - Complex{0.0, -r}) < 1e-15);
    }
    SUBCASE("qubit out of range") {
        State s = init_state(2);
        CHECK_THROWS_AS(apply_rx(s, 2, 0.3), std::out_of_range);
    }
}

TEST_CASE("apply_rot follows the RZ(c) RY(b) RZ(a) convention") {
    SUBCASE("Rot(0,0,0) is the identity") {
        std::mt19937_64 rng(11);
        const auto amps = oracle::random_state(2, rng);
        State s = from_amplitudes(2, amps);
        apply_rot(s, 0, 0.0, 0.0, 0.0);
        CHECK(oracle::max_abs_diff(amps, s.amplitudes()) < 1e-15);
    }
    SUBCASE("Rot(0,pi,0)|0> = |1>") {
        State s = init_state(1);
        apply_rot(s, 0, 0.0, pi, 0.0);
        CHECK(std::abs(s[0]) < 1e-15);
        CHECK(std::abs(s[1] - Complex{1.0, 0.0}) < 1e-15);
    }
    SUBCASE("random angles on a random 2-qubit state match the dense oracle") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> angle(-pi, pi);
        for (int trial = 0; trial < 20; ++trial) {
            const auto amps = oracle::random_state(2, rng);
            const double a = angle(rng), b = angle(rng), c = angle(rng);
            const int qubit = trial % 2;
            State s = from_amplitudes(2, amps);
            apply_rot(s, qubit, a, b, c);
            const auto full =
                oracle::single_qubit_full(2, qubit, rot_matrix(a, b, c));
            const auto expected = oracle::matvec(full, amps);
            CHECK(oracle::max_abs_diff(expected, s.amplitudes()) < 1e-12);
        }
    }
}

TEST_CASE("apply_cnot flips the target where the control is set") {
    SUBCASE("|10> -> |11> and |00> fixed") {
        State s = init_state(2);
        s[0] = 0.0;
        s[2] = 1.0; // |10>, qubit 0 is the high bit
        apply_cnot(s, 0, 1);
        CHECK(std::abs(s[3] - Complex{1.0, 0.0}) < 1e-15);
        CHECK(std::abs(s[2]) < 1e-15);

        State z = init_state(2);
        apply_cnot(z, 0, 1);
        CHECK(std::abs(z[0] - Complex{1.0, 0.0}) < 1e-15);
    }
    SUBCASE("superposition: (|00>+|10>)/sqrt(2) -> (|00>+|11>)/sqrt(2)") {
        State s = init_state(2);
        const double r = 1.0 / std::sqrt(2.0);
        s[0] = r;
        s[2] = r;
        apply_cnot(s, 0, 1);
        CHECK(std::abs(s[0] - Complex{r, 0.0}) < 1e-15);
        CHECK(std::abs(s[3] - Complex{r, 0.0}) < 1e-15);
        CHECK(std::abs(s[1]) + std::abs(s[2]) < 1e-15);
    }
    SUBCASE("involution: applying twice restores the state exactly") {
        std::mt19937_64 rng(5);
        const auto amps = oracle::random_state(3, rng);
        State s = from_amplitudes(3, amps);
        apply_cnot(s, 2, 0);
        apply_cnot(s, 2, 0);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            CHECK(s[i] == amps[i]); // bitwise: swaps only
        }
    }
    SUBCASE("errors") {
        State s = init_state(2);
        CHECK_THROWS_AS(apply_cnot(s, 0, 0), std::out_of_range);
        CHECK_THROWS_AS(apply_cnot(s, 0, 2), std::out_of_range);
    }
}

TEST_CASE("expectation_z") {
    SUBCASE("basis states") {
        State s = init_state(1);
        CHECK(expectation_z(s, 0) == doctest::Approx(1.0).epsilon(1e-15));
        s[0] = 0.0;
        s[1] = 1.0;
        CHECK(expectation_z(s, 0) == doctest::Approx(-1.0).epsilon(1e-15));
    }
    SUBCASE("<Z> after Rx(theta)|0> equals cos(theta)") {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> angle(-2 * pi, 2 * pi);
        for (int i = 0; i < 100; ++i) {
            const double theta = angle(rng);
            State s = init_state(1);
            apply_rx(s, 0, theta);
            CHECK(std::abs(expectation_z(s, 0) - std::cos(theta)) < 1e-12);
        }
    }
    SUBCASE("Rx(pi/2)|0> has <Z> = 0") {
        State s = init_state(1);
        apply_rx(s, 0, pi / 2);
        CHECK(std::abs(expectation_z(s, 0)) < 1e-12);
    }
}

TEST_CASE("every gate matches the dense-matrix simulator on <= 3 qubits") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto amps = oracle::random_state(n, rng);
            for (int q = 0; q < n; ++q) {
                {
                    const double theta = angle(rng);
                    State s = from_amplitudes(n, amps);
                    apply_rx(s, q, theta);
                    const auto expected = oracle::matvec(
                        oracle::single_qubit_full(n, q, rx_matrix(theta)), amps);
                    CHECK(oracle::max_abs_diff(expected, s.amplitudes()) < 1e-12);
                }
                {
                    const double a = angle(rng), b = angle(rng), c = angle(rng);
                    State s = from_amplitudes(n, amps);
                    apply_rot(s, q, a, b, c);
                    const auto expected = oracle::matvec(
                        oracle::single_qubit_full(n, q, rot_matrix(a, b, c)),
                        amps);
                    CHECK(oracle::max_abs_diff(expected, s.amplitudes()) < 1e-12);
                }
            }
            for (int control = 0; control < n; ++control) {
                for (int target = 0; target < n; ++target) {
                    if (control == target) continue;
                    State s = from_amplitudes(n, amps);
                    apply_cnot(s, control, target);
                    const auto expected = oracle::matvec(
                        oracle::cnot_full(n, control, target), amps);
                    CHECK(oracle::max_abs_diff(expected, s.amplitudes()) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("norm preserved over long random gate sequences") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> angle(-pi, pi);
    const int n = 13;
    State s = init_state(n);
    for (int step = 0; step < 1000; ++step) {
        const int kind = static_cast<int>(rng() % 3);
        const int q = static_cast<int>(rng() % n);
        if (kind == 0) {
            apply_rx(s, q, angle(rng));
        } else if (kind == 1) {
            apply_rot(s, q, angle(rng), angle(rng), angle(rng));
        } else {
            int t = static_cast<int>(rng() % n);
            if (t == q) t = (t + 1) % n;
            apply_cnot(s, q, t);
        }
    }
    CHECK(std::abs(s.norm_squared() - 1.0) < 1e-9);
}
