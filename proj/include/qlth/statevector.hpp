#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qlth {

using Complex = std::complex<double>;

// 2x2 unitary stored as re/im pairs so the gate kernels run on plain
// doubles (no libm complex-multiply calls in the hot loop).
struct Mat2 {
    double r00, i00, r01, i01, r10, i10, r11, i11;

    static Mat2 from(Complex m00, Complex m01, Complex m10, Complex m11) {
        return {m00.real(), m00.imag(), m01.real(), m01.imag(),
                m10.real(), m10.imag(), m11.real(), m11.imag()};
    }
    Complex at(int r, int c) const {
        const double *p = &r00 + 2 * (2 * r + c);
        return {p[0], p[1]};
    }
};

Mat2 rx_matrix(double angle);
Mat2 ry_matrix(double angle);
Mat2 rz_matrix(double angle);
// Rot(a, b, c) = RZ(c) * RY(b) * RZ(a); general Euler rotation, applied
// as RZ(a) first.
Mat2 rot_matrix(double a, double b, double c);
Mat2 matmul(const Mat2 &lhs, const Mat2 &rhs);
Mat2 adjoint(const Mat2 &m);

// Dense statevector of an n-qubit register. Amplitudes are indexed by
// computational basis integer with qubit 0 as the most significant bit.
class State {
  public:
    explicit State(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    Complex &operator[](std::size_t i) { return amps_[i]; }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }

    std::vector<Complex> &amplitudes() { return amps_; }
    const std::vector<Complex> &amplitudes() const { return amps_; }

    // Resets to |0...0> without reallocating.
    void reset();

    double norm_squared() const;

    // Bit mask selecting the given qubit in a basis index.
    std::size_t stride(int qubit) const {
        return amps_.size() >> (qubit + 1);
    }

  private:
    int n_qubits_;
    std::vector<Complex> amps_;
};

// All-zeros computational basis state on n_qubits wires, 1 <= n <= 20.
State init_state(int n_qubits);

void apply_single_qubit(State &state, int qubit, const Mat2 &u);
void apply_rx(State &state, int qubit, double angle);
void apply_rot(State &state, int qubit, double a, double b, double c);
void apply_cnot(State &state, int control, int target);

// Exact <Z> on one wire: sum of (+-1) * |amplitude|^2 by bit value.
double expectation_z(const State &state, int qubit);

} // namespace qlth
