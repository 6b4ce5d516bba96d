#include "qlth/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qlth {

namespace {

void check_qubit(const State &state, int qubit, const char *what) {
    if (qubit < 0 || qubit >= state.n_qubits()) {
        throw std::out_of_range(std::string(what) + ": qubit " +
                                std::to_string(qubit) + " out of range for " +
                                std::to_string(state.n_qubits()) + " qubits");
    }
}

} // namespace

Mat2 rx_matrix(double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    return Mat2::from({c, 0.0}, {0.0, -s}, {0.0, -s}, {c, 0.0});
}

Mat2 ry_matrix(double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    return Mat2::from({c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0});
}

Mat2 rz_matrix(double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    return Mat2::from({c, -s}, {0.0, 0.0}, {0.0, 0.0}, {c, s});
}

Mat2 matmul(const Mat2 &lhs, const Mat2 &rhs) {
    Mat2 out{};
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            Complex acc = lhs.at(r, 0) * rhs.at(0, c) + lhs.at(r, 1) * rhs.at(1, c);
            double *p = &out.r00 + 2 * (2 * r + c);
            p[0] = acc.real();
            p[1] = acc.imag();
        }
    }
    return out;
}

Mat2 adjoint(const Mat2 &m) {
    return {m.r00, -m.i00, m.r10, -m.i10, m.r01, -m.i01, m.r11, -m.i11};
}

Mat2 rot_matrix(double a, double b, double c) {
    return matmul(rz_matrix(c), matmul(ry_matrix(b), rz_matrix(a)));
}

State::State(int n_qubits)
    : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits) {
    amps_[0] = Complex{1.0, 0.0};
}

void State::reset() {
    std::fill(amps_.begin(), amps_.end(), Complex{0.0, 0.0});
    amps_[0] = Complex{1.0, 0.0};
}

double State::norm_squared() const {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

State init_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 20) {
        throw std::invalid_argument("init_state: n_qubits must be in [1, 20], got " +
                                    std::to_string(n_qubits));
    }
    return State(n_qubits);
}

void apply_single_qubit(State &state, int qubit, const Mat2 &u) {
    check_qubit(state, qubit, "apply_single_qubit");
    const std::size_t stride = state.stride(qubit);
    const std::size_t dim = state.dim();
    // std::complex<double> is layout-compatible with double[2].
    double *a = reinterpret_cast<double *>(state.amplitudes().data());
    const double u00r = u.r00, u00i = u.i00, u01r = u.r01, u01i = u.i01;
    const double u10r = u.r10, u10i = u.i10, u11r = u.r11, u11i = u.i11;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            double *lo = a + 2 * k;
            double *hi = a + 2 * (k + stride);
            const double xr = lo[0], xi = lo[1];
            const double yr = hi[0], yi = hi[1];
            lo[0] = u00r * xr - u00i * xi + u01r * yr - u01i * yi;
            lo[1] = u00r * xi + u00i * xr + u01r * yi + u01i * yr;
            hi[0] = u10r * xr - u10i * xi + u11r * yr - u11i * yi;
            hi[1] = u10r * xi + u10i * xr + u11r * yi + u11i * yr;
        }
    }
}

void apply_rx(State &state, int qubit, double angle) {
    apply_single_qubit(state, qubit, rx_matrix(angle));
}

void apply_rot(State &state, int qubit, double a, double b, double c) {
    apply_single_qubit(state, qubit, rot_matrix(a, b, c));
}

void apply_cnot(State &state, int control, int target) {
    check_qubit(state, control, "apply_cnot");
    check_qubit(state, target, "apply_cnot");
    if (control == target) {
        throw std::out_of_range("apply_cnot: control and target must differ");
    }
    const std::size_t sc = state.stride(control);
    const std::size_t st = state.stride(target);
    auto &amps = state.amplitudes();
    const std::size_t dim = state.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & sc) != 0 && (i & st) == 0) {
            std::swap(amps[i], amps[i | st]);
        }
    }
}

double expectation_z(const State &state, int qubit) {
    check_qubit(state, qubit, "expectation_z");
    const std::size_t stride = state.stride(qubit);
    const auto &amps = state.amplitudes();
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        acc += (i & stride) ? -p : p;
    }
    return acc;
}

} // namespace qlth
