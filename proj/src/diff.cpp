#include "qlth/diff.hpp"

#include <cmath>
#include <stdexcept>

#include "qlth/losses.hpp"

namespace qlth {

namespace {

void check_batch(const ModelSpec &spec, const BatchView &batch) {
    if (batch.rows() == 0) {
        throw std::invalid_argument("batch must be nonempty");
    }
    if (batch.n_cols != spec.n_features) {
        throw std::invalid_argument("batch feature width does not match spec");
    }
    if (batch.features.size() !=
        static_cast<std::size_t>(batch.rows()) * batch.n_cols) {
        throw std::invalid_argument("batch feature buffer has the wrong size");
    }
}

void check_finite(double loss) {
    if (!std::isfinite(loss)) {
        throw std::runtime_error("non-finite loss encountered");
    }
}

// diag(-i/2, +i/2) * m, i.e. (-i/2) Z m.
Mat2 gen_z(const Mat2 &m) {
    return {0.5 * m.i00, -0.5 * m.r00, 0.5 * m.i01, -0.5 * m.r01,
            -0.5 * m.i10, 0.5 * m.r10, -0.5 * m.i11, 0.5 * m.r11};
}

// (-i/2) Y m with (-i/2)Y = [[0, -1/2], [1/2, 0]].
Mat2 gen_y(const Mat2 &m) {
    return {-0.5 * m.r10, -0.5 * m.i10, -0.5 * m.r11, -0.5 * m.i11,
            0.5 * m.r00, 0.5 * m.i00, 0.5 * m.r01, 0.5 * m.i01};
}

// (-i/2) X m with (-i/2)X = [[0, -i/2], [-i/2, 0]].
Mat2 gen_x(const Mat2 &m) {
    return {0.5 * m.i10, -0.5 * m.r10, 0.5 * m.i11, -0.5 * m.r11,
            0.5 * m.i00, -0.5 * m.r00, 0.5 * m.i01, -0.5 * m.r01};
}

// Re<bra| D_m |ket> on the target qubit's amplitude pairs, for up to
// three derivative matrices in one pass.
void deriv_dots(const State &bra, const State &ket, int qubit,
                const Mat2 *mats, int n_mats, double *out) {
    const std::size_t stride = ket.stride(qubit);
    const std::size_t dim = ket.dim();
    const double *b = reinterpret_cast<const double *>(bra.amplitudes().data());
    const double *k = reinterpret_cast<const double *>(ket.amplitudes().data());
    for (int m = 0; m < n_mats; ++m) out[m] = 0.0;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t idx = base; idx < base + stride; ++idx) {
            const double xr = k[2 * idx], xi = k[2 * idx + 1];
            const double yr = k[2 * (idx + stride)], yi = k[2 * (idx + stride) + 1];
            const double lr = b[2 * idx], li = b[2 * idx + 1];
            const double hr = b[2 * (idx + stride)], hi = b[2 * (idx + stride) + 1];
            for (int m = 0; m < n_mats; ++m) {
                const Mat2 &d = mats[m];
                const double vlr = d.r00 * xr - d.i00 * xi + d.r01 * yr - d.i01 * yi;
                const double vli = d.r00 * xi + d.i00 * xr + d.r01 * yi + d.i01 * yr;
                const double vhr = d.r10 * xr - d.i10 * xi + d.r11 * yr - d.i11 * yi;
                const double vhi = d.r10 * xi + d.i10 * xr + d.r11 * yi + d.i11 * yr;
                out[m] += lr * vlr + li * vli + hr * vhr + hi * vhi;
            }
        }
    }
}

// lambda_i = (sum_k w_k z_k(i)) * psi_i for the diagonal observable
// sum_k w_k Z_k over the measured wires 0..n_obs-1.
State apply_z_sum(const State &psi, std::span<const double> weights) {
    State lambda = psi;
    const std::size_t dim = psi.dim();
    std::vector<std::size_t> strides(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        strides[k] = psi.stride(static_cast<int>(k));
    }
    for (std::size_t i = 0; i < dim; ++i) {
        double coeff = 0.0;
        for (std::size_t k = 0; k < weights.size(); ++k) {
            coeff += (i & strides[k]) ? -weights[k] : weights[k];
        }
        lambda[i] *= coeff;
    }
    return lambda;
}

} // namespace

void accumulate_expectation_gradient(const Circuit &circuit,
                                     std::span<const double> params,
                                     std::span<const double> x,
                                     std::span<const double> obs_weights,
                                     State &psi, std::span<double> grad_out) {
    State lambda = apply_z_sum(psi, obs_weights);
    double dots[3];
    for (auto it = circuit.ops.rbegin(); it != circuit.ops.rend(); ++it) {
        const GateOp &op = *it;
        switch (op.kind) {
        case GateOp::Kind::Cnot:
            apply_cnot(psi, op.control, op.target);
            apply_cnot(lambda, op.control, op.target);
            break;
        case GateOp::Kind::EmbedRx: {
            const Mat2 inv = rx_matrix(-x[op.feature]);
            apply_single_qubit(psi, op.qubit, inv);
            apply_single_qubit(lambda, op.qubit, inv);
            break;
        }
        case GateOp::Kind::Rot: {
            const double a = params[op.param_base];
            const double b = params[op.param_base + 1];
            const double c = params[op.param_base + 2];
            const Mat2 rza = rz_matrix(a);
            const Mat2 ryb = ry_matrix(b);
            const Mat2 rzc = rz_matrix(c);
            const Mat2 u = matmul(rzc, matmul(ryb, rza));
            apply_single_qubit(psi, op.qubit, adjoint(u));
            const Mat2 d[3] = {
                matmul(rzc, matmul(ryb, gen_z(rza))), // d/da
                matmul(rzc, matmul(gen_y(ryb), rza)), // d/db
                gen_z(u),                             // d/dc
            };
            deriv_dots(lambda, psi, op.qubit, d, 3, dots);
            grad_out[op.param_base] += 2.0 * dots[0];
            grad_out[op.param_base + 1] += 2.0 * dots[1];
            grad_out[op.param_base + 2] += 2.0 * dots[2];
            apply_single_qubit(lambda, op.qubit, adjoint(u));
            break;
        }
        }
    }
}

std::vector<double> expectation_gradient(const Circuit &circuit,
                                         std::span<const double> params,
                                         std::span<const double> x,
                                         std::span<const double> obs_weights) {
    State psi = run_circuit(circuit, params, x);
    std::vector<double> grad(params.size(), 0.0);
    accumulate_expectation_gradient(circuit, params, x, obs_weights, psi, grad);
    return grad;
}

namespace {

double sample_loss_vqc(const ModelSpec &spec, const Circuit &circuit,
                       std::span<const double> params,
                       std::span<const double> x, int label,
                       std::vector<double> *grad) {
    State psi = run_circuit(circuit, params, x);
    const int n_out = spec.n_outputs();
    const int head = prunable_count(spec);
    std::vector<double> exps(static_cast<std::size_t>(n_out));
    for (int k = 0; k < n_out; ++k) {
        exps[k] = expectation_z(psi, k);
    }
    double loss;
    std::vector<double> dlogits(static_cast<std::size_t>(n_out));
    if (spec.family == Family::Bvqc) {
        const double logit = params[head] * exps[0] + params[head + 1];
        loss = bce_with_logits_loss(logit, label);
        dlogits[0] = sigmoid(logit) - (label != 0 ? 1.0 : 0.0);
    } else {
        std::vector<double> logits(static_cast<std::size_t>(n_out));
        for (int k = 0; k < n_out; ++k) {
            logits[k] = params[head + 2 * k] * exps[k] + params[head + 2 * k + 1];
        }
        const auto probs = softmax(logits);
        loss = cross_entropy_loss(probs, label);
        for (int k = 0; k < n_out; ++k) {
            dlogits[k] = probs[k] - (k == label ? 1.0 : 0.0);
        }
    }
    if (grad != nullptr) {
        std::vector<double> obs_weights(static_cast<std::size_t>(n_out));
        for (int k = 0; k < n_out; ++k) {
            (*grad)[head + 2 * k] += dlogits[k] * exps[k];
            (*grad)[head + 2 * k + 1] += dlogits[k];
            obs_weights[k] = dlogits[k] * params[head + 2 * k];
        }
        accumulate_expectation_gradient(circuit, params, x, obs_weights, psi,
                                        *grad);
    }
    return loss;
}

double sample_loss_snn(const ModelSpec &spec, std::span<const double> params,
                       std::span<const double> x, int label,
                       std::vector<double> *grad) {
    const int h = spec.hidden_width;
    const int d = spec.n_features;
    const int c = spec.n_classes;
    const double *w1 = params.data();
    const double *w2 = w1 + h * d;
    const double *b1 = w2 + c * h;
    const double *b2 = b1 + h;
    std::vector<double> z1(static_cast<std::size_t>(h));
    std::vector<double> hidden(static_cast<std::size_t>(h));
    for (int i = 0; i < h; ++i) {
        double acc = b1[i];
        for (int j = 0; j < d; ++j) acc += w1[i * d + j] * x[j];
        z1[i] = acc;
        hidden[i] = acc > 0.0 ? acc : 0.0;
    }
    std::vector<double> logits(static_cast<std::size_t>(c));
    for (int k = 0; k < c; ++k) {
        double acc = b2[k];
        for (int i = 0; i < h; ++i) acc += w2[k * h + i] * hidden[i];
        logits[k] = acc;
    }
    const auto probs = softmax(logits);
    const double loss = cross_entropy_loss(probs, label);
    if (grad != nullptr) {
        double *g1 = grad->data();
        double *g2 = g1 + h * d;
        double *gb1 = g2 + c * h;
        double *gb2 = gb1 + h;
        std::vector<double> dhidden(static_cast<std::size_t>(h), 0.0);
        for (int k = 0; k < c; ++k) {
            const double dz2 = probs[k] - (k == label ? 1.0 : 0.0);
            gb2[k] += dz2;
            for (int i = 0; i < h; ++i) {
                g2[k * h + i] += dz2 * hidden[i];
                dhidden[i] += dz2 * w2[k * h + i];
            }
        }
        for (int i = 0; i < h; ++i) {
            // ReLU derivative at exactly zero is zero.
            const double dz1 = z1[i] > 0.0 ? dhidden[i] : 0.0;
            gb1[i] += dz1;
            for (int j = 0; j < d; ++j) {
                g1[i * d + j] += dz1 * x[j];
            }
        }
    }
    return loss;
}

} // namespace

double batch_loss(const ModelSpec &spec, std::span<const double> params,
                  const BatchView &batch) {
    check_batch(spec, batch);
    double total = 0.0;
    if (spec.is_vqc()) {
        const Circuit circuit = build_vqc_circuit(spec);
        for (int i = 0; i < batch.rows(); ++i) {
            total += sample_loss_vqc(spec, circuit, params, batch.row(i),
                                     batch.labels[i], nullptr);
        }
    } else {
        for (int i = 0; i < batch.rows(); ++i) {
            total += sample_loss_snn(spec, params, batch.row(i), batch.labels[i],
                                     nullptr);
        }
    }
    const double mean = total / batch.rows();
    check_finite(mean);
    return mean;
}

LossGrad loss_and_gradient(const ModelSpec &spec,
                           std::span<const double> params,
                           const BatchView &batch) {
    check_batch(spec, batch);
    if (static_cast<int>(params.size()) != count_parameters(spec)) {
        throw std::invalid_argument("loss_gradient: parameter length mismatch");
    }
    LossGrad out;
    out.grad.assign(params.size(), 0.0);
    double total = 0.0;
    if (spec.is_vqc()) {
        const Circuit circuit = build_vqc_circuit(spec);
        for (int i = 0; i < batch.rows(); ++i) {
            total += sample_loss_vqc(spec, circuit, params, batch.row(i),
                                     batch.labels[i], &out.grad);
        }
    } else {
        for (int i = 0; i < batch.rows(); ++i) {
            total += sample_loss_snn(spec, params, batch.row(i), batch.labels[i],
                                     &out.grad);
        }
    }
    out.loss = total / batch.rows();
    check_finite(out.loss);
    const double inv = 1.0 / batch.rows();
    for (double &g : out.grad) g *= inv;
    return out;
}

std::vector<double> loss_gradient(const ModelSpec &spec,
                                  std::span<const double> params,
                                  const BatchView &batch) {
    return loss_and_gradient(spec, params, batch).grad;
}

std::vector<double> loss_gradient(const ModelSpec &spec,
                                  std::span<const double> params,
                                  const BatchView &batch,
                                  std::span<const std::uint8_t> mask) {
    auto grad = loss_gradient(spec, params, batch);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i] == 0) grad[i] = 0.0;
    }
    return grad;
}

std::vector<double> finite_difference_oracle(const ModelSpec &spec,
                                             std::span<const double> params,
                                             const BatchView &batch,
                                             double step) {
    if (!(step > 0.0)) {
        throw std::invalid_argument("finite_difference_oracle: step must be > 0");
    }
    std::vector<double> shifted(params.begin(), params.end());
    std::vector<double> grad(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        shifted[i] = params[i] + step;
        const double up = batch_loss(spec, shifted, batch);
        shifted[i] = params[i] - step;
        const double down = batch_loss(spec, shifted, batch);
        shifted[i] = params[i];
        grad[i] = (up - down) / (2.0 * step);
    }
    return grad;
}

} // namespace qlth
