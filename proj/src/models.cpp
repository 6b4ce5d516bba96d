#include "qlth/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlth/rng.hpp"

namespace qlth {

std::string family_name(Family family) {
    switch (family) {
    case Family::Mvqc:
        return "mvqc";
    case Family::Bvqc:
        return "bvqc";
    case Family::Snn:
        return "snn";
    }
    return "?";
}

Family family_from_name(const std::string &name) {
    if (name == "mvqc") return Family::Mvqc;
    if (name == "bvqc") return Family::Bvqc;
    if (name == "snn") return Family::Snn;
    throw std::invalid_argument("unknown model family: " + name);
}

void validate_spec(const ModelSpec &spec) {
    if (spec.n_features < 1) {
        throw std::invalid_argument("model spec: n_features must be positive");
    }
    if (spec.n_classes < 2) {
        throw std::invalid_argument("model spec: n_classes must be at least 2");
    }
    if (spec.family == Family::Bvqc && spec.n_classes != 2) {
        throw std::invalid_argument("model spec: BVQC requires exactly 2 classes");
    }
    if (spec.is_vqc()) {
        if (spec.n_features > 20) {
            throw std::invalid_argument("model spec: VQC limited to 20 wires");
        }
        if (spec.n_layers < 1) {
            throw std::invalid_argument("model spec: n_layers must be positive");
        }
        if (!(spec.init_uniform_range >= 0.0)) {
            throw std::invalid_argument("model spec: init_uniform_range must be >= 0");
        }
        if (spec.n_outputs() > spec.n_qubits()) {
            throw std::invalid_argument(
                "model spec: more measured wires than qubits");
        }
    } else if (spec.hidden_width < 1) {
        throw std::invalid_argument("model spec: hidden_width must be positive");
    }
}

int prunable_count(const ModelSpec &spec) {
    if (spec.is_vqc()) {
        return spec.n_layers * spec.n_qubits() * 3;
    }
    return spec.hidden_width * spec.n_features +
           spec.n_classes * spec.hidden_width;
}

int count_parameters(const ModelSpec &spec) {
    if (spec.is_vqc()) {
        return prunable_count(spec) + 2 * spec.n_outputs();
    }
    return prunable_count(spec) + spec.hidden_width + spec.n_classes;
}

std::vector<double> init_params(const ModelSpec &spec) {
    validate_spec(spec);
    Rng rng(Rng::derive(spec.seed, kSaltInit));
    std::vector<double> params(static_cast<std::size_t>(count_parameters(spec)));
    if (spec.is_vqc()) {
        const double r = spec.init_uniform_range;
        const int n_rot = prunable_count(spec);
        for (int i = 0; i < n_rot; ++i) {
            params[i] = rng.uniform(-r, r);
        }
        for (int k = 0; k < spec.n_outputs(); ++k) {
            params[n_rot + 2 * k] = 1.0;     // scale
            params[n_rot + 2 * k + 1] = 0.0; // bias
        }
    } else {
        const int h = spec.hidden_width;
        const int d = spec.n_features;
        const int c = spec.n_classes;
        const double b1 = 1.0 / std::sqrt(static_cast<double>(d));
        const double b2 = 1.0 / std::sqrt(static_cast<double>(h));
        std::size_t i = 0;
        for (int k = 0; k < h * d; ++k) params[i++] = rng.uniform(-b1, b1);
        for (int k = 0; k < c * h; ++k) params[i++] = rng.uniform(-b2, b2);
        for (int k = 0; k < h; ++k) params[i++] = rng.uniform(-b1, b1);
        for (int k = 0; k < c; ++k) params[i++] = rng.uniform(-b2, b2);
    }
    return params;
}

Circuit build_vqc_circuit(const ModelSpec &spec) {
    validate_spec(spec);
    if (!spec.is_vqc()) {
        throw std::invalid_argument("build_vqc_circuit: spec is not a VQC");
    }
    const int n = spec.n_qubits();
    Circuit circuit;
    circuit.n_qubits = n;
    auto embed_all = [&] {
        for (int q = 0; q < n; ++q) {
            GateOp op;
            op.kind = GateOp::Kind::EmbedRx;
            op.qubit = q;
            op.feature = q;
            circuit.ops.push_back(op);
        }
    };
    if (!spec.data_reuploading) {
        embed_all();
    }
    for (int layer = 0; layer < spec.n_layers; ++layer) {
        if (spec.data_reuploading) {
            embed_all();
        }
        for (int q = 0; q < n; ++q) {
            GateOp op;
            op.kind = GateOp::Kind::Rot;
            op.qubit = q;
            op.param_base = (layer * n + q) * 3;
            circuit.ops.push_back(op);
        }
        // One CNOT ring per layer, control q -> target (q+1) mod n.
        if (n > 1) {
            for (int q = 0; q < n; ++q) {
                GateOp op;
                op.kind = GateOp::Kind::Cnot;
                op.control = q;
                op.target = (q + 1) % n;
                circuit.ops.push_back(op);
            }
        }
    }
    return circuit;
}

State run_circuit(const Circuit &circuit, std::span<const double> params,
                  std::span<const double> x) {
    State state = init_state(circuit.n_qubits);
    for (const GateOp &op : circuit.ops) {
        switch (op.kind) {
        case GateOp::Kind::EmbedRx:
            apply_rx(state, op.qubit, x[op.feature]);
            break;
        case GateOp::Kind::Rot:
            apply_single_qubit(state, op.qubit,
                               rot_matrix(params[op.param_base],
                                          params[op.param_base + 1],
                                          params[op.param_base + 2]));
            break;
        case GateOp::Kind::Cnot:
            apply_cnot(state, op.control, op.target);
            break;
        }
    }
    return state;
}

namespace {

void check_input(const ModelSpec &spec, std::span<const double> params,
                 std::span<const double> x) {
    if (static_cast<int>(x.size()) != spec.n_features) {
        throw std::invalid_argument("forward: feature vector has " +
                                    std::to_string(x.size()) + " entries, spec has " +
                                    std::to_string(spec.n_features));
    }
    if (static_cast<int>(params.size()) != count_parameters(spec)) {
        throw std::invalid_argument("forward: parameter vector has " +
                                    std::to_string(params.size()) +
                                    " entries, spec needs " +
                                    std::to_string(count_parameters(spec)));
    }
}

} // namespace

std::vector<double> vqc_expectations(const ModelSpec &spec,
                                     std::span<const double> params,
                                     std::span<const double> x) {
    check_input(spec, params, x);
    const Circuit circuit = build_vqc_circuit(spec);
    const State state = run_circuit(circuit, params, x);
    std::vector<double> exps(static_cast<std::size_t>(spec.n_outputs()));
    for (int k = 0; k < spec.n_outputs(); ++k) {
        exps[k] = expectation_z(state, k);
    }
    return exps;
}

std::vector<double> softmax(std::span<const double> logits) {
    const double m = *std::max_element(logits.begin(), logits.end());
    std::vector<double> out(logits.size());
    double z = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - m);
        z += out[i];
    }
    for (double &v : out) v /= z;
    return out;
}

std::vector<double> mvqc_forward(const ModelSpec &spec,
                                 std::span<const double> params,
                                 std::span<const double> x) {
    if (spec.family != Family::Mvqc) {
        throw std::invalid_argument("mvqc_forward: spec is not an MVQC");
    }
    const auto exps = vqc_expectations(spec, params, x);
    const int head = prunable_count(spec);
    std::vector<double> logits(exps.size());
    for (std::size_t k = 0; k < exps.size(); ++k) {
        logits[k] = params[head + 2 * k] * exps[k] + params[head + 2 * k + 1];
    }
    return softmax(logits);
}

double bvqc_forward(const ModelSpec &spec, std::span<const double> params,
                    std::span<const double> x) {
    if (spec.family != Family::Bvqc) {
        throw std::invalid_argument("bvqc_forward: spec is not a BVQC");
    }
    const auto exps = vqc_expectations(spec, params, x);
    const int head = prunable_count(spec);
    return params[head] * exps[0] + params[head + 1];
}

std::vector<double> snn_forward(const ModelSpec &spec,
                                std::span<const double> params,
                                std::span<const double> x) {
    if (spec.family != Family::Snn) {
        throw std::invalid_argument("snn_forward: spec is not an SNN");
    }
    check_input(spec, params, x);
    const int h = spec.hidden_width;
    const int d = spec.n_features;
    const int c = spec.n_classes;
    const double *w1 = params.data();
    const double *w2 = w1 + h * d;
    const double *b1 = w2 + c * h;
    const double *b2 = b1 + h;
    std::vector<double> hidden(static_cast<std::size_t>(h));
    for (int i = 0; i < h; ++i) {
        double acc = b1[i];
        for (int j = 0; j < d; ++j) {
            acc += w1[i * d + j] * x[j];
        }
        hidden[i] = acc > 0.0 ? acc : 0.0;
    }
    std::vector<double> logits(static_cast<std::size_t>(c));
    for (int k = 0; k < c; ++k) {
        double acc = b2[k];
        for (int i = 0; i < h; ++i) {
            acc += w2[k * h + i] * hidden[i];
        }
        logits[k] = acc;
    }
    return softmax(logits);
}

int predict(const ModelSpec &spec, std::span<const double> params,
            std::span<const double> x) {
    if (spec.family == Family::Bvqc) {
        return bvqc_forward(spec, params, x) > 0.0 ? 1 : 0;
    }
    const auto probs = spec.family == Family::Mvqc ? mvqc_forward(spec, params, x)
                                                   : snn_forward(spec, params, x);
    return static_cast<int>(
        std::max_element(probs.begin(), probs.end()) - probs.begin());
}

} // namespace qlth
