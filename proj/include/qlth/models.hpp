#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qlth/statevector.hpp"

namespace qlth {

enum class Family { Mvqc, Bvqc, Snn };

std::string family_name(Family family);
Family family_from_name(const std::string &name);

// Everything needed to rebuild a model deterministically from its seed.
struct ModelSpec {
    Family family = Family::Mvqc;
    int n_features = 0;
    int n_classes = 0;
    int n_layers = 0;              // VQC only
    bool data_reuploading = false; // VQC only
    double init_uniform_range = 0; // VQC only, radians
    int hidden_width = 24;         // SNN only
    std::uint64_t seed = 0;

    bool is_vqc() const { return family != Family::Snn; }
    int n_qubits() const { return n_features; }
    // Wires read out: one per class for MVQC, wire 0 for BVQC.
    int n_outputs() const { return family == Family::Bvqc ? 1 : n_classes; }
};

// Throws std::invalid_argument on an inconsistent spec (BVQC with more
// than two classes, more measured wires than qubits, ...).
void validate_spec(const ModelSpec &spec);

// Flat parameter layout.
//
// VQC:  rotation angles first, index (layer * n_qubits + qubit) * 3 + k
//       with k = 0,1,2 the (a, b, c) arguments of Rot; then the output
//       head as (scale, bias) per measured wire. Rotation block is the
//       prunable range.
// SNN:  W1 (hidden x features, row-major), W2 (classes x hidden,
//       row-major), then b1, b2. The two weight matrices form the
//       prunable range; biases are not pruned.
int count_parameters(const ModelSpec &spec);
int prunable_count(const ModelSpec &spec);

// Seeded initial parameters: VQC rotations uniform on [-r, +r], head
// scale 1 and bias 0; SNN weights and biases uniform on
// [-1/sqrt(fan_in), +1/sqrt(fan_in)].
std::vector<double> init_params(const ModelSpec &spec);

// Gate sequence of a VQC as data, so the forward pass and the adjoint
// differentiation walk the same list.
struct GateOp {
    enum class Kind { EmbedRx, Rot, Cnot };
    Kind kind;
    int qubit = 0;        // target wire (EmbedRx / Rot)
    int control = 0;      // Cnot
    int target = 0;       // Cnot
    int feature = -1;     // EmbedRx: feature index supplying the angle
    int param_base = -1;  // Rot: index of angle a in the ParamVector
};

struct Circuit {
    int n_qubits = 0;
    std::vector<GateOp> ops;
};

Circuit build_vqc_circuit(const ModelSpec &spec);

// Runs the circuit on |0...0> for input x and returns the final state.
State run_circuit(const Circuit &circuit, std::span<const double> params,
                  std::span<const double> x);

// <Z> on each measured wire after the circuit.
std::vector<double> vqc_expectations(const ModelSpec &spec,
                                     std::span<const double> params,
                                     std::span<const double> x);

// Class probabilities of the multi-class VQC: softmax over
// scale_k * <Z_k> + bias_k.
std::vector<double> mvqc_forward(const ModelSpec &spec,
                                 std::span<const double> params,
                                 std::span<const double> x);

// Raw logit of the binary VQC: scale * <Z_0> + bias. Class 1 iff the
// logit is positive.
double bvqc_forward(const ModelSpec &spec, std::span<const double> params,
                    std::span<const double> x);

// softmax(W2 relu(W1 x + b1) + b2).
std::vector<double> snn_forward(const ModelSpec &spec,
                                std::span<const double> params,
                                std::span<const double> x);

// Predicted class index under the documented tie-breaks (argmax toward
// the lowest index; BVQC logit <= 0 maps to class 0).
int predict(const ModelSpec &spec, std::span<const double> params,
            std::span<const double> x);

std::vector<double> softmax(std::span<const double> logits);

} // namespace qlth
