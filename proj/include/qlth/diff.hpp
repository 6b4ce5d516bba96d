#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qlth/models.hpp"

namespace qlth {

// Row-major view over a mini-batch. Rows align with labels.
struct BatchView {
    std::span<const double> features; // rows * n_cols, row-major
    std::span<const int> labels;
    int n_cols = 0;

    int rows() const { return static_cast<int>(labels.size()); }
    std::span<const double> row(int i) const {
        return features.subspan(static_cast<std::size_t>(i) * n_cols, n_cols);
    }
};

// Mean loss over the batch: cross-entropy on softmax probabilities for
// MVQC/SNN, binary cross-entropy with logits for BVQC.
double batch_loss(const ModelSpec &spec, std::span<const double> params,
                  const BatchView &batch);

// d(sum_k obs_weights[k] * <Z_k>) / d(circuit parameters), accumulated
// into grad_out, via reverse (adjoint) sweep over the gate list. The
// final state of the forward pass is consumed (and destroyed).
void accumulate_expectation_gradient(const Circuit &circuit,
                                     std::span<const double> params,
                                     std::span<const double> x,
                                     std::span<const double> obs_weights,
                                     State &final_state,
                                     std::span<double> grad_out);

// Convenience wrapper running its own forward pass.
std::vector<double> expectation_gradient(const Circuit &circuit,
                                         std::span<const double> params,
                                         std::span<const double> x,
                                         std::span<const double> obs_weights);

struct LossGrad {
    double loss = 0.0;
    std::vector<double> grad;
};

// Mean batch loss together with its gradient from one pass over the
// batch. Exact: adjoint sweep through the circuit for VQCs, analytic
// backprop for the SNN; contractually equal to central finite
// differences.
LossGrad loss_and_gradient(const ModelSpec &spec,
                           std::span<const double> params,
                           const BatchView &batch);

// d(mean batch loss) / d(every parameter).
std::vector<double> loss_gradient(const ModelSpec &spec,
                                  std::span<const double> params,
                                  const BatchView &batch);

// Mask-aware variant: gradient entries of pruned prunable parameters
// are exactly zero. mask covers the prunable prefix.
std::vector<double> loss_gradient(const ModelSpec &spec,
                                  std::span<const double> params,
                                  const BatchView &batch,
                                  std::span<const std::uint8_t> mask);

// Central differences (f(p+h) - f(p-h)) / 2h per parameter on the mean
// batch loss. Verification oracle; shares nothing with the adjoint path
// but the forward pass.
std::vector<double> finite_difference_oracle(const ModelSpec &spec,
                                             std::span<const double> params,
                                             const BatchView &batch,
                                             double step);

} // namespace qlth
