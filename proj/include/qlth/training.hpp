#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qlth/data.hpp"
#include "qlth/losses.hpp"
#include "qlth/models.hpp"
#include "qlth/pruning.hpp"

namespace qlth {

struct TrainConfig {
    double learning_rate = 0.01;
    double weight_decay = 0.0;
    int epochs = 100;
    int batch_size = 16;
    std::uint64_t seed = 0;
};

struct TrainHistory {
    std::vector<double> train_accuracy; // one entry per epoch
    std::vector<double> val_accuracy;
    std::vector<double> train_loss; // mean per-sample loss over the epoch
    double best_val_accuracy = 0.0; // max over epochs; 0 if no epochs ran
};

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;

    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

inline constexpr double kAdamBeta1 = 0.9;
inline constexpr double kAdamBeta2 = 0.999;
inline constexpr double kAdamEpsilon = 1e-8;

// Bias-corrected Adam update, step index t starting at 1. Weight decay
// enters as an L2 term added to the gradient (the coupled variant).
// Throws on non-finite gradients.
void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState &state, double learning_rate, double weight_decay,
               int t);

// Fraction of correct predictions over the given rows.
double evaluate(const ModelSpec &spec, std::span<const double> params,
                const Dataset &dataset, std::span<const int> indices);

// Mini-batch Adam on the masked model: seeded per-epoch shuffling of the
// training rows, the mask re-asserted after every step, per-epoch
// accuracies and loss recorded. Returns the trained parameters.
std::vector<double> train(const ModelSpec &spec, std::vector<double> params,
                          const PruningMask &mask, const Dataset &dataset,
                          const Split &split, const TrainConfig &config,
                          TrainHistory &history);

} // namespace qlth
