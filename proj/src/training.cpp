#include "qlth/training.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlth/diff.hpp"
#include "qlth/rng.hpp"

namespace qlth {

void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState &state, double learning_rate, double weight_decay,
               int t) {
    if (params.size() != grads.size() || params.size() != state.m.size()) {
        throw std::invalid_argument("adam_step: length mismatch");
    }
    if (t < 1) {
        throw std::invalid_argument("adam_step: step index starts at 1");
    }
    const double bc1 = 1.0 - std::pow(kAdamBeta1, t);
    const double bc2 = 1.0 - std::pow(kAdamBeta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!std::isfinite(grads[i])) {
            throw std::runtime_error("adam_step: non-finite gradient at index " +
                                     std::to_string(i));
        }
        const double g = grads[i] + weight_decay * params[i];
        state.m[i] = kAdamBeta1 * state.m[i] + (1.0 - kAdamBeta1) * g;
        state.v[i] = kAdamBeta2 * state.v[i] + (1.0 - kAdamBeta2) * g * g;
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= learning_rate * m_hat / (std::sqrt(v_hat) + kAdamEpsilon);
    }
}

double evaluate(const ModelSpec &spec, std::span<const double> params,
                const Dataset &dataset, std::span<const int> indices) {
    if (indices.empty()) {
        throw std::invalid_argument("evaluate: empty index set");
    }
    int correct = 0;
    for (int i : indices) {
        if (predict(spec, params, dataset.row(i)) == dataset.labels[i]) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(indices.size());
}

std::vector<double> train(const ModelSpec &spec, std::vector<double> params,
                          const PruningMask &mask, const Dataset &dataset,
                          const Split &split, const TrainConfig &config,
                          TrainHistory &history) {
    if (static_cast<int>(params.size()) != count_parameters(spec)) {
        throw std::invalid_argument("train: parameter length mismatch");
    }
    if (mask.size() != prunable_count(spec)) {
        throw std::invalid_argument("train: mask length mismatch");
    }
    if (config.batch_size < 1) {
        throw std::invalid_argument("train: batch_size must be positive");
    }
    history = TrainHistory{};
    if (config.epochs == 0) {
        return params;
    }

    AdamState adam(params.size());
    Rng shuffle_rng(Rng::derive(config.seed, kSaltShuffle));
    std::vector<int> order = split.train_indices;
    const int n_train = static_cast<int>(order.size());
    std::vector<double> batch_features;
    std::vector<int> batch_labels;
    int t = 0;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double loss_sum = 0.0;
        for (int start = 0; start < n_train; start += config.batch_size) {
            const int end = std::min(start + config.batch_size, n_train);
            batch_features.clear();
            batch_labels.clear();
            for (int k = start; k < end; ++k) {
                const auto row = dataset.row(order[k]);
                batch_features.insert(batch_features.end(), row.begin(),
                                      row.end());
                batch_labels.push_back(dataset.labels[order[k]]);
            }
            BatchView batch{batch_features, batch_labels, dataset.n_cols};
            auto lg = loss_and_gradient(spec, params, batch);
            for (std::size_t i = 0; i < mask.bits.size(); ++i) {
                if (!mask.bits[i]) lg.grad[i] = 0.0;
            }
            loss_sum += lg.loss * batch.rows();
            adam_step(params, lg.grad, adam, config.learning_rate,
                      config.weight_decay, ++t);
            apply_mask(params, mask);
        }
        history.train_loss.push_back(loss_sum / n_train);
        history.train_accuracy.push_back(
            evaluate(spec, params, dataset, split.train_indices));
        history.val_accuracy.push_back(
            evaluate(spec, params, dataset, split.val_indices));
    }
    history.best_val_accuracy = *std::max_element(history.val_accuracy.begin(),
                                                  history.val_accuracy.end());
    return params;
}

} // namespace qlth
