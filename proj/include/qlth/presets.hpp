#pragma once

#include <optional>
#include <string>

#include "qlth/models.hpp"

namespace qlth {

// Tuned per-(dataset, model) hyperparameters the experiments default to.
// Layers, re-uploading, and the init range apply to the VQCs only.
struct Preset {
    double learning_rate = 0.0;
    double weight_decay = 0.0;
    int n_layers = 0;
    bool data_reuploading = false;
    double init_uniform_range = 0.0;
};

// Lookup for iris | iris2 | wine | wine2; empty for combinations the
// experiments do not cover (BVQC on the three-class datasets).
std::optional<Preset> find_preset(const std::string &dataset, Family family);

} // namespace qlth
