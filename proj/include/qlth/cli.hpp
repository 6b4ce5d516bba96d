#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qlth/data.hpp"
#include "qlth/lth.hpp"
#include "qlth/presets.hpp"

namespace qlth {

// Fully resolved description of one experiment invocation. Defaults for
// the built-in datasets come from the presets; every field can be
// overridden from the command line.
struct ExperimentConfig {
    std::string dataset; // iris | iris2 | wine | wine2 | path to a CSV
    CsvSchema csv;       // used when dataset is a path
    Family model = Family::Mvqc;
    std::string mode = "weak-iterative"; // weak-oneshot | strong-ea
    std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    TrainConfig train;
    int n_layers = 0; // 0 = take from preset (or 10 if none)
    bool data_reuploading = false;
    double init_uniform_range = -1.0; // negative = preset (or pi if none)
    int rw_threshold = -1;            // negative = 8% of the prunable count
    std::vector<double> ratios;       // empty = default one-shot schedule
    EaConfig ea;
    double split_fraction = 0.8;
    int threads = 0; // 0 = hardware concurrency
    std::string out_dir = "out";
};

// Applies preset hyperparameters for built-in datasets wherever the
// config still holds a "take the default" marker. `explicit_lr` /
// `explicit_wd` suppress the preset for values given on the command
// line.
void resolve_config(ExperimentConfig &config, bool explicit_lr,
                    bool explicit_wd);

std::string config_to_json(const ExperimentConfig &config);

// Executes the configured driver and writes records.jsonl, summary.csv
// and config.json into config.out_dir (created if needed). Returns the
// records.
std::vector<RunRecord> run_experiment(const ExperimentConfig &config);

// Winning-ticket table over weak-LTH records, one row per
// (dataset, model, mode): unpruned mean accuracy and the winning-ticket
// remaining percentage ("none" when no level reaches the baseline).
std::string summarize_records(const std::vector<RunRecord> &records);

// Long-format tables behind the accuracy-versus-remaining-weights plots
// (kind "weak-curve") and the per-generation EA traces (kind
// "ea-trace"). Mixing record kinds is an error.
std::string plot_data(const std::vector<RunRecord> &records,
                      const std::string &kind);

// Small CSV helper shared by the writers: 17 significant digits.
std::string format_double(double value);

} // namespace qlth
