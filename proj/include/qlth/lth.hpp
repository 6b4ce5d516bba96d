#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlth/data.hpp"
#include "qlth/models.hpp"
#include "qlth/pruning.hpp"
#include "qlth/rng.hpp"
#include "qlth/training.hpp"

namespace qlth {

// One (seed, remaining-weights level) outcome. For evolutionary runs,
// `round` counts generations evolved and `accuracy` is the best
// individual's fitness; for weak runs it is the best validation
// accuracy over the training epochs.
struct RunRecord {
    std::string kind; // "weak" | "ea"
    std::string dataset;
    std::string model;
    std::string mode; // weak-iterative | weak-oneshot | strong-ea
    std::uint64_t seed = 0;
    int round = 0;
    int prunable_count = 0;
    int remaining_count = 0;
    double remaining_percent = 0.0;
    double accuracy = 0.0;
    std::string mask; // bitstring over the prunable range
    TrainHistory history;
    std::string error; // nonempty if this round aborted
};

// Knobs shared by the weak-LTH drivers.
struct RunOptions {
    double split_fraction = 0.8;
    double prune_fraction = 0.2; // per-round magnitude-pruning rate
    double embed_low = 0.0;      // feature scaling range
    double embed_high = 3.14159265358979323846;
    int threads = 1; // seeds run on a bounded worker pool
};

struct EaConfig {
    int n_generations = 20;
    int n_individuals = 30;
    double mutation_rate = 0.05;         // per-bit flip rate per mutant
    double initial_mutation_rate = 0.5;  // applied to the seed population
    double migrant_keep_prob = 0.5;      // bit = 1 probability for migrants
    double selection_fraction = 0.33;    // phase targets, ceil(f * n_ind)
    double crossover_fraction = 0.66;
    double mutation_fraction = 0.95;
    bool fitness_on_validation = false; // default: training-split accuracy
};

struct Individual {
    PruningMask mask;
    double fitness = -1.0; // negative = not yet measured
};

// Population sizes after the selection / crossover / mutation /
// migration phases, each ceil(fraction * n_individuals) and clamped to
// stay monotone.
struct EaPhaseTargets {
    int select = 0;
    int crossover = 0;
    int mutate = 0;
    int total = 0;
};
EaPhaseTargets ea_phase_targets(const EaConfig &config);

// Train-prune-rewind loop: per seed and round, the model is re-created
// from the same seed, the cumulative mask applied, trained, recorded,
// and the mask tightened by magnitude pruning of the trained weights.
// Stops when the next mask's remaining count falls to rw_threshold or
// stops shrinking.
std::vector<RunRecord> run_iterative(const Dataset &dataset,
                                     const ModelSpec &spec_template,
                                     std::span<const std::uint64_t> seeds,
                                     int rw_threshold,
                                     const TrainConfig &train_config,
                                     const RunOptions &options = {});

// Trains the unpruned model once per seed, then derives each level's
// mask directly from those trained weights at the given ratios.
std::vector<RunRecord> run_oneshot(const Dataset &dataset,
                                   const ModelSpec &spec_template,
                                   std::span<const std::uint64_t> seeds,
                                   std::span<const double> pruning_ratios,
                                   const TrainConfig &train_config,
                                   const RunOptions &options = {});

// Evolutionary mask search over frozen random weights (no training
// anywhere). Emits one record per measurement point, i.e. generations
// 0..n_generations evolved.
std::vector<RunRecord> run_ea(const Dataset &dataset,
                              const ModelSpec &spec_template,
                              std::span<const std::uint64_t> seeds,
                              const EaConfig &ea_config,
                              const RunOptions &options = {});

// Each bit taken from a or b with probability 1/2.
PruningMask crossover(const PruningMask &a, const PruningMask &b, Rng &rng);

// Each bit flipped independently with the given rate.
PruningMask mutate(const PruningMask &mask, double rate, Rng &rng);

// Fresh individual whose mask keeps each weight with probability
// keep_prob, for migration into an existing population.
Individual migrate(const ModelSpec &spec, double keep_prob, Rng &rng);

// Smallest remaining-weights percentage whose mean-over-seeds accuracy
// reaches the baseline, across the levels in `records` (weak records).
// The unpruned level must be present.
std::optional<double> detect_winning_ticket(std::span<const RunRecord> records,
                                            double baseline_accuracy);

// Mean accuracy of the unpruned level; throws if that level is missing.
double unpruned_mean_accuracy(std::span<const RunRecord> records);

// The default one-shot schedule {1 - (1-prune_fraction)^k, k = 1..12},
// matching the iterative remaining-weight levels round for round.
std::vector<double> default_oneshot_ratios(double prune_fraction = 0.2,
                                           int rounds = 12);

} // namespace qlth
