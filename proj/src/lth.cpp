#include "qlth/lth.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <stdexcept>

#include "parallel.hpp"

namespace qlth {

namespace {

int ceil_target(double fraction, int n) {
    // Guard against 0.33 * 100 = 33.000000000000004-style float noise.
    return static_cast<int>(std::ceil(fraction * n - 1e-9));
}

RunRecord base_record(const Dataset &dataset, const ModelSpec &spec,
                      const std::string &mode, std::uint64_t seed) {
    RunRecord rec;
    rec.kind = mode == "strong-ea" ? "ea" : "weak";
    rec.dataset = dataset.name;
    rec.model = family_name(spec.family);
    rec.mode = mode;
    rec.seed = seed;
    rec.prunable_count = prunable_count(spec);
    return rec;
}

void fill_mask_fields(RunRecord &rec, const PruningMask &mask) {
    const RemainingWeights rw = remaining_weights(mask);
    rec.remaining_count = rw.count;
    rec.remaining_percent = rw.percent;
    rec.mask = mask.to_bitstring();
}

ModelSpec spec_for_seed(const ModelSpec &spec_template, const Dataset &dataset,
                        std::uint64_t seed) {
    ModelSpec spec = spec_template;
    spec.n_features = dataset.n_cols;
    spec.n_classes = dataset.n_classes;
    spec.seed = seed;
    validate_spec(spec);
    return spec;
}

struct SeedContext {
    ModelSpec spec;
    Split split;
    Dataset scaled;
    TrainConfig train_config;
};

SeedContext make_seed_context(const Dataset &dataset,
                              const ModelSpec &spec_template,
                              std::uint64_t seed,
                              const TrainConfig &train_config,
                              const RunOptions &options) {
    SeedContext ctx;
    ctx.spec = spec_for_seed(spec_template, dataset, seed);
    ctx.split = split(dataset, options.split_fraction, seed);
    ctx.scaled =
        scale_features(dataset, ctx.split, options.embed_low, options.embed_high);
    ctx.train_config = train_config;
    ctx.train_config.seed = seed;
    return ctx;
}

// Runs fn per seed and flattens the per-seed records in seed order.
std::vector<RunRecord> over_seeds(
    std::span<const std::uint64_t> seeds, int threads,
    const std::function<std::vector<RunRecord>(std::uint64_t)> &fn) {
    if (seeds.empty()) {
        throw std::invalid_argument("at least one seed is required");
    }
    std::vector<std::vector<RunRecord>> per_seed(seeds.size());
    std::vector<std::exception_ptr> errors(seeds.size());
    detail::parallel_for_index(
        static_cast<int>(seeds.size()), threads, [&](int i) {
            try {
                per_seed[i] = fn(seeds[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    for (auto &err : errors) {
        if (err) std::rethrow_exception(err);
    }
    std::vector<RunRecord> records;
    for (auto &chunk : per_seed) {
        records.insert(records.end(), chunk.begin(), chunk.end());
    }
    return records;
}

} // namespace

std::vector<RunRecord> run_iterative(const Dataset &dataset,
                                     const ModelSpec &spec_template,
                                     std::span<const std::uint64_t> seeds,
                                     int rw_threshold,
                                     const TrainConfig &train_config,
                                     const RunOptions &options) {
    if (rw_threshold < 0) {
        throw std::invalid_argument("run_iterative: rw_threshold must be >= 0");
    }
    return over_seeds(seeds, options.threads, [&](std::uint64_t seed) {
        const SeedContext ctx =
            make_seed_context(dataset, spec_template, seed, train_config, options);
        std::vector<RunRecord> records;
        PruningMask mask = initial_mask(ctx.spec);
        for (int round = 0;; ++round) {
            RunRecord rec = base_record(dataset, ctx.spec, "weak-iterative", seed);
            rec.round = round;
            fill_mask_fields(rec, mask);
            std::vector<double> trained;
            try {
                auto params = apply_mask_copy(init_params(ctx.spec), mask);
                trained = train(ctx.spec, std::move(params), mask, ctx.scaled,
                                ctx.split, ctx.train_config, rec.history);
                rec.accuracy = rec.history.best_val_accuracy;
            } catch (const std::runtime_error &e) {
                rec.error = e.what();
                records.push_back(std::move(rec));
                break; // abandon this seed, keep earlier rounds
            }
            records.push_back(std::move(rec));
            const PruningMask next =
                magnitude_prune(trained, mask, options.prune_fraction);
            const int rw_next = remaining_weights(next).count;
            if (rw_next <= rw_threshold ||
                rw_next == remaining_weights(mask).count) {
                break;
            }
            mask = next;
        }
        return records;
    });
}

std::vector<RunRecord> run_oneshot(const Dataset &dataset,
                                   const ModelSpec &spec_template,
                                   std::span<const std::uint64_t> seeds,
                                   std::span<const double> pruning_ratios,
                                   const TrainConfig &train_config,
                                   const RunOptions &options) {
    for (std::size_t i = 0; i < pruning_ratios.size(); ++i) {
        if (!(pruning_ratios[i] > 0.0 && pruning_ratios[i] < 1.0)) {
            throw std::invalid_argument(
                "run_oneshot: ratios must lie strictly inside (0, 1)");
        }
        if (i > 0 && pruning_ratios[i] <= pruning_ratios[i - 1]) {
            throw std::invalid_argument(
                "run_oneshot: ratios must be strictly increasing");
        }
    }
    return over_seeds(seeds, options.threads, [&](std::uint64_t seed) {
        const SeedContext ctx =
            make_seed_context(dataset, spec_template, seed, train_config, options);
        std::vector<RunRecord> records;
        const PruningMask full = initial_mask(ctx.spec);

        RunRecord rec0 = base_record(dataset, ctx.spec, "weak-oneshot", seed);
        rec0.round = 0;
        fill_mask_fields(rec0, full);
        std::vector<double> trained0;
        try {
            trained0 = train(ctx.spec, init_params(ctx.spec), full, ctx.scaled,
                             ctx.split, ctx.train_config, rec0.history);
            rec0.accuracy = rec0.history.best_val_accuracy;
        } catch (const std::runtime_error &e) {
            rec0.error = e.what();
            records.push_back(std::move(rec0));
            return records;
        }
        records.push_back(std::move(rec0));

        for (std::size_t k = 0; k < pruning_ratios.size(); ++k) {
            const PruningMask mask =
                magnitude_prune(trained0, full, pruning_ratios[k]);
            RunRecord rec = base_record(dataset, ctx.spec, "weak-oneshot", seed);
            rec.round = static_cast<int>(k) + 1;
            fill_mask_fields(rec, mask);
            try {
                auto params = apply_mask_copy(init_params(ctx.spec), mask);
                train(ctx.spec, std::move(params), mask, ctx.scaled, ctx.split,
                      ctx.train_config, rec.history);
                rec.accuracy = rec.history.best_val_accuracy;
            } catch (const std::runtime_error &e) {
                rec.error = e.what();
                records.push_back(std::move(rec));
                break;
            }
            records.push_back(std::move(rec));
        }
        return records;
    });
}

PruningMask crossover(const PruningMask &a, const PruningMask &b, Rng &rng) {
    if (a.bits.size() != b.bits.size()) {
        throw std::invalid_argument("crossover: mask lengths differ");
    }
    PruningMask child = a;
    for (std::size_t i = 0; i < child.bits.size(); ++i) {
        if (rng.bernoulli(0.5)) child.bits[i] = b.bits[i];
    }
    return child;
}

PruningMask mutate(const PruningMask &mask, double rate, Rng &rng) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
        throw std::invalid_argument("mutate: rate must be in [0, 1]");
    }
    PruningMask out = mask;
    for (auto &bit : out.bits) {
        if (rng.bernoulli(rate)) bit ^= 1;
    }
    return out;
}

Individual migrate(const ModelSpec &spec, double keep_prob, Rng &rng) {
    Individual ind;
    ind.mask.bits.resize(static_cast<std::size_t>(prunable_count(spec)));
    for (auto &bit : ind.mask.bits) {
        bit = rng.bernoulli(keep_prob) ? 1 : 0;
    }
    return ind;
}

EaPhaseTargets ea_phase_targets(const EaConfig &config) {
    EaPhaseTargets t;
    t.select =
        std::max(1, ceil_target(config.selection_fraction, config.n_individuals));
    t.crossover = std::max(
        t.select, ceil_target(config.crossover_fraction, config.n_individuals));
    t.mutate = std::max(
        t.crossover, ceil_target(config.mutation_fraction, config.n_individuals));
    t.total = config.n_individuals;
    return t;
}

std::vector<RunRecord> run_ea(const Dataset &dataset,
                              const ModelSpec &spec_template,
                              std::span<const std::uint64_t> seeds,
                              const EaConfig &ea, const RunOptions &options) {
    if (ea.n_individuals < 6) {
        throw std::invalid_argument("run_ea: need at least 6 individuals");
    }
    if (ea.n_generations < 1) {
        throw std::invalid_argument("run_ea: need at least 1 generation");
    }
    return over_seeds(seeds, options.threads, [&](std::uint64_t seed) {
        TrainConfig unused;
        const SeedContext ctx =
            make_seed_context(dataset, spec_template, seed, unused, options);
        const auto &fitness_rows = ea.fitness_on_validation
                                       ? ctx.split.val_indices
                                       : ctx.split.train_indices;
        // Frozen base weights: the whole search happens in mask space.
        const std::vector<double> base_params = init_params(ctx.spec);
        Rng rng(Rng::derive(seed, kSaltEa));

        std::vector<Individual> population;
        population.reserve(static_cast<std::size_t>(ea.n_individuals));
        const PruningMask full = initial_mask(ctx.spec);
        for (int i = 0; i < ea.n_individuals; ++i) {
            Individual ind;
            ind.mask = mutate(full, ea.initial_mutation_rate, rng);
            population.push_back(std::move(ind));
        }

        auto measure_all = [&] {
            for (auto &ind : population) {
                if (ind.fitness >= 0.0) continue;
                const auto params = apply_mask_copy(base_params, ind.mask);
                ind.fitness =
                    evaluate(ctx.spec, params, ctx.scaled, fitness_rows);
            }
        };
        auto best_index = [&] {
            std::size_t best = 0;
            for (std::size_t i = 1; i < population.size(); ++i) {
                if (population[i].fitness > population[best].fitness) best = i;
            }
            return best;
        };

        std::vector<RunRecord> records;
        auto record_generation = [&](int generation) {
            const Individual &best = population[best_index()];
            RunRecord rec = base_record(dataset, ctx.spec, "strong-ea", seed);
            rec.round = generation;
            fill_mask_fields(rec, best.mask);
            rec.accuracy = best.fitness;
            records.push_back(std::move(rec));
        };

        const EaPhaseTargets targets = ea_phase_targets(ea);
        const int n_select = targets.select;
        const int n_cross = targets.crossover;
        const int n_mutate = targets.mutate;

        for (int gen = 0; gen < ea.n_generations; ++gen) {
            measure_all();
            record_generation(gen);
            // Selection: survivors pass through unchanged (elitism).
            std::stable_sort(population.begin(), population.end(),
                             [](const Individual &a, const Individual &b) {
                                 return a.fitness > b.fitness;
                             });
            population.resize(static_cast<std::size_t>(n_select));
            while (static_cast<int>(population.size()) < n_cross) {
                const auto &pa = population[rng.index(n_select)];
                const auto &pb = population[rng.index(n_select)];
                Individual child;
                child.mask = crossover(pa.mask, pb.mask, rng);
                population.push_back(std::move(child));
            }
            while (static_cast<int>(population.size()) < n_mutate) {
                const auto &src = population[rng.index(population.size())];
                Individual copy;
                copy.mask = mutate(src.mask, ea.mutation_rate, rng);
                population.push_back(std::move(copy));
            }
            while (static_cast<int>(population.size()) < ea.n_individuals) {
                population.push_back(migrate(ctx.spec, ea.migrant_keep_prob, rng));
            }
        }
        measure_all();
        record_generation(ea.n_generations);
        return records;
    });
}

double unpruned_mean_accuracy(std::span<const RunRecord> records) {
    double sum = 0.0;
    int count = 0;
    for (const auto &rec : records) {
        if (rec.remaining_count == rec.prunable_count && rec.error.empty()) {
            sum += rec.accuracy;
            ++count;
        }
    }
    if (count == 0) {
        throw std::invalid_argument("records contain no unpruned level");
    }
    return sum / count;
}

std::optional<double> detect_winning_ticket(std::span<const RunRecord> records,
                                            double baseline_accuracy) {
    if (records.empty()) {
        throw std::invalid_argument("detect_winning_ticket: no records");
    }
    unpruned_mean_accuracy(records); // enforces the unpruned level
    struct Level {
        double percent = 0.0;
        double sum = 0.0;
        int count = 0;
    };
    std::map<int, Level> levels; // keyed by remaining count
    for (const auto &rec : records) {
        if (!rec.error.empty()) continue;
        auto &level = levels[rec.remaining_count];
        level.percent = rec.remaining_percent;
        level.sum += rec.accuracy;
        level.count += 1;
    }
    std::optional<double> winner;
    for (const auto &[count, level] : levels) {
        if (level.sum / level.count >= baseline_accuracy - 1e-9) {
            winner = level.percent;
            break; // map iterates remaining counts ascending
        }
    }
    return winner;
}

std::vector<double> default_oneshot_ratios(double prune_fraction, int rounds) {
    std::vector<double> ratios(static_cast<std::size_t>(rounds));
    double keep = 1.0;
    for (int k = 0; k < rounds; ++k) {
        keep *= 1.0 - prune_fraction;
        ratios[k] = 1.0 - keep;
    }
    return ratios;
}

} // namespace qlth
