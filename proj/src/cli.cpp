#include "qlth/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qlth/records.hpp"

namespace qlth {

namespace {

Dataset load_configured_dataset(const ExperimentConfig &config) {
    if (is_builtin_dataset(config.dataset)) {
        return load_builtin(config.dataset);
    }
    if (!std::filesystem::exists(config.dataset)) {
        throw std::invalid_argument("unknown dataset name or missing file: " +
                                    config.dataset);
    }
    return load_csv(config.dataset, config.csv);
}

ModelSpec spec_from_config(const ExperimentConfig &config,
                           const Dataset &dataset) {
    ModelSpec spec;
    spec.family = config.model;
    spec.n_features = dataset.n_cols;
    spec.n_classes = dataset.n_classes;
    spec.n_layers = config.n_layers;
    spec.data_reuploading = config.data_reuploading;
    spec.init_uniform_range = config.init_uniform_range;
    validate_spec(spec);
    return spec;
}

} // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void resolve_config(ExperimentConfig &config, bool explicit_lr,
                    bool explicit_wd) {
    const auto preset = is_builtin_dataset(config.dataset)
                            ? find_preset(config.dataset, config.model)
                            : std::nullopt;
    if (preset) {
        if (!explicit_lr) config.train.learning_rate = preset->learning_rate;
        if (!explicit_wd) config.train.weight_decay = preset->weight_decay;
        if (config.n_layers == 0) config.n_layers = preset->n_layers;
        if (config.init_uniform_range < 0.0) {
            config.init_uniform_range = preset->init_uniform_range;
        }
    }
    if (config.n_layers == 0) config.n_layers = 10;
    if (config.init_uniform_range < 0.0) {
        config.init_uniform_range = 3.14159265358979323846;
    }
    if (config.threads == 0) {
        config.threads =
            std::max(1u, std::thread::hardware_concurrency());
    }
    if (config.seeds.empty()) {
        throw std::invalid_argument("at least one seed is required");
    }
}

std::string config_to_json(const ExperimentConfig &config) {
    nlohmann::json j{
        {"dataset", config.dataset},
        {"model", family_name(config.model)},
        {"mode", config.mode},
        {"seeds", config.seeds},
        {"learning_rate", config.train.learning_rate},
        {"weight_decay", config.train.weight_decay},
        {"epochs", config.train.epochs},
        {"batch_size", config.train.batch_size},
        {"layers", config.n_layers},
        {"reupload", config.data_reuploading},
        {"init_range", config.init_uniform_range},
        {"rw_threshold", config.rw_threshold},
        {"ratios", config.ratios},
        {"generations", config.ea.n_generations},
        {"population", config.ea.n_individuals},
        {"mutation_rate", config.ea.mutation_rate},
        {"initial_mutation_rate", config.ea.initial_mutation_rate},
        {"migrant_keep_prob", config.ea.migrant_keep_prob},
        {"split_fraction", config.split_fraction},
    };
    return j.dump(2);
}

std::vector<RunRecord> run_experiment(const ExperimentConfig &config) {
    const Dataset dataset = load_configured_dataset(config);

    RunOptions options;
    options.split_fraction = config.split_fraction;
    options.threads = config.threads;

    const ModelSpec spec = spec_from_config(config, dataset);
    std::vector<RunRecord> records;
    if (config.mode == "weak-iterative") {
        const int threshold =
            config.rw_threshold >= 0
                ? config.rw_threshold
                : static_cast<int>(0.08 * prunable_count(spec));
        records = run_iterative(dataset, spec, config.seeds, threshold,
                                config.train, options);
    } else if (config.mode == "weak-oneshot") {
        const auto ratios =
            config.ratios.empty() ? default_oneshot_ratios() : config.ratios;
        records = run_oneshot(dataset, spec, config.seeds, ratios, config.train,
                              options);
    } else if (config.mode == "strong-ea") {
        records = run_ea(dataset, spec, config.seeds, config.ea, options);
    } else {
        throw std::invalid_argument("unknown mode: " + config.mode);
    }

    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    write_records((fs::path(config.out_dir) / "records.jsonl").string(),
                  records);
    {
        std::ofstream file(fs::path(config.out_dir) / "config.json");
        file << config_to_json(config) << '\n';
    }
    {
        std::ofstream file(fs::path(config.out_dir) / "summary.csv");
        if (config.mode == "strong-ea") {
            // Per-seed endpoint of the search.
            file << "dataset,model,mode,seed,final_best_accuracy,final_"
                    "remaining_percent\n";
            for (const auto &rec : records) {
                if (rec.round != config.ea.n_generations) continue;
                file << rec.dataset << ',' << rec.model << ',' << rec.mode << ','
                     << rec.seed << ',' << format_double(rec.accuracy) << ','
                     << format_double(rec.remaining_percent) << '\n';
            }
        } else {
            file << summarize_records(records);
        }
    }
    return records;
}

std::string summarize_records(const std::vector<RunRecord> &records) {
    if (records.empty()) {
        throw std::invalid_argument("summarize: no records");
    }
    std::map<std::string, std::vector<RunRecord>> groups;
    for (const auto &rec : records) {
        if (rec.kind != "weak") {
            throw std::invalid_argument(
                "summarize: winning-ticket tables need weak-LTH records");
        }
        groups[rec.dataset + "," + rec.model + "," + rec.mode].push_back(rec);
    }
    std::ostringstream out;
    out << "dataset,model,mode,unpruned_mean_accuracy,winning_ticket_"
           "remaining_percent\n";
    for (const auto &[key, group] : groups) {
        const double baseline = unpruned_mean_accuracy(group);
        const auto ticket = detect_winning_ticket(group, baseline);
        out << key << ',' << format_double(baseline) << ','
            << (ticket ? format_double(*ticket) : std::string("none")) << '\n';
    }
    return out.str();
}

std::string plot_data(const std::vector<RunRecord> &records,
                      const std::string &kind) {
    std::ostringstream out;
    if (kind == "weak-curve") {
        out << "level,seed,epoch,split,accuracy,remaining_percent\n";
        for (const auto &rec : records) {
            if (rec.kind != "weak") {
                throw std::invalid_argument(
                    "plot_data: weak-curve needs weak-LTH records only");
            }
            const auto &h = rec.history;
            for (std::size_t e = 0; e < h.train_accuracy.size(); ++e) {
                out << rec.round << ',' << rec.seed << ',' << e << ",train,"
                    << format_double(h.train_accuracy[e]) << ','
                    << format_double(rec.remaining_percent) << '\n';
                out << rec.round << ',' << rec.seed << ',' << e << ",val,"
                    << format_double(h.val_accuracy[e]) << ','
                    << format_double(rec.remaining_percent) << '\n';
            }
        }
        return out.str();
    }
    if (kind == "ea-trace") {
        out << "generation,seed,accuracy,remaining_percent\n";
        for (const auto &rec : records) {
            if (rec.kind != "ea") {
                throw std::invalid_argument(
                    "plot_data: ea-trace needs evolutionary records only");
            }
            out << rec.round << ',' << rec.seed << ','
                << format_double(rec.accuracy) << ','
                << format_double(rec.remaining_percent) << '\n';
        }
        return out.str();
    }
    throw std::invalid_argument("plot_data: unknown kind " + kind);
}

} // namespace qlth
