#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qlth/cli.hpp"
#include "qlth/records.hpp"

namespace {

int cmd_run(qlth::ExperimentConfig &config, bool explicit_lr,
            bool explicit_wd) {
    qlth::resolve_config(config, explicit_lr, explicit_wd);
    const auto records = qlth::run_experiment(config);
    std::cout << "wrote " << records.size() << " records to " << config.out_dir
              << "\n";
    return 0;
}

int cmd_summarize(const std::vector<std::string> &inputs,
                  const std::string &out_path) {
    const auto records = qlth::read_records_from(inputs);
    const std::string table = qlth::summarize_records(records);
    if (out_path.empty()) {
        std::cout << table;
    } else {
        std::ofstream file(out_path);
        if (!file) throw std::runtime_error("cannot write " + out_path);
        file << table;
    }
    return 0;
}

int cmd_plot_data(const std::vector<std::string> &inputs,
                  const std::string &kind, const std::string &out_path) {
    const auto records = qlth::read_records_from(inputs);
    const std::string table = qlth::plot_data(records, kind);
    if (out_path.empty()) {
        std::cout << table;
    } else {
        std::ofstream file(out_path);
        if (!file) throw std::runtime_error("cannot write " + out_path);
        file << table;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{
        "Lottery-ticket experiments on variational quantum classifiers"};
    app.require_subcommand(1);

    qlth::ExperimentConfig config;
    std::string model_name = "mvqc";
    std::string label_column;
    std::string delimiter = ",";
    bool no_header = false;

    auto *run = app.add_subcommand("run", "Execute an experiment");
    run->add_option("--dataset", config.dataset,
                    "iris | iris2 | wine | wine2 | path to a CSV file")
        ->required();
    run->add_option("--model", model_name, "mvqc | bvqc | snn")
        ->check(CLI::IsMember({"mvqc", "bvqc", "snn"}));
    run->add_option("--mode", config.mode,
                    "weak-iterative | weak-oneshot | strong-ea")
        ->check(CLI::IsMember({"weak-iterative", "weak-oneshot", "strong-ea"}));
    run->add_option("--seeds", config.seeds, "run seeds (default 0..9)")
        ->delimiter(',');
    run->add_option("--epochs", config.train.epochs, "training epochs");
    run->add_option("--batch-size", config.train.batch_size, "mini-batch size");
    auto *lr_opt =
        run->add_option("--lr", config.train.learning_rate, "learning rate");
    auto *wd_opt = run->add_option("--weight-decay", config.train.weight_decay,
                                   "L2 weight decay");
    run->add_option("--layers", config.n_layers,
                    "variational layers (VQC; 0 = preset)");
    run->add_flag("--reupload", config.data_reuploading,
                  "re-apply the input embedding before every layer");
    run->add_option("--init-range", config.init_uniform_range,
                    "uniform init range in radians (VQC; negative = preset)");
    run->add_option("--rw-threshold", config.rw_threshold,
                    "stop iterative pruning at this many remaining weights "
                    "(negative = 8% of the prunable count)");
    run->add_option("--ratios", config.ratios,
                    "one-shot pruning ratios in (0,1), increasing")
        ->delimiter(',');
    run->add_option("--generations", config.ea.n_generations, "EA generations");
    run->add_option("--population", config.ea.n_individuals, "EA population");
    run->add_option("--mutation-rate", config.ea.mutation_rate,
                    "EA per-bit mutation rate");
    run->add_option("--initial-mutation-rate", config.ea.initial_mutation_rate,
                    "per-bit flip rate applied to the seed population");
    run->add_option("--keep-prob", config.ea.migrant_keep_prob,
                    "bit = 1 probability for EA migrants");
    run->add_option("--split-fraction", config.split_fraction,
                    "training fraction of the stratified split");
    run->add_option("--threads", config.threads,
                    "worker threads across seeds (0 = hardware)");
    run->add_option("--out", config.out_dir, "output directory");
    run->add_option("--label-column", label_column,
                    "CSV label column name (default: last column)");
    run->add_option("--delimiter", delimiter, "CSV delimiter");
    run->add_flag("--no-header", no_header, "CSV file has no header row");

    std::vector<std::string> inputs;
    std::string out_path;
    auto *summarize =
        app.add_subcommand("summarize", "Winning-ticket table from records");
    summarize->add_option("records", inputs, "record files or directories")
        ->required();
    summarize->add_option("--out", out_path, "write the table here (default stdout)");

    std::string kind = "weak-curve";
    auto *plot = app.add_subcommand("plot-data",
                                    "Long-format plot table from records");
    plot->add_option("records", inputs, "record files or directories")
        ->required();
    plot->add_option("--kind", kind, "weak-curve | ea-trace")
        ->check(CLI::IsMember({"weak-curve", "ea-trace"}));
    plot->add_option("--out", out_path, "write the table here (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            config.model = qlth::family_from_name(model_name);
            if (!label_column.empty()) config.csv.label_column_name = label_column;
            if (delimiter.size() != 1) {
                throw std::invalid_argument("--delimiter must be one character");
            }
            config.csv.delimiter = delimiter[0];
            config.csv.has_header = !no_header;
            return cmd_run(config, lr_opt->count() > 0, wd_opt->count() > 0);
        }
        if (summarize->parsed()) {
            return cmd_summarize(inputs, out_path);
        }
        return cmd_plot_data(inputs, kind, out_path);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
