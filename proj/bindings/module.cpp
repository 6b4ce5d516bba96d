#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qlth/cli.hpp"
#include "qlth/data.hpp"
#include "qlth/diff.hpp"
#include "qlth/lth.hpp"
#include "qlth/models.hpp"
#include "qlth/presets.hpp"
#include "qlth/pruning.hpp"
#include "qlth/records.hpp"
#include "qlth/statevector.hpp"
#include "qlth/training.hpp"

namespace py = pybind11;
using namespace qlth;

namespace {

BatchView make_batch(const std::vector<double> &features,
                     const std::vector<int> &labels, int n_cols) {
    return BatchView{features, labels, n_cols};
}

} // namespace

PYBIND11_MODULE(qlth, m) {
    m.doc() = "Lottery-ticket experiments on variational quantum classifiers";

    // --- statevector ---
    py::class_<State>(m, "State")
        .def(py::init<int>(), py::arg("n_qubits"))
        .def_property_readonly("n_qubits", &State::n_qubits)
        .def_property_readonly("dim", &State::dim)
        .def_property_readonly(
            "amplitudes",
            [](const State &s) { return s.amplitudes(); })
        .def("norm_squared", &State::norm_squared);
    m.def("init_state", &init_state, py::arg("n_qubits"));
    m.def("apply_rx", &apply_rx, py::arg("state"), py::arg("qubit"),
          py::arg("angle"));
    m.def("apply_rot", &apply_rot, py::arg("state"), py::arg("qubit"),
          py::arg("a"), py::arg("b"), py::arg("c"));
    m.def("apply_cnot", &apply_cnot, py::arg("state"), py::arg("control"),
          py::arg("target"));
    m.def("expectation_z", &expectation_z, py::arg("state"), py::arg("qubit"));

    // --- models ---
    py::enum_<Family>(m, "Family")
        .value("MVQC", Family::Mvqc)
        .value("BVQC", Family::Bvqc)
        .value("SNN", Family::Snn);
    py::class_<ModelSpec>(m, "ModelSpec")
        .def(py::init<>())
        .def_readwrite("family", &ModelSpec::family)
        .def_readwrite("n_features", &ModelSpec::n_features)
        .def_readwrite("n_classes", &ModelSpec::n_classes)
        .def_readwrite("n_layers", &ModelSpec::n_layers)
        .def_readwrite("data_reuploading", &ModelSpec::data_reuploading)
        .def_readwrite("init_uniform_range", &ModelSpec::init_uniform_range)
        .def_readwrite("hidden_width", &ModelSpec::hidden_width)
        .def_readwrite("seed", &ModelSpec::seed);
    m.def("count_parameters", &count_parameters);
    m.def("prunable_count", &prunable_count);
    m.def("init_params", &init_params);
    m.def("mvqc_forward",
          [](const ModelSpec &spec, const std::vector<double> &params,
             const std::vector<double> &x) { return mvqc_forward(spec, params, x); });
    m.def("bvqc_forward",
          [](const ModelSpec &spec, const std::vector<double> &params,
             const std::vector<double> &x) { return bvqc_forward(spec, params, x); });
    m.def("snn_forward",
          [](const ModelSpec &spec, const std::vector<double> &params,
             const std::vector<double> &x) { return snn_forward(spec, params, x); });
    m.def("predict",
          [](const ModelSpec &spec, const std::vector<double> &params,
             const std::vector<double> &x) { return predict(spec, params, x); });

    // --- gradients ---
    m.def("loss_gradient",
          [](const ModelSpec &spec, const std::vector<double> &params,
             const std::vector<double> &features, const std::vector<int> &labels) {
              return loss_gradient(spec, params,
                                   make_batch(features, labels, spec.n_features));
          });
    m.def("finite_difference_oracle",
          [](const ModelSpec &spec, const std::vector<double> &params,
             const std::vector<double> &features, const std::vector<int> &labels,
             double step) {
              return finite_difference_oracle(
                  spec, params, make_batch(features, labels, spec.n_features),
                  step);
          },
          py::arg("spec"), py::arg("params"), py::arg("features"),
          py::arg("labels"), py::arg("step") = 1e-4);
    m.def("batch_loss",
          [](const ModelSpec &spec, const std::vector<double> &params,
             const std::vector<double> &features, const std::vector<int> &labels) {
              return batch_loss(spec, params,
                                make_batch(features, labels, spec.n_features));
          });

    // --- pruning ---
    py::class_<PruningMask>(m, "PruningMask")
        .def(py::init<>())
        .def_readwrite("bits", &PruningMask::bits)
        .def("to_bitstring", &PruningMask::to_bitstring)
        .def_static("from_bitstring", &PruningMask::from_bitstring);
    py::class_<RemainingWeights>(m, "RemainingWeights")
        .def_readonly("count", &RemainingWeights::count)
        .def_readonly("prunable_count", &RemainingWeights::prunable_count)
        .def_readonly("percent", &RemainingWeights::percent);
    m.def("initial_mask", &initial_mask);
    m.def("magnitude_prune",
          [](const std::vector<double> &params, const PruningMask &mask,
             double fraction) { return magnitude_prune(params, mask, fraction); });
    m.def("apply_mask", &apply_mask_copy);
    m.def("remaining_weights", &remaining_weights);

    // --- losses / training ---
    m.def("cross_entropy_loss",
          [](const std::vector<double> &probs, int label) {
              return cross_entropy_loss(probs, label);
          });
    m.def("bce_with_logits_loss", &bce_with_logits_loss);
    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("learning_rate", &TrainConfig::learning_rate)
        .def_readwrite("weight_decay", &TrainConfig::weight_decay)
        .def_readwrite("epochs", &TrainConfig::epochs)
        .def_readwrite("batch_size", &TrainConfig::batch_size)
        .def_readwrite("seed", &TrainConfig::seed);
    py::class_<TrainHistory>(m, "TrainHistory")
        .def(py::init<>())
        .def_readonly("train_accuracy", &TrainHistory::train_accuracy)
        .def_readonly("val_accuracy", &TrainHistory::val_accuracy)
        .def_readonly("train_loss", &TrainHistory::train_loss)
        .def_readonly("best_val_accuracy", &TrainHistory::best_val_accuracy);
    m.def("train",
          [](const ModelSpec &spec, std::vector<double> params,
             const PruningMask &mask, const Dataset &dataset, const Split &split,
             const TrainConfig &config) {
              TrainHistory history;
              auto trained = train(spec, std::move(params), mask, dataset, split,
                                   config, history);
              return py::make_tuple(trained, history);
          });
    m.def("evaluate",
          [](const ModelSpec &spec, const std::vector<double> &params,
             const Dataset &dataset, const std::vector<int> &indices) {
              return evaluate(spec, params, dataset, indices);
          });

    // --- data ---
    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def_readwrite("name", &Dataset::name)
        .def_readwrite("features", &Dataset::features)
        .def_readwrite("labels", &Dataset::labels)
        .def_readwrite("n_cols", &Dataset::n_cols)
        .def_readwrite("n_classes", &Dataset::n_classes)
        .def_property_readonly("rows", &Dataset::rows);
    py::class_<Split>(m, "Split")
        .def(py::init<>())
        .def_readwrite("train_indices", &Split::train_indices)
        .def_readwrite("val_indices", &Split::val_indices)
        .def_readwrite("seed", &Split::seed);
    py::class_<CsvSchema>(m, "CsvSchema")
        .def(py::init<>())
        .def_readwrite("label_column_name", &CsvSchema::label_column_name)
        .def_readwrite("label_column_index", &CsvSchema::label_column_index)
        .def_readwrite("delimiter", &CsvSchema::delimiter)
        .def_readwrite("has_header", &CsvSchema::has_header);
    m.def("load_csv", &load_csv, py::arg("path"), py::arg("schema") = CsvSchema{});
    m.def("load_builtin", &load_builtin);
    m.def("simplify", &simplify);
    m.def("split", &split, py::arg("dataset"), py::arg("fraction"),
          py::arg("seed"));
    m.def("scale_features", &scale_features, py::arg("dataset"),
          py::arg("split"), py::arg("lo") = 0.0,
          py::arg("hi") = 3.14159265358979323846);

    // --- experiment drivers ---
    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("kind", &RunRecord::kind)
        .def_readonly("dataset", &RunRecord::dataset)
        .def_readonly("model", &RunRecord::model)
        .def_readonly("mode", &RunRecord::mode)
        .def_readonly("seed", &RunRecord::seed)
        .def_readonly("round", &RunRecord::round)
        .def_readonly("prunable_count", &RunRecord::prunable_count)
        .def_readonly("remaining_count", &RunRecord::remaining_count)
        .def_readonly("remaining_percent", &RunRecord::remaining_percent)
        .def_readonly("accuracy", &RunRecord::accuracy)
        .def_readonly("mask", &RunRecord::mask)
        .def_readonly("history", &RunRecord::history)
        .def_readonly("error", &RunRecord::error);
    py::class_<RunOptions>(m, "RunOptions")
        .def(py::init<>())
        .def_readwrite("split_fraction", &RunOptions::split_fraction)
        .def_readwrite("prune_fraction", &RunOptions::prune_fraction)
        .def_readwrite("embed_low", &RunOptions::embed_low)
        .def_readwrite("embed_high", &RunOptions::embed_high)
        .def_readwrite("threads", &RunOptions::threads);
    py::class_<EaConfig>(m, "EaConfig")
        .def(py::init<>())
        .def_readwrite("n_generations", &EaConfig::n_generations)
        .def_readwrite("n_individuals", &EaConfig::n_individuals)
        .def_readwrite("mutation_rate", &EaConfig::mutation_rate)
        .def_readwrite("initial_mutation_rate", &EaConfig::initial_mutation_rate)
        .def_readwrite("migrant_keep_prob", &EaConfig::migrant_keep_prob)
        .def_readwrite("selection_fraction", &EaConfig::selection_fraction)
        .def_readwrite("crossover_fraction", &EaConfig::crossover_fraction)
        .def_readwrite("mutation_fraction", &EaConfig::mutation_fraction)
        .def_readwrite("fitness_on_validation", &EaConfig::fitness_on_validation);
    m.def("run_iterative",
          [](const Dataset &dataset, const ModelSpec &spec,
             const std::vector<std::uint64_t> &seeds, int rw_threshold,
             const TrainConfig &train_config, const RunOptions &options) {
              return run_iterative(dataset, spec, seeds, rw_threshold,
                                   train_config, options);
          },
          py::arg("dataset"), py::arg("spec"), py::arg("seeds"),
          py::arg("rw_threshold"), py::arg("train_config"),
          py::arg("options") = RunOptions{});
    m.def("run_oneshot",
          [](const Dataset &dataset, const ModelSpec &spec,
             const std::vector<std::uint64_t> &seeds,
             const std::vector<double> &ratios, const TrainConfig &train_config,
             const RunOptions &options) {
              return run_oneshot(dataset, spec, seeds, ratios, train_config,
                                 options);
          },
          py::arg("dataset"), py::arg("spec"), py::arg("seeds"),
          py::arg("ratios"), py::arg("train_config"),
          py::arg("options") = RunOptions{});
    m.def("run_ea",
          [](const Dataset &dataset, const ModelSpec &spec,
             const std::vector<std::uint64_t> &seeds, const EaConfig &ea,
             const RunOptions &options) {
              return run_ea(dataset, spec, seeds, ea, options);
          },
          py::arg("dataset"), py::arg("spec"), py::arg("seeds"), py::arg("ea"),
          py::arg("options") = RunOptions{});
    m.def("detect_winning_ticket",
          [](const std::vector<RunRecord> &records, double baseline) {
              return detect_winning_ticket(records, baseline);
          });
    m.def("unpruned_mean_accuracy",
          [](const std::vector<RunRecord> &records) {
              return unpruned_mean_accuracy(records);
          });
    m.def("default_oneshot_ratios", &default_oneshot_ratios,
          py::arg("prune_fraction") = 0.2, py::arg("rounds") = 12);
    m.def("summarize_records", &summarize_records);
    m.def("plot_data", &plot_data);
    m.def("record_to_json", &record_to_json);
}
