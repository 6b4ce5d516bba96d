#include "qlth/records.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qlth {

namespace {

using nlohmann::json;

json history_to_json(const TrainHistory &history) {
    return json{{"train_accuracy", history.train_accuracy},
                {"val_accuracy", history.val_accuracy},
                {"train_loss", history.train_loss},
                {"best_val_accuracy", history.best_val_accuracy}};
}

TrainHistory history_from_json(const json &j) {
    TrainHistory history;
    history.train_accuracy = j.at("train_accuracy").get<std::vector<double>>();
    history.val_accuracy = j.at("val_accuracy").get<std::vector<double>>();
    history.train_loss = j.at("train_loss").get<std::vector<double>>();
    history.best_val_accuracy = j.at("best_val_accuracy").get<double>();
    return history;
}

} // namespace

std::string record_to_json(const RunRecord &record) {
    json j{{"kind", record.kind},
           {"dataset", record.dataset},
           {"model", record.model},
           {"mode", record.mode},
           {"seed", record.seed},
           {"round", record.round},
           {"prunable_count", record.prunable_count},
           {"remaining_count", record.remaining_count},
           {"remaining_percent", record.remaining_percent},
           {"accuracy", record.accuracy},
           {"mask", record.mask},
           {"history", history_to_json(record.history)},
           {"error", record.error}};
    return j.dump();
}

RunRecord record_from_json(const std::string &line) {
    const json j = json::parse(line);
    RunRecord record;
    record.kind = j.at("kind").get<std::string>();
    record.dataset = j.at("dataset").get<std::string>();
    record.model = j.at("model").get<std::string>();
    record.mode = j.at("mode").get<std::string>();
    record.seed = j.at("seed").get<std::uint64_t>();
    record.round = j.at("round").get<int>();
    record.prunable_count = j.at("prunable_count").get<int>();
    record.remaining_count = j.at("remaining_count").get<int>();
    record.remaining_percent = j.at("remaining_percent").get<double>();
    record.accuracy = j.at("accuracy").get<double>();
    record.mask = j.at("mask").get<std::string>();
    record.history = history_from_json(j.at("history"));
    record.error = j.at("error").get<std::string>();
    return record;
}

void write_records(const std::string &path,
                   const std::vector<RunRecord> &records) {
    std::ofstream file(path);
    if (!file) {
        throw std::runtime_error("cannot write " + path);
    }
    for (const auto &record : records) {
        file << record_to_json(record) << '\n';
    }
}

std::vector<RunRecord> read_records(const std::string &path) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open " + path);
    }
    std::vector<RunRecord> records;
    std::string line;
    while (std::getline(file, line)) {
        if (line.empty()) continue;
        records.push_back(record_from_json(line));
    }
    return records;
}

std::vector<RunRecord> read_records_from(const std::vector<std::string> &paths) {
    namespace fs = std::filesystem;
    std::vector<RunRecord> records;
    for (const auto &path : paths) {
        if (fs::is_directory(path)) {
            std::vector<fs::path> files;
            for (const auto &entry : fs::directory_iterator(path)) {
                if (entry.path().extension() == ".jsonl") {
                    files.push_back(entry.path());
                }
            }
            std::sort(files.begin(), files.end());
            for (const auto &file : files) {
                auto chunk = read_records(file.string());
                records.insert(records.end(), chunk.begin(), chunk.end());
            }
        } else {
            auto chunk = read_records(path);
            records.insert(records.end(), chunk.begin(), chunk.end());
        }
    }
    return records;
}

} // namespace qlth
