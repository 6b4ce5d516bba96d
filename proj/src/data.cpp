#include "qlth/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qlth/rng.hpp"

#ifndef QLTH_DATA_DIR
#define QLTH_DATA_DIR "data"
#endif

namespace qlth {

namespace {

std::vector<std::string> split_line(const std::string &line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delimiter)) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == delimiter) {
        fields.emplace_back();
    }
    return fields;
}

void trim(std::string &s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n' ||
                          s.back() == ' ' || s.back() == '\t')) {
        s.pop_back();
    }
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i > 0) s.erase(0, i);
}

double parse_number(const std::string &field, int line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(field, &pos);
        if (pos != field.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception &) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": cannot parse numeric field '" + field + "'");
    }
}

} // namespace

Dataset load_csv(const std::string &path, const CsvSchema &schema) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open " + path);
    }
    std::string line;
    int line_no = 0;
    std::vector<std::string> header;
    if (schema.has_header) {
        if (!std::getline(file, line)) {
            throw std::runtime_error(path + ": empty file");
        }
        ++line_no;
        header = split_line(line, schema.delimiter);
        for (auto &h : header) trim(h);
    }

    Dataset ds;
    {
        auto slash = path.find_last_of("/\\");
        auto stem = slash == std::string::npos ? path : path.substr(slash + 1);
        auto dot = stem.find_last_of('.');
        ds.name = dot == std::string::npos ? stem : stem.substr(0, dot);
    }

    int n_fields = -1;
    int label_col = -1;
    std::map<std::string, int> label_ids;
    std::vector<std::string> raw_labels;

    while (std::getline(file, line)) {
        ++line_no;
        std::string probe = line;
        trim(probe);
        if (probe.empty()) continue;
        auto fields = split_line(line, schema.delimiter);
        for (auto &f : fields) trim(f);
        if (n_fields < 0) {
            n_fields = static_cast<int>(fields.size());
            if (n_fields < 2) {
                throw std::runtime_error(path + ": need at least one feature and a label column");
            }
            if (!schema.label_column_name.empty()) {
                if (!schema.has_header) {
                    throw std::invalid_argument(
                        "label column by name requires a header row");
                }
                auto it = std::find(header.begin(), header.end(),
                                    schema.label_column_name);
                if (it == header.end()) {
                    throw std::runtime_error(path + ": no column named '" +
                                             schema.label_column_name + "'");
                }
                label_col = static_cast<int>(it - header.begin());
            } else {
                label_col = schema.label_column_index;
                if (label_col < 0) label_col += n_fields;
            }
            if (label_col < 0 || label_col >= n_fields) {
                throw std::runtime_error(path + ": label column out of range");
            }
            ds.n_cols = n_fields - 1;
        } else if (static_cast<int>(fields.size()) != n_fields) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(n_fields) + " columns, found " +
                                     std::to_string(fields.size()));
        }
        for (int c = 0; c < n_fields; ++c) {
            if (c == label_col) continue;
            ds.features.push_back(parse_number(fields[c], line_no));
        }
        raw_labels.push_back(fields[label_col]);
    }
    if (raw_labels.empty()) {
        throw std::runtime_error(path + ": no data rows");
    }
    // First-appearance order keeps the common grouped layout intact.
    for (const auto &value : raw_labels) {
        auto [it, inserted] =
            label_ids.emplace(value, static_cast<int>(label_ids.size()));
        ds.labels.push_back(it->second);
        (void)inserted;
    }
    ds.n_classes = static_cast<int>(label_ids.size());
    return ds;
}

void save_csv(const Dataset &dataset, const std::string &path) {
    std::ofstream file(path);
    if (!file) {
        throw std::runtime_error("cannot write " + path);
    }
    for (int c = 0; c < dataset.n_cols; ++c) {
        file << 'f' << c << ',';
    }
    file << "label\n";
    char buf[32];
    for (int i = 0; i < dataset.rows(); ++i) {
        const auto row = dataset.row(i);
        for (int c = 0; c < dataset.n_cols; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", row[c]);
            file << buf << ',';
        }
        file << dataset.labels[i] << '\n';
    }
}

std::string builtin_dataset_path(const std::string &file_name) {
    const char *env = std::getenv("QLTH_DATA_DIR");
    const std::string dir = env != nullptr ? env : QLTH_DATA_DIR;
    return dir + "/" + file_name;
}

bool is_builtin_dataset(const std::string &name) {
    return name == "iris" || name == "iris2" || name == "wine" ||
           name == "wine2";
}

Dataset load_builtin(const std::string &name) {
    if (!is_builtin_dataset(name)) {
        throw std::invalid_argument("unknown dataset name: " + name);
    }
    const bool binary = name.back() == '2';
    const std::string base = binary ? name.substr(0, name.size() - 1) : name;
    Dataset ds = load_csv(builtin_dataset_path(base + ".csv"));
    ds.name = base;
    if (binary) {
        ds = simplify(ds);
    }
    return ds;
}

Dataset simplify(const Dataset &dataset) {
    if (dataset.n_classes < 3) {
        throw std::invalid_argument("simplify: dataset has fewer than 3 classes");
    }
    Dataset out;
    out.name = dataset.name + "2";
    out.n_cols = dataset.n_cols;
    out.n_classes = 2;
    for (int i = 0; i < dataset.rows(); ++i) {
        if (dataset.labels[i] == 2) continue;
        if (dataset.labels[i] > 2) {
            throw std::invalid_argument(
                "simplify: expected exactly 3 classes, found more");
        }
        const auto row = dataset.row(i);
        out.features.insert(out.features.end(), row.begin(), row.end());
        out.labels.push_back(dataset.labels[i]);
    }
    return out;
}

Split split(const Dataset &dataset, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw std::invalid_argument("split: fraction must be in (0, 1)");
    }
    std::vector<std::vector<int>> by_class(
        static_cast<std::size_t>(dataset.n_classes));
    for (int i = 0; i < dataset.rows(); ++i) {
        by_class[dataset.labels[i]].push_back(i);
    }
    Split out;
    out.seed = seed;
    Rng rng(Rng::derive(seed, kSaltSplit));
    for (auto &indices : by_class) {
        const int n = static_cast<int>(indices.size());
        if (n < 2) {
            throw std::runtime_error(
                "split: every class needs at least 2 instances to stratify");
        }
        int n_train = static_cast<int>(std::floor(fraction * n + 0.5));
        n_train = std::clamp(n_train, 1, n - 1);
        rng.shuffle(indices);
        out.train_indices.insert(out.train_indices.end(), indices.begin(),
                                 indices.begin() + n_train);
        out.val_indices.insert(out.val_indices.end(), indices.begin() + n_train,
                               indices.end());
    }
    std::sort(out.train_indices.begin(), out.train_indices.end());
    std::sort(out.val_indices.begin(), out.val_indices.end());
    return out;
}

Dataset scale_features(const Dataset &dataset, const Split &split, double lo,
                       double hi) {
    if (!(hi > lo)) {
        throw std::invalid_argument("scale_features: need hi > lo");
    }
    Dataset out = dataset;
    const double mid = 0.5 * (lo + hi);
    for (int c = 0; c < dataset.n_cols; ++c) {
        double mn = std::numeric_limits<double>::infinity();
        double mx = -std::numeric_limits<double>::infinity();
        for (int i : split.train_indices) {
            const double v = dataset.row(i)[c];
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        if (mn == mx) {
            std::cerr << "scale_features: column " << c
                      << " is constant on the training rows; mapping to midpoint\n";
            for (int i = 0; i < dataset.rows(); ++i) {
                out.features[static_cast<std::size_t>(i) * out.n_cols + c] = mid;
            }
            continue;
        }
        const double a = (hi - lo) / (mx - mn);
        for (int i = 0; i < dataset.rows(); ++i) {
            const double v = dataset.row(i)[c];
            out.features[static_cast<std::size_t>(i) * out.n_cols + c] =
                lo + a * (v - mn);
        }
    }
    return out;
}

} // namespace qlth
