#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qlth {

struct Dataset {
    std::string name;
    std::vector<double> features; // rows * n_cols, row-major
    std::vector<int> labels;      // 0-based contiguous class ids
    int n_cols = 0;
    int n_classes = 0;

    int rows() const { return static_cast<int>(labels.size()); }
    std::span<const double> row(int i) const {
        return {features.data() + static_cast<std::size_t>(i) * n_cols,
                static_cast<std::size_t>(n_cols)};
    }
};

struct Split {
    std::vector<int> train_indices;
    std::vector<int> val_indices;
    std::uint64_t seed = 0;
};

struct CsvSchema {
    // Label column by header name, or by index when name is empty
    // (negative counts from the end; -1 = last column).
    std::string label_column_name;
    int label_column_index = -1;
    char delimiter = ',';
    bool has_header = true;
};

// Parses a numeric CSV into a typed Dataset. Label values are remapped
// to 0-based contiguous ids in order of first appearance.
Dataset load_csv(const std::string &path, const CsvSchema &schema = {});

void save_csv(const Dataset &dataset, const std::string &path);

// Bundled copies of the two UCI classics. Accepts iris | iris2 | wine |
// wine2, where the "2" variants drop class index 2 for the binary task.
// Set QLTH_DATA_DIR to override the bundled location.
Dataset load_builtin(const std::string &name);
bool is_builtin_dataset(const std::string &name);
std::string builtin_dataset_path(const std::string &file_name);

// Binary variant: rows with class index 2 removed, survivor order kept.
Dataset simplify(const Dataset &dataset);

// Stratified seeded split; each class contributes round(fraction * n_c)
// training rows (clamped so both sides stay nonempty).
Split split(const Dataset &dataset, double fraction, std::uint64_t seed);

// Per-column min-max map into [lo, hi] with statistics taken from the
// training rows only, applied to every row. A column constant on the
// training rows maps to the midpoint (with a warning on stderr).
Dataset scale_features(const Dataset &dataset, const Split &split, double lo,
                       double hi);

} // namespace qlth
