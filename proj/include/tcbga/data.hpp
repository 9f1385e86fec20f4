#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <string>
#include <vector>

namespace tcbga {

/// Dense row-major instance matrix with integer class labels in [0, C).
struct Dataset {
    std::string name;
    std::size_t n_instances = 0;
    std::size_t n_features = 0;
    std::vector<double> values;
    std::vector<int> labels;
    std::vector<std::string> feature_names;
    /// class_names[c] is the original token of class c.
    std::vector<std::string> class_names;

    std::size_t n_classes() const noexcept { return class_names.size(); }
    double at(std::size_t row, std::size_t col) const noexcept { return values[row * n_features + col]; }
    std::vector<std::size_t> class_sizes() const;
};

enum class MissingPolicy { DropRow, ImputeMean };

struct CsvSchema {
    /// Column name (with a header) or 0-based index; empty means last column.
    std::string label_column;
    char delimiter = ',';
    bool header = true;
    MissingPolicy missing = MissingPolicy::DropRow;
    std::vector<std::string> missing_tokens{"?", "", "NA", "NaN", "nan"};
    /// Columns to ignore entirely (names or indices), e.g. sample ids.
    std::vector<std::string> drop_columns;
};

struct LoadReport {
    std::size_t rows_read = 0;
    std::size_t rows_dropped = 0;
    std::size_t cells_imputed = 0;
    /// Feature columns that held non-numeric tokens and were integer coded.
    std::vector<std::string> categorical_columns;
};

struct LoadedDataset {
    Dataset dataset;
    LoadReport report;
};

/// Parse a delimited file. Labels are mapped to dense integers in order of
/// first appearance. Throws DataError on an unreadable file, a missing label
/// column, ragged rows, or fewer than two classes.
LoadedDataset load_csv(const std::filesystem::path& path, const CsvSchema& schema = {});
LoadedDataset parse_csv(std::string_view text, const CsvSchema& schema, std::string name = "inline");

/// Header row of feature names plus "class"; values written at full precision.
void write_csv(const Dataset& dataset, const std::filesystem::path& path);

/// Row subset of a dataset, in the given order.
Dataset select_rows(const Dataset& dataset, const std::vector<std::size_t>& rows);

struct FoldPlan {
    std::size_t k = 0;
    std::uint64_t seed = 0;
    /// assignment[i] is the test fold of instance i.
    std::vector<std::size_t> assignment;
    std::vector<std::string> warnings;

    std::vector<std::size_t> test_indices(std::size_t fold) const;
    std::vector<std::size_t> train_indices(std::size_t fold) const;
};

/// Stratified k-fold assignment. Each class is shuffled and dealt round
/// robin, continuing the deal across classes, so fold sizes differ by at
/// most one overall and per class. k is reduced (with a warning) when a
/// class has fewer than k members.
FoldPlan stratified_folds(const std::vector<int>& labels, std::size_t n_classes, std::size_t k,
                          std::uint64_t seed);
FoldPlan stratified_folds(const Dataset& dataset, std::size_t k, std::uint64_t seed);

/// Entry of a dataset-descriptor file: {"datasets": [ {...}, ... ]}.
struct DatasetDescriptor {
    std::string name;
    std::string file;
    std::string url;
    CsvSchema schema;
    /// Expected shape before any missing-value handling.
    std::size_t features = 0;
    std::size_t instances = 0;
    std::size_t classes = 0;
    /// Hex SHA-256 of `file`; empty when unknown.
    std::string sha256;
    std::string notes;
};

std::vector<DatasetDescriptor> load_descriptors(const std::filesystem::path& path);
const DatasetDescriptor& find_descriptor(const std::vector<DatasetDescriptor>& all, const std::string& name);

/// Load `desc.file` relative to `base_dir` and check it against the
/// expected shape. Throws DataError on a mismatch.
LoadedDataset load_described(const DatasetDescriptor& desc, const std::filesystem::path& base_dir);

/// Empty when the loaded data matches the descriptor's N, I and class count.
std::vector<std::string> check_shape(const DatasetDescriptor& desc, const LoadedDataset& loaded);

} // namespace tcbga
