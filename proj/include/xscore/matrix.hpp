#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xscore/error.hpp"

namespace xscore {

/// One observed accuracy: model `model` scored `accuracy` percent on `dataset`.
struct CellRecord {
    std::string model;
    std::string dataset;
    double accuracy = 0.0;
};

/// Per-dataset normalization bounds. `min`/`max` are accuracy percents with
/// max strictly greater than min.
struct AnchorEntry {
    std::string dataset;
    double min = 0.0;
    double max = 0.0;
};

/// Ordered registry of anchors plus a provenance label. Entries are unique
/// per dataset; order is meaningful (it fixes downstream summation order).
struct AnchorTable {
    std::vector<AnchorEntry> entries;
    std::string source;

    const AnchorEntry* find(const std::string& dataset) const noexcept;
    std::size_t size() const noexcept { return entries.size(); }
};

bool operator==(const AnchorEntry& a, const AnchorEntry& b) noexcept;
bool operator==(const AnchorTable& a, const AnchorTable& b) noexcept;

/// Dense K x N grid of accuracy percents. Rows are models, columns are
/// datasets, both in first-appearance order. Immutable after construction;
/// all invariants (dense, values in [0,100], unique ids, K >= 2) hold.
class AccuracyMatrix {
public:
    const std::vector<std::string>& models() const noexcept { return models_; }
    const std::vector<std::string>& datasets() const noexcept { return datasets_; }
    std::size_t model_count() const noexcept { return models_.size(); }
    std::size_t dataset_count() const noexcept { return datasets_.size(); }

    double at(std::size_t row, std::size_t col) const { return values_.at(row * datasets_.size() + col); }
    std::span<const double> row(std::size_t r) const {
        return std::span<const double>(values_).subspan(r * datasets_.size(), datasets_.size());
    }
    const std::vector<double>& values() const noexcept { return values_; }

    std::optional<std::size_t> model_index(const std::string& name) const noexcept;
    std::optional<std::size_t> dataset_index(const std::string& name) const noexcept;

    /// Parameter count in millions, when metadata was supplied for this model.
    std::optional<double> params_millions(const std::string& model) const noexcept;
    const std::map<std::string, double>& params() const noexcept { return params_; }

    /// Free-text provenance (typically the source file name).
    const std::string& label() const noexcept { return label_; }

    /// Copy of this matrix restricted to the given dataset columns, in the
    /// given order. Unknown names raise unknown_dataset.
    AccuracyMatrix restricted_to(std::span<const std::string> datasets) const;

    /// Same matrix with parameter-count metadata attached. Keys must be a
    /// subset of the matrix's models; values must be positive.
    AccuracyMatrix with_params(std::map<std::string, double> params) const;

    friend AccuracyMatrix build_matrix(std::span<const CellRecord> records,
                                       const std::map<std::string, double>& params,
                                       std::string label);

private:
    AccuracyMatrix() = default;

    std::vector<std::string> models_;
    std::vector<std::string> datasets_;
    std::vector<double> values_; // row-major K x N
    std::map<std::string, double> params_;
    std::string label_;
};

bool operator==(const AccuracyMatrix& a, const AccuracyMatrix& b) noexcept;

/// Assemble a dense matrix from (model, dataset, accuracy) records. Row order
/// is first appearance of each model, column order first appearance of each
/// dataset. Throws duplicate_cell, missing_cell, out_of_range, too_few_models,
/// bad_identifier.
AccuracyMatrix build_matrix(std::span<const CellRecord> records,
                            const std::map<std::string, double>& params = {},
                            std::string label = {});

/// Per-column (min, max) over all models. Throws degenerate_column when a
/// column's extrema coincide. The result's source is the matrix label.
AnchorTable column_extrema(const AccuracyMatrix& matrix);

/// Advisory notice that two models differ too much in capacity for their
/// scores to be compared directly.
struct ComparabilityWarning {
    std::string model_a;
    std::string model_b;
    double params_a = 0.0;
    double params_b = 0.0;
    double ratio = 0.0; // larger / smaller, > 1
};

/// One warning per model pair whose parameter-count ratio exceeds
/// `ratio_threshold` (default 1.5). Pairs follow matrix row order. Models
/// without metadata are skipped; fewer than two annotated models yields an
/// empty list. Never an error; the threshold itself must be > 1.
std::vector<ComparabilityWarning> validate_comparability(const AccuracyMatrix& matrix,
                                                         double ratio_threshold = 1.5);

namespace detail {
/// Identifier rules shared by model and dataset names: non-empty, no
/// leading/trailing whitespace.
void check_identifier(const std::string& name, const char* what);
} // namespace detail

} // namespace xscore
