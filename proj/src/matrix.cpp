#include "xscore/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace xscore {

namespace detail {

void check_identifier(const std::string& name, const char* what) {
    if (name.empty()) {
        throw error(errc::bad_identifier, std::string(what) + " name is empty");
    }
    if (std::isspace(static_cast<unsigned char>(name.front())) ||
        std::isspace(static_cast<unsigned char>(name.back()))) {
        throw error(errc::bad_identifier,
                    std::string(what) + " name '" + name + "' has leading or trailing whitespace");
    }
}

} // namespace detail

namespace {

void check_accuracy_range(const std::string& model, const std::string& dataset, double value) {
    if (!(value >= 0.0 && value <= 100.0)) {
        std::ostringstream msg;
        msg << "accuracy " << value << " for (" << model << ", " << dataset
            << ") is outside [0, 100]";
        throw error(errc::out_of_range, msg.str());
    }
}

std::optional<std::size_t> index_of(const std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
}

void check_params(const std::vector<std::string>& models,
                  const std::map<std::string, double>& params) {
    for (const auto& [model, value] : params) {
        if (!index_of(models, model)) {
            throw error(errc::model_set_mismatch,
                        "parameter metadata names unknown model '" + model + "'");
        }
        if (!(value > 0.0)) {
            throw error(errc::out_of_range,
                        "parameter count for '" + model + "' must be positive");
        }
    }
}

} // namespace

const AnchorEntry* AnchorTable::find(const std::string& dataset) const noexcept {
    for (const auto& entry : entries) {
        if (entry.dataset == dataset) return &entry;
    }
    return nullptr;
}

bool operator==(const AnchorEntry& a, const AnchorEntry& b) noexcept {
    return a.dataset == b.dataset && a.min == b.min && a.max == b.max;
}

bool operator==(const AnchorTable& a, const AnchorTable& b) noexcept {
    return a.source == b.source && a.entries == b.entries;
}

bool operator==(const AccuracyMatrix& a, const AccuracyMatrix& b) noexcept {
    return a.models() == b.models() && a.datasets() == b.datasets() &&
           a.values() == b.values() && a.params() == b.params();
}

std::optional<std::size_t> AccuracyMatrix::model_index(const std::string& name) const noexcept {
    return index_of(models_, name);
}

std::optional<std::size_t> AccuracyMatrix::dataset_index(const std::string& name) const noexcept {
    return index_of(datasets_, name);
}

std::optional<double> AccuracyMatrix::params_millions(const std::string& model) const noexcept {
    auto it = params_.find(model);
    if (it == params_.end()) return std::nullopt;
    return it->second;
}

AccuracyMatrix AccuracyMatrix::restricted_to(std::span<const std::string> datasets) const {
    std::vector<std::size_t> cols;
    cols.reserve(datasets.size());
    for (const auto& name : datasets) {
        auto idx = dataset_index(name);
        if (!idx) {
            throw error(errc::unknown_dataset, "dataset '" + name + "' not in matrix");
        }
        cols.push_back(*idx);
    }
    AccuracyMatrix out;
    out.models_ = models_;
    out.datasets_.assign(datasets.begin(), datasets.end());
    out.values_.reserve(models_.size() * cols.size());
    for (std::size_t r = 0; r < models_.size(); ++r) {
        for (std::size_t c : cols) {
            out.values_.push_back(at(r, c));
        }
    }
    out.params_ = params_;
    out.label_ = label_;
    return out;
}

AccuracyMatrix AccuracyMatrix::with_params(std::map<std::string, double> params) const {
    check_params(models_, params);
    AccuracyMatrix out = *this;
    out.params_ = std::move(params);
    return out;
}

AccuracyMatrix build_matrix(std::span<const CellRecord> records,
                            const std::map<std::string, double>& params,
                            std::string label) {
    if (records.empty()) {
        throw error(errc::too_few_models, "no records given");
    }

    AccuracyMatrix m;
    std::unordered_map<std::string, std::size_t> model_idx;
    std::unordered_map<std::string, std::size_t> dataset_idx;
    for (const auto& rec : records) {
        detail::check_identifier(rec.model, "model");
        detail::check_identifier(rec.dataset, "dataset");
        if (model_idx.emplace(rec.model, m.models_.size()).second) {
            m.models_.push_back(rec.model);
        }
        if (dataset_idx.emplace(rec.dataset, m.datasets_.size()).second) {
            m.datasets_.push_back(rec.dataset);
        }
    }

    const std::size_t k = m.models_.size();
    const std::size_t n = m.datasets_.size();
    m.values_.assign(k * n, 0.0);
    std::vector<bool> present(k * n, false);

    for (const auto& rec : records) {
        check_accuracy_range(rec.model, rec.dataset, rec.accuracy);
        const std::size_t cell = model_idx[rec.model] * n + dataset_idx[rec.dataset];
        if (present[cell]) {
            throw error(errc::duplicate_cell,
                        "duplicate record for (" + rec.model + ", " + rec.dataset + ")");
        }
        present[cell] = true;
        m.values_[cell] = rec.accuracy;
    }

    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (!present[r * n + c]) {
                throw error(errc::missing_cell,
                            "no accuracy for (" + m.models_[r] + ", " + m.datasets_[c] + ")");
            }
        }
    }

    if (k < 2) {
        throw error(errc::too_few_models,
                    "normalization needs at least two models per column, got " + std::to_string(k));
    }

    check_params(m.models_, params);
    m.params_ = params;
    m.label_ = std::move(label);
    return m;
}

AnchorTable column_extrema(const AccuracyMatrix& matrix) {
    AnchorTable table;
    table.source = matrix.label();
    table.entries.reserve(matrix.dataset_count());
    for (std::size_t c = 0; c < matrix.dataset_count(); ++c) {
        double lo = matrix.at(0, c);
        double hi = lo;
        for (std::size_t r = 1; r < matrix.model_count(); ++r) {
            lo = std::min(lo, matrix.at(r, c));
            hi = std::max(hi, matrix.at(r, c));
        }
        if (!(hi > lo)) {
            throw error(errc::degenerate_column,
                        "all models score " + std::to_string(lo) + " on '" +
                            matrix.datasets()[c] + "'; normalization span is zero");
        }
        table.entries.push_back({matrix.datasets()[c], lo, hi});
    }
    return table;
}

std::vector<ComparabilityWarning> validate_comparability(const AccuracyMatrix& matrix,
                                                         double ratio_threshold) {
    if (!(ratio_threshold > 1.0)) {
        throw error(errc::out_of_range, "comparability ratio threshold must be > 1");
    }
    std::vector<std::pair<std::string, double>> annotated;
    for (const auto& model : matrix.models()) {
        if (auto p = matrix.params_millions(model)) {
            annotated.emplace_back(model, *p);
        }
    }
    std::vector<ComparabilityWarning> warnings;
    if (annotated.size() < 2) return warnings;
    for (std::size_t i = 0; i < annotated.size(); ++i) {
        for (std::size_t j = i + 1; j < annotated.size(); ++j) {
            const double a = annotated[i].second;
            const double b = annotated[j].second;
            const double ratio = std::max(a, b) / std::min(a, b);
            if (ratio > ratio_threshold) {
                warnings.push_back({annotated[i].first, annotated[j].first, a, b, ratio});
            }
        }
    }
    return warnings;
}

} // namespace xscore
