#include "xscore/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace xscore {

namespace {

void check_anchor_span(const AnchorEntry& entry) {
    if (!(entry.max > entry.min)) {
        throw error(errc::degenerate_anchor,
                    "anchor for '" + entry.dataset + "' has max <= min");
    }
}

/// Mean / sample variance / xscore over one normalized row, accumulated in
/// column index order so results are bit-reproducible across runs.
void score_row(std::span<const double> row, double lambda, ScoreRecord& out) {
    const std::size_t n = row.size();
    double sum = 0.0;
    for (double v : row) sum += v;
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (double v : row) {
        const double d = v - mean;
        sq += d * d;
    }
    out.mean_score = mean;
    out.variance = sq / static_cast<double>(n - 1);
    out.xscore = mean - lambda * out.variance;
}

void flag_out_of_range(const std::vector<std::string>& datasets, ScoreRecord& rec) {
    for (std::size_t c = 0; c < rec.normalized_row.size(); ++c) {
        const double v = rec.normalized_row[c];
        if (v < 0.0 || v > 1.0) {
            rec.out_of_range.push_back(datasets[c]);
        }
    }
}

} // namespace

Lambda::Lambda(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw error(errc::out_of_range, "lambda must lie in [0, 1]");
    }
}

NormalizedMatrix normalize(const AccuracyMatrix& matrix, const AnchorTable& anchors) {
    NormalizedMatrix norm;
    norm.models = matrix.models();
    norm.datasets = matrix.datasets();
    norm.anchors_used.source = anchors.source;

    std::vector<const AnchorEntry*> cols;
    cols.reserve(matrix.dataset_count());
    for (const auto& dataset : matrix.datasets()) {
        const AnchorEntry* entry = anchors.find(dataset);
        if (!entry) {
            throw error(errc::anchor_missing, "no anchor for dataset '" + dataset + "'");
        }
        check_anchor_span(*entry);
        cols.push_back(entry);
        norm.anchors_used.entries.push_back(*entry);
    }

    norm.values.reserve(matrix.model_count() * matrix.dataset_count());
    for (std::size_t r = 0; r < matrix.model_count(); ++r) {
        for (std::size_t c = 0; c < matrix.dataset_count(); ++c) {
            const AnchorEntry& a = *cols[c];
            norm.values.push_back((matrix.at(r, c) - a.min) / (a.max - a.min));
        }
    }
    return norm;
}

std::vector<ScoreRecord> aggregate(const NormalizedMatrix& normalized, Lambda lambda) {
    const std::size_t n = normalized.datasets.size();
    if (n < 2) {
        throw error(errc::too_few_datasets,
                    "sample variance needs at least two datasets, got " + std::to_string(n));
    }
    std::vector<ScoreRecord> records;
    records.reserve(normalized.models.size());
    for (std::size_t r = 0; r < normalized.models.size(); ++r) {
        ScoreRecord rec;
        rec.model = normalized.models[r];
        rec.normalized_row.assign(normalized.values.begin() + static_cast<std::ptrdiff_t>(r * n),
                                  normalized.values.begin() + static_cast<std::ptrdiff_t>((r + 1) * n));
        score_row(rec.normalized_row, lambda.value(), rec);
        flag_out_of_range(normalized.datasets, rec);
        records.push_back(std::move(rec));
    }

    const std::vector<ScoreRecord> ranked = rank(records);
    std::unordered_map<std::string, int> rank_of;
    rank_of.reserve(ranked.size());
    for (const auto& rec : ranked) rank_of.emplace(rec.model, rec.rank);
    for (auto& rec : records) rec.rank = rank_of.at(rec.model);
    return records;
}

ScoreRecord score_against_anchors(const std::string& model,
                                  const std::map<std::string, double>& accuracies,
                                  const AnchorTable& anchors,
                                  Lambda lambda) {
    detail::check_identifier(model, "model");
    if (anchors.size() < 2) {
        throw error(errc::too_few_datasets,
                    "sample variance needs at least two anchored datasets, got " +
                        std::to_string(anchors.size()));
    }
    for (const auto& [dataset, value] : accuracies) {
        if (!anchors.find(dataset)) {
            throw error(errc::anchor_missing, "no anchor for dataset '" + dataset + "'");
        }
        if (!(value >= 0.0 && value <= 100.0)) {
            throw error(errc::out_of_range,
                        "accuracy for '" + dataset + "' is outside [0, 100]");
        }
    }

    ScoreRecord rec;
    rec.model = model;
    std::vector<std::string> datasets;
    datasets.reserve(anchors.size());
    for (const auto& entry : anchors.entries) {
        check_anchor_span(entry);
        auto it = accuracies.find(entry.dataset);
        if (it == accuracies.end()) {
            throw error(errc::missing_cell,
                        "no accuracy for anchored dataset '" + entry.dataset + "'");
        }
        rec.normalized_row.push_back((it->second - entry.min) / (entry.max - entry.min));
        datasets.push_back(entry.dataset);
    }
    score_row(rec.normalized_row, lambda.value(), rec);
    flag_out_of_range(datasets, rec);
    rec.rank = 1;
    return rec;
}

std::vector<ScoreRecord> rank(std::vector<ScoreRecord> records) {
    std::sort(records.begin(), records.end(), [](const ScoreRecord& a, const ScoreRecord& b) {
        if (a.xscore != b.xscore) return a.xscore > b.xscore;
        if (a.mean_score != b.mean_score) return a.mean_score > b.mean_score;
        return a.model < b.model;
    });
    for (std::size_t i = 0; i < records.size(); ++i) {
        records[i].rank = static_cast<int>(i) + 1;
    }
    return records;
}

} // namespace xscore
