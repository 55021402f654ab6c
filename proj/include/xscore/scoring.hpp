#pragma once

#include <map>
#include <string>
#include <vector>

#include "xscore/matrix.hpp"

namespace xscore {

/// Variance penalty weight, constrained to [0,1]. Defaults to 0.5.
class Lambda {
public:
    Lambda() = default;
    explicit Lambda(double value);

    double value() const noexcept { return value_; }

private:
    double value_ = 0.5;
};

/// Column-normalized score grid. With anchors derived from the same matrix
/// every value lies in [0,1] and each column attains both 0 and 1; external
/// anchors may push values outside [0,1] (never clipped).
struct NormalizedMatrix {
    std::vector<std::string> models;
    std::vector<std::string> datasets;
    std::vector<double> values; // row-major K x N
    AnchorTable anchors_used;   // entries reordered to column order

    double at(std::size_t row, std::size_t col) const { return values.at(row * datasets.size() + col); }
};

/// Per-model scoring outcome: normalized row, its mean, sample variance,
/// xscore = mean - lambda * variance, and the 1-based rank (1 = best).
struct ScoreRecord {
    std::string model;
    std::vector<double> normalized_row;
    double mean_score = 0.0; // G
    double variance = 0.0;   // V, sample convention (N - 1)
    double xscore = 0.0;
    int rank = 0;
    /// Datasets whose normalized value fell outside [0,1] (only possible
    /// under external anchors).
    std::vector<std::string> out_of_range;
};

/// Apply per-column min/max normalization: (value - min) / (max - min) with
/// the anchor pair for that column. Anchors must cover every matrix column
/// (anchor_missing) and satisfy max > min (degenerate_anchor). No clipping.
NormalizedMatrix normalize(const AccuracyMatrix& matrix, const AnchorTable& anchors);

/// Mean, sample variance (divisor N-1) and xscore per model, summed in fixed
/// column order. Records come back in input model order with ranks already
/// assigned. Requires N >= 2 (too_few_datasets).
std::vector<ScoreRecord> aggregate(const NormalizedMatrix& normalized, Lambda lambda);

/// Score one model against a frozen anchor registry. The model must provide
/// an accuracy for every anchored dataset (missing_cell) and nothing else
/// (anchor_missing); values outside the anchor span are flagged, not clipped.
ScoreRecord score_against_anchors(const std::string& model,
                                  const std::map<std::string, double>& accuracies,
                                  const AnchorTable& anchors,
                                  Lambda lambda);

/// Records ordered best-first: descending xscore, ties broken by higher mean,
/// then lexicographic model name. Ranks are assigned 1..K with no gaps.
std::vector<ScoreRecord> rank(std::vector<ScoreRecord> records);

} // namespace xscore
