#include "xscore/subset.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "stats_util.hpp"

namespace xscore {

namespace {

constexpr double kEnumerationGuard = 1e6;

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return c;
}

/// xscores from both sequences paired by model, in the full sequence's order.
std::pair<std::vector<double>, std::vector<double>> paired_xscores(
    const std::vector<ScoreRecord>& full, const std::vector<ScoreRecord>& subset) {
    if (full.size() != subset.size()) {
        throw error(errc::model_set_mismatch,
                    "sequences cover " + std::to_string(full.size()) + " vs " +
                        std::to_string(subset.size()) + " models");
    }
    std::unordered_map<std::string, double> by_model;
    by_model.reserve(subset.size());
    for (const auto& rec : subset) by_model.emplace(rec.model, rec.xscore);
    std::vector<double> xs, ys;
    xs.reserve(full.size());
    ys.reserve(full.size());
    for (const auto& rec : full) {
        auto it = by_model.find(rec.model);
        if (it == by_model.end()) {
            throw error(errc::model_set_mismatch,
                        "model '" + rec.model + "' missing from subset records");
        }
        xs.push_back(rec.xscore);
        ys.push_back(it->second);
    }
    return {std::move(xs), std::move(ys)};
}

struct PairCounts {
    std::size_t concordant = 0;
    std::size_t discordant = 0;
    std::size_t total = 0;
};

PairCounts count_pairs(const std::vector<double>& xs, const std::vector<double>& ys) {
    PairCounts pc;
    const std::size_t k = xs.size();
    pc.total = k * (k - 1) / 2;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double a = xs[i] - xs[j];
            const double b = ys[i] - ys[j];
            if (a * b > 0.0) {
                ++pc.concordant;
            } else if (a * b < 0.0) {
                ++pc.discordant;
            }
            // ties in either sequence count as neither
        }
    }
    return pc;
}

} // namespace

bool objective_maximizes(FidelityObjective objective) noexcept {
    return objective != FidelityObjective::score_mae;
}

const char* objective_name(FidelityObjective objective) noexcept {
    switch (objective) {
        case FidelityObjective::kendall_tau: return "kendall_tau";
        case FidelityObjective::spearman_rho: return "spearman_rho";
        case FidelityObjective::pairwise_agreement: return "pairwise_agreement";
        case FidelityObjective::score_mae: return "score_mae";
    }
    return "unknown";
}

std::optional<FidelityObjective> objective_from_name(std::string_view name) noexcept {
    for (FidelityObjective objective : kAllObjectives) {
        if (name == objective_name(objective)) return objective;
    }
    return std::nullopt;
}

std::vector<std::vector<std::string>> enumerate_k_subsets(std::vector<std::string> datasets,
                                                          std::size_t k) {
    const std::size_t n = datasets.size();
    if (k < 1 || k > n) {
        throw error(errc::bad_subset_size,
                    "subset size " + std::to_string(k) + " not in [1, " + std::to_string(n) + "]");
    }
    const double count = binomial(n, k);
    if (count > kEnumerationGuard) {
        throw error(errc::bad_subset_size,
                    "C(" + std::to_string(n) + ", " + std::to_string(k) +
                        ") exceeds the brute-force guard of 10^6");
    }
    std::sort(datasets.begin(), datasets.end());

    std::vector<std::vector<std::string>> subsets;
    subsets.reserve(static_cast<std::size_t>(count));
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::vector<std::string> subset;
        subset.reserve(k);
        for (std::size_t i : idx) subset.push_back(datasets[i]);
        subsets.push_back(std::move(subset));

        // advance to the next combination in lexicographic index order
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return subsets;
}

double rank_fidelity(const std::vector<ScoreRecord>& full,
                     const std::vector<ScoreRecord>& subset,
                     FidelityObjective objective) {
    auto [xs, ys] = paired_xscores(full, subset);
    const std::size_t k = xs.size();
    if (k < 2) {
        throw error(errc::too_few_models, "fidelity needs at least two models");
    }

    switch (objective) {
        case FidelityObjective::kendall_tau: {
            const PairCounts pc = count_pairs(xs, ys);
            return (static_cast<double>(pc.concordant) - static_cast<double>(pc.discordant)) /
                   static_cast<double>(pc.total);
        }
        case FidelityObjective::pairwise_agreement: {
            const PairCounts pc = count_pairs(xs, ys);
            return static_cast<double>(pc.concordant) / static_cast<double>(pc.total);
        }
        case FidelityObjective::spearman_rho: {
            const std::vector<double> rx = detail::average_ranks(xs);
            const std::vector<double> ry = detail::average_ranks(ys);
            double d2 = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                const double d = rx[i] - ry[i];
                d2 += d * d;
            }
            const double kd = static_cast<double>(k);
            return 1.0 - 6.0 * d2 / (kd * (kd * kd - 1.0));
        }
        case FidelityObjective::score_mae: {
            double sum = 0.0;
            for (std::size_t i = 0; i < k; ++i) sum += std::abs(xs[i] - ys[i]);
            return sum / static_cast<double>(k);
        }
    }
    throw error(errc::bad_subset_size, "unreachable objective");
}

SubsetReport select_proxy_subset(const AccuracyMatrix& matrix,
                                 std::size_t k,
                                 Lambda lambda,
                                 FidelityObjective objective) {
    if (k < 2 || k > matrix.dataset_count()) {
        throw error(errc::bad_subset_size,
                    "subset size " + std::to_string(k) + " not in [2, " +
                        std::to_string(matrix.dataset_count()) + "]");
    }

    SubsetReport report;
    report.k = k;
    report.objective = objective;
    report.lambda = lambda.value();
    report.full_records = aggregate(normalize(matrix, column_extrema(matrix)), lambda);

    const auto subsets = enumerate_k_subsets(matrix.datasets(), k);
    report.candidates.reserve(subsets.size());
    for (const auto& subset : subsets) {
        // restrict by dropping columns, keeping matrix column order, so the
        // k = N candidate reproduces the full scores bit for bit
        std::vector<std::string> ordered;
        ordered.reserve(subset.size());
        for (const auto& dataset : matrix.datasets()) {
            if (std::find(subset.begin(), subset.end(), dataset) != subset.end()) {
                ordered.push_back(dataset);
            }
        }
        const AccuracyMatrix restricted = matrix.restricted_to(ordered);
        SubsetCandidate candidate;
        candidate.datasets = subset;
        candidate.records = aggregate(normalize(restricted, column_extrema(restricted)), lambda);
        candidate.fidelity = rank_fidelity(report.full_records, candidate.records, objective);
        report.candidates.push_back(std::move(candidate));
    }

    // stable sort keeps equal-fidelity candidates in lexicographic tuple
    // order, which is the documented tie-break for best()
    const bool maximize = objective_maximizes(objective);
    std::stable_sort(report.candidates.begin(), report.candidates.end(),
                     [maximize](const SubsetCandidate& a, const SubsetCandidate& b) {
                         return maximize ? a.fidelity > b.fidelity : a.fidelity < b.fidelity;
                     });
    return report;
}

} // namespace xscore
