#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xscore/scoring.hpp"

namespace xscore {

/// How closely a dataset subset's ranking reproduces the full one.
/// kendall_tau counts tied pairs as neither concordant nor discordant;
/// spearman_rho uses average ranks for ties.
enum class FidelityObjective {
    kendall_tau,        // maximize, in [-1, 1]
    spearman_rho,       // maximize, in [-1, 1]
    pairwise_agreement, // maximize, in [0, 1]
    score_mae,          // minimize, >= 0
};

constexpr FidelityObjective kAllObjectives[] = {
    FidelityObjective::kendall_tau,
    FidelityObjective::spearman_rho,
    FidelityObjective::pairwise_agreement,
    FidelityObjective::score_mae,
};

bool objective_maximizes(FidelityObjective objective) noexcept;
const char* objective_name(FidelityObjective objective) noexcept;
std::optional<FidelityObjective> objective_from_name(std::string_view name) noexcept;

/// All C(N,k) subsets of the given dataset names, each sorted, emitted in
/// lexicographic order of the sorted name tuples. Throws bad_subset_size for
/// k < 1, k > N, or C(N,k) above the brute-force guard of 10^6.
std::vector<std::vector<std::string>> enumerate_k_subsets(std::vector<std::string> datasets,
                                                          std::size_t k);

/// Agreement between two score sequences over the same model set.
/// Maximizing objectives peak at 1.0 for identical orderings; score_mae is
/// the mean absolute xscore difference. Throws model_set_mismatch.
double rank_fidelity(const std::vector<ScoreRecord>& full,
                     const std::vector<ScoreRecord>& subset,
                     FidelityObjective objective);

/// One evaluated dataset subset: the sorted names, the restricted-score
/// records, and the fidelity of the restricted ranking to the full one.
/// Record rows follow the source matrix's column order (columns dropped in
/// place), not the sorted tuple order.
struct SubsetCandidate {
    std::vector<std::string> datasets;
    std::vector<ScoreRecord> records;
    double fidelity = 0.0;
};

/// Exhaustive search result. Candidates hold all C(N,k) subsets sorted by
/// fidelity (best first); equal-fidelity candidates stay in lexicographic
/// dataset-tuple order, so `best()` is the extremal candidate with the
/// lexicographically smallest tuple on ties.
struct SubsetReport {
    std::size_t k = 0;
    FidelityObjective objective = FidelityObjective::kendall_tau;
    double lambda = 0.5;
    std::vector<ScoreRecord> full_records;
    std::vector<SubsetCandidate> candidates;

    const SubsetCandidate& best() const { return candidates.front(); }
};

/// Brute-force proxy-subset selection: for every k-subset of the matrix's
/// datasets, re-derive anchors restricted to those columns, score, and
/// measure fidelity against the full-matrix ranking. Requires 2 <= k <= N
/// (restricted sample variance needs two columns). Fully deterministic.
SubsetReport select_proxy_subset(const AccuracyMatrix& matrix,
                                 std::size_t k,
                                 Lambda lambda,
                                 FidelityObjective objective);

} // namespace xscore
