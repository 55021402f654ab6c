#include "xscore/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "stats_util.hpp"

namespace xscore {

namespace {

/// xscores aligned to the given model order; throws when the record set does
/// not cover exactly those models.
std::vector<double> xscores_for(const std::vector<std::string>& models,
                                const std::vector<ScoreRecord>& records) {
    if (records.size() != models.size()) {
        throw error(errc::model_set_mismatch,
                    "records cover " + std::to_string(records.size()) + " models, expected " +
                        std::to_string(models.size()));
    }
    std::unordered_map<std::string, double> by_model;
    by_model.reserve(records.size());
    for (const auto& rec : records) by_model.emplace(rec.model, rec.xscore);
    std::vector<double> xs;
    xs.reserve(models.size());
    for (const auto& model : models) {
        auto it = by_model.find(model);
        if (it == by_model.end()) {
            throw error(errc::model_set_mismatch, "no record for model '" + model + "'");
        }
        xs.push_back(it->second);
    }
    return xs;
}

} // namespace

CorrelationReport correlate_accuracy_vs_xscore(const AccuracyMatrix& matrix,
                                               const std::vector<ScoreRecord>& records,
                                               const std::string& dataset) {
    const auto col = matrix.dataset_index(dataset);
    if (!col) {
        throw error(errc::unknown_dataset, "dataset '" + dataset + "' not in matrix");
    }
    if (matrix.model_count() < 3) {
        throw error(errc::too_few_models, "correlation needs at least three models");
    }
    const std::vector<double> ys = xscores_for(matrix.models(), records);
    std::vector<double> xs;
    xs.reserve(matrix.model_count());
    for (std::size_t r = 0; r < matrix.model_count(); ++r) {
        xs.push_back(matrix.at(r, *col));
    }

    const detail::MomentSums m = detail::moment_sums(xs, ys);
    if (m.sxx == 0.0 || m.syy == 0.0) {
        throw error(errc::constant_variable,
                    std::string("zero variance in ") +
                        (m.sxx == 0.0 ? "accuracy" : "xscore") + " series");
    }

    CorrelationReport report;
    report.dataset = dataset;
    report.n = matrix.model_count();
    report.pearson_r = m.sxy / std::sqrt(m.sxx * m.syy);
    report.ols_slope = m.sxy / m.sxx;
    report.ols_intercept = m.mean_y - report.ols_slope * m.mean_x;

    const std::vector<double> rx = detail::average_ranks(xs);
    const std::vector<double> ry = detail::average_ranks(ys);
    double d2 = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double d = rx[i] - ry[i];
        d2 += d * d;
    }
    const double k = static_cast<double>(matrix.model_count());
    report.spearman_rho = 1.0 - 6.0 * d2 / (k * (k * k - 1.0));
    return report;
}

bool operator==(const ElementMatrix& a, const ElementMatrix& b) noexcept {
    return a.models == b.models && a.elements == b.elements && a.flags == b.flags;
}

ElementMatrix make_element_matrix(std::vector<std::string> models,
                                  std::vector<std::string> elements,
                                  std::vector<std::uint8_t> flags) {
    std::set<std::string> seen;
    for (const auto& model : models) {
        detail::check_identifier(model, "model");
        if (!seen.insert(model).second) {
            throw error(errc::bad_identifier, "duplicate model '" + model + "'");
        }
    }
    seen.clear();
    for (const auto& element : elements) {
        detail::check_identifier(element, "element");
        if (!seen.insert(element).second) {
            throw error(errc::bad_identifier, "duplicate element '" + element + "'");
        }
    }
    if (flags.size() != models.size() * elements.size()) {
        throw error(errc::missing_cell, "flag grid is not dense");
    }
    for (std::uint8_t f : flags) {
        if (f > 1) {
            throw error(errc::out_of_range, "element flags must be 0 or 1");
        }
    }
    ElementMatrix em;
    em.models = std::move(models);
    em.elements = std::move(elements);
    em.flags = std::move(flags);
    return em;
}

std::vector<ElementAssociation> element_associations(const ElementMatrix& elements,
                                                     const std::vector<ScoreRecord>& records) {
    const std::vector<double> xs = xscores_for(elements.models, records);
    const bool xscore_constant =
        std::all_of(xs.begin(), xs.end(), [&](double v) { return v == xs.front(); });

    std::vector<ElementAssociation> out;
    out.reserve(elements.elements.size());
    for (std::size_t e = 0; e < elements.elements.size(); ++e) {
        ElementAssociation assoc;
        assoc.element = elements.elements[e];
        double sum_present = 0.0;
        double sum_absent = 0.0;
        for (std::size_t m = 0; m < elements.models.size(); ++m) {
            if (elements.flag(m, e)) {
                ++assoc.n_present;
                sum_present += xs[m];
            } else {
                ++assoc.n_absent;
                sum_absent += xs[m];
            }
        }
        if (assoc.n_present > 0) {
            assoc.mean_xscore_present = sum_present / static_cast<double>(assoc.n_present);
        }
        if (assoc.n_absent > 0) {
            assoc.mean_xscore_absent = sum_absent / static_cast<double>(assoc.n_absent);
        }
        if (assoc.mean_xscore_present && assoc.mean_xscore_absent) {
            assoc.difference = *assoc.mean_xscore_present - *assoc.mean_xscore_absent;
            if (!xscore_constant) {
                // group-mean form of the point-biserial correlation,
                // (M1 - M0) * sqrt(n1*n0 / (n*syy)): algebraically Pearson on
                // the 0/1 flag, and exactly antisymmetric under label swap
                const double k = static_cast<double>(elements.models.size());
                double mean_x = 0.0;
                for (double v : xs) mean_x += v;
                mean_x /= k;
                double syy = 0.0;
                for (double v : xs) syy += (v - mean_x) * (v - mean_x);
                const double n1 = static_cast<double>(assoc.n_present);
                const double n0 = static_cast<double>(assoc.n_absent);
                assoc.point_biserial_r = *assoc.difference * std::sqrt(n1 * n0 / (k * syy));
            }
        }
        out.push_back(std::move(assoc));
    }
    return out;
}

} // namespace xscore
