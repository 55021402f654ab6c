#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xscore/scoring.hpp"

namespace xscore {

/// Relationship between single-dataset accuracy and xscore across models.
/// Spearman uses average ranks for ties; the OLS line regresses xscore on
/// accuracy.
struct CorrelationReport {
    std::string dataset;
    double pearson_r = 0.0;
    double spearman_rho = 0.0;
    double ols_slope = 0.0;     // xscore units per accuracy percent
    double ols_intercept = 0.0;
    std::size_t n = 0;
};

/// Pearson r, Spearman rho and the least-squares line of xscore on the given
/// dataset's accuracy column, over all K models. Requires K >= 3
/// (too_few_models); throws unknown_dataset, constant_variable,
/// model_set_mismatch.
CorrelationReport correlate_accuracy_vs_xscore(const AccuracyMatrix& matrix,
                                               const std::vector<ScoreRecord>& records,
                                               const std::string& dataset);

/// Dense models x elements grid of binary present/absent flags.
struct ElementMatrix {
    std::vector<std::string> models;
    std::vector<std::string> elements;
    std::vector<std::uint8_t> flags; // row-major K x E, values 0/1

    bool flag(std::size_t model, std::size_t element) const {
        return flags.at(model * elements.size() + element) != 0;
    }
};

bool operator==(const ElementMatrix& a, const ElementMatrix& b) noexcept;

/// Validated construction of an ElementMatrix (unique non-empty names, dense
/// binary grid).
ElementMatrix make_element_matrix(std::vector<std::string> models,
                                  std::vector<std::string> elements,
                                  std::vector<std::uint8_t> flags);

/// Effect of one architectural element on xscore. Group means and the
/// point-biserial correlation are absent (nullopt) when not estimable:
/// means require a non-empty group, the correlation additionally requires
/// non-constant xscores.
struct ElementAssociation {
    std::string element;
    std::size_t n_present = 0;
    std::size_t n_absent = 0;
    std::optional<double> mean_xscore_present;
    std::optional<double> mean_xscore_absent;
    std::optional<double> difference; // present - absent
    std::optional<double> point_biserial_r;
};

/// One association per element, in the element order of the input. The
/// element matrix's models must match the records' model set
/// (model_set_mismatch).
std::vector<ElementAssociation> element_associations(const ElementMatrix& elements,
                                                     const std::vector<ScoreRecord>& records);

} // namespace xscore
