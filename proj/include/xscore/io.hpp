#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xscore/analysis.hpp"
#include "xscore/matrix.hpp"
#include "xscore/scoring.hpp"
#include "xscore/subset.hpp"

namespace xscore {

// --- accuracy CSV -----------------------------------------------------------
//
// First header cell `model`, remaining headers dataset names; one row per
// model; dot-decimal numbers; UTF-8; no quoting. An empty cell is a missing
// value and surfaces as missing_cell from matrix assembly.

AccuracyMatrix parse_accuracy_csv(std::string_view text, std::string label = {});
std::string emit_accuracy_csv(const AccuracyMatrix& matrix);

/// Accuracy CSV with exactly one model row, for scoring a new model against
/// frozen anchors. Returns the model name and its per-dataset accuracies.
std::pair<std::string, std::map<std::string, double>> parse_single_model_csv(std::string_view text);

// --- element CSV -------------------------------------------------------------
//
// First header cell `model`, remaining headers element names, cells 1/0.

ElementMatrix parse_element_csv(std::string_view text);
std::string emit_element_csv(const ElementMatrix& elements);

// --- params CSV ---------------------------------------------------------------
//
// Header `model,params-m`; one row per model; values in millions of
// parameters.

std::map<std::string, double> parse_params_csv(std::string_view text);

// --- anchor registry ----------------------------------------------------------
//
// JSON document: {"source": ..., "anchors": [{"dataset", "min", "max"}, ...]}.
// Meant for long-lived reuse across evaluations; round-trips losslessly.

std::string emit_anchor_file(const AnchorTable& anchors);
AnchorTable parse_anchor_file(std::string_view text);

// --- report emitters ------------------------------------------------------------

enum class TableFormat { csv, markdown };

/// Ranked leaderboard with per-dataset normalized cells. Numeric cells carry
/// exactly 3 fractional digits. Deterministic byte output.
std::string emit_leaderboard(const std::vector<ScoreRecord>& records,
                             const std::vector<std::string>& datasets,
                             TableFormat format);

struct ScatterPoint {
    std::string model;
    double accuracy = 0.0;
    double xscore = 0.0;
};

/// Standalone SVG scatter of xscore against one dataset's accuracy, one
/// point per model plus the fitted regression line.
std::string emit_scatter_svg(const CorrelationReport& report,
                             const std::vector<ScatterPoint>& points);

/// Plain-text correlation report (documents the tie conventions).
std::string emit_correlation_report(const CorrelationReport& report);

/// Full subset-search report: one section per requested objective with the
/// winner, optional reference-subset comparison, and the complete fidelity
/// table so near-ties stay visible.
std::string emit_subset_report(const std::vector<SubsetReport>& reports,
                               const std::string& matrix_label,
                               const std::vector<std::string>& reference_subset);

/// Single-record report for a model scored against frozen anchors;
/// normalized values outside [0,1] are marked out-of-range.
std::string emit_new_model_report(const ScoreRecord& record,
                                  const AnchorTable& anchors,
                                  Lambda lambda);

/// Element-association table as CSV; non-estimable statistics render as n/a.
std::string emit_element_associations_csv(const std::vector<ElementAssociation>& associations);

// --- files ----------------------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Parse an accuracy CSV from disk; the matrix label is the file name.
AccuracyMatrix load_accuracy_csv(const std::filesystem::path& path);

// --- formatting helpers -----------------------------------------------------------

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);
/// Fixed-point rendering with the given fractional digit count.
std::string format_fixed(double value, int digits);

} // namespace xscore
