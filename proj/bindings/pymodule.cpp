#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "xscore/analysis.hpp"
#include "xscore/io.hpp"
#include "xscore/matrix.hpp"
#include "xscore/scoring.hpp"
#include "xscore/subset.hpp"

namespace py = pybind11;
using namespace xscore;

namespace {

std::vector<std::vector<double>> grid_rows(const std::vector<double>& values, std::size_t cols) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < values.size(); i += cols) {
        rows.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(i),
                          values.begin() + static_cast<std::ptrdiff_t>(i + cols));
    }
    return rows;
}

AccuracyMatrix matrix_from_rows(const std::vector<std::string>& models,
                                const std::vector<std::string>& datasets,
                                const std::vector<std::vector<double>>& values,
                                const std::map<std::string, double>& params,
                                const std::string& label) {
    if (values.size() != models.size()) {
        throw error(errc::missing_cell, "value grid must have one row per model");
    }
    std::vector<CellRecord> records;
    for (std::size_t r = 0; r < models.size(); ++r) {
        if (values[r].size() != datasets.size()) {
            throw error(errc::missing_cell, "value grid must have one column per dataset");
        }
        for (std::size_t c = 0; c < datasets.size(); ++c) {
            records.push_back({models[r], datasets[c], values[r][c]});
        }
    }
    return build_matrix(records, params, label);
}

TableFormat format_from_name(const std::string& name) {
    if (name == "csv") return TableFormat::csv;
    if (name == "markdown") return TableFormat::markdown;
    throw error(errc::parse_error, "unknown table format '" + name + "'");
}

} // namespace

PYBIND11_MODULE(_xscore, m) {
    m.doc() = "Cross-dataset robustness scoring: min-max normalization, xScore ranking, "
              "proxy-subset search, and correlation statistics";

    static py::exception<error> exc(m, "XScoreError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const error& e) {
            const std::string message =
                std::string("[") + errc_name(e.kind()) + "] " + e.what();
#if PYBIND11_VERSION_HEX >= 0x020C0000
            py::set_error(exc, message.c_str());
#else
            exc(message.c_str());
#endif
        }
    });

    py::class_<AccuracyMatrix>(m, "AccuracyMatrix")
        .def(py::init(&matrix_from_rows), py::arg("models"), py::arg("datasets"),
             py::arg("values"), py::arg("params") = std::map<std::string, double>{},
             py::arg("label") = std::string{})
        .def_property_readonly("models", &AccuracyMatrix::models)
        .def_property_readonly("datasets", &AccuracyMatrix::datasets)
        .def_property_readonly("values",
                               [](const AccuracyMatrix& self) {
                                   return grid_rows(self.values(), self.dataset_count());
                               })
        .def_property_readonly("params", &AccuracyMatrix::params)
        .def_property_readonly("label", &AccuracyMatrix::label)
        .def("at", &AccuracyMatrix::at, py::arg("row"), py::arg("col"))
        .def("restricted_to",
             [](const AccuracyMatrix& self, const std::vector<std::string>& datasets) {
                 return self.restricted_to(datasets);
             },
             py::arg("datasets"))
        .def("with_params", &AccuracyMatrix::with_params, py::arg("params"))
        .def("__repr__", [](const AccuracyMatrix& self) {
            std::ostringstream out;
            out << "AccuracyMatrix(" << self.model_count() << " models x "
                << self.dataset_count() << " datasets)";
            return out.str();
        });

    m.def("build_matrix",
          [](const std::vector<std::tuple<std::string, std::string, double>>& records,
             const std::map<std::string, double>& params, const std::string& label) {
              std::vector<CellRecord> cells;
              cells.reserve(records.size());
              for (const auto& [model, dataset, accuracy] : records) {
                  cells.push_back({model, dataset, accuracy});
              }
              return build_matrix(cells, params, label);
          },
          py::arg("records"), py::arg("params") = std::map<std::string, double>{},
          py::arg("label") = std::string{},
          "Assemble a dense accuracy matrix from (model, dataset, accuracy) records");

    py::class_<AnchorEntry>(m, "AnchorEntry")
        .def(py::init([](std::string dataset, double min, double max) {
                 return AnchorEntry{std::move(dataset), min, max};
             }),
             py::arg("dataset"), py::arg("min"), py::arg("max"))
        .def_readonly("dataset", &AnchorEntry::dataset)
        .def_readonly("min", &AnchorEntry::min)
        .def_readonly("max", &AnchorEntry::max)
        .def("__repr__", [](const AnchorEntry& self) {
            std::ostringstream out;
            out << "AnchorEntry('" << self.dataset << "', " << self.min << ", " << self.max << ")";
            return out.str();
        });

    py::class_<AnchorTable>(m, "AnchorTable")
        .def(py::init([](const std::vector<std::tuple<std::string, double, double>>& entries,
                         std::string source) {
                 AnchorTable table;
                 table.source = std::move(source);
                 for (const auto& [dataset, lo, hi] : entries) {
                     table.entries.push_back({dataset, lo, hi});
                 }
                 return table;
             }),
             py::arg("entries"), py::arg("source") = std::string{})
        .def_readonly("entries", &AnchorTable::entries)
        .def_readonly("source", &AnchorTable::source);

    m.def("column_extrema", &column_extrema, py::arg("matrix"),
          "Per-dataset (min, max) over all models, usable as frozen anchors");

    py::class_<ComparabilityWarning>(m, "ComparabilityWarning")
        .def_readonly("model_a", &ComparabilityWarning::model_a)
        .def_readonly("model_b", &ComparabilityWarning::model_b)
        .def_readonly("params_a", &ComparabilityWarning::params_a)
        .def_readonly("params_b", &ComparabilityWarning::params_b)
        .def_readonly("ratio", &ComparabilityWarning::ratio);

    m.def("validate_comparability", &validate_comparability, py::arg("matrix"),
          py::arg("ratio_threshold") = 1.5);

    py::class_<NormalizedMatrix>(m, "NormalizedMatrix")
        .def_readonly("models", &NormalizedMatrix::models)
        .def_readonly("datasets", &NormalizedMatrix::datasets)
        .def_property_readonly("values",
                               [](const NormalizedMatrix& self) {
                                   return grid_rows(self.values, self.datasets.size());
                               })
        .def_readonly("anchors_used", &NormalizedMatrix::anchors_used);

    py::class_<ScoreRecord>(m, "ScoreRecord")
        .def_readonly("model", &ScoreRecord::model)
        .def_readonly("normalized_row", &ScoreRecord::normalized_row)
        .def_readonly("mean_score", &ScoreRecord::mean_score)
        .def_readonly("variance", &ScoreRecord::variance)
        .def_readonly("xscore", &ScoreRecord::xscore)
        .def_readonly("rank", &ScoreRecord::rank)
        .def_readonly("out_of_range", &ScoreRecord::out_of_range)
        .def("__repr__", [](const ScoreRecord& self) {
            std::ostringstream out;
            out << "ScoreRecord('" << self.model << "', xscore=" << self.xscore
                << ", rank=" << self.rank << ")";
            return out.str();
        });

    m.def("normalize", &normalize, py::arg("matrix"), py::arg("anchors"));
    m.def("aggregate",
          [](const NormalizedMatrix& normalized, double lam) {
              return aggregate(normalized, Lambda(lam));
          },
          py::arg("normalized"), py::arg("lambda_") = 0.5);
    m.def("score_against_anchors",
          [](const std::string& model, const std::map<std::string, double>& accuracies,
             const AnchorTable& anchors, double lam) {
              return score_against_anchors(model, accuracies, anchors, Lambda(lam));
          },
          py::arg("model"), py::arg("accuracies"), py::arg("anchors"),
          py::arg("lambda_") = 0.5);
    m.def("rank", &rank, py::arg("records"),
          "Order records best-first and assign ranks 1..K");

    py::enum_<FidelityObjective>(m, "FidelityObjective")
        .value("kendall_tau", FidelityObjective::kendall_tau)
        .value("spearman_rho", FidelityObjective::spearman_rho)
        .value("pairwise_agreement", FidelityObjective::pairwise_agreement)
        .value("score_mae", FidelityObjective::score_mae);

    m.def("objective_maximizes", &objective_maximizes, py::arg("objective"));
    m.def("enumerate_k_subsets", &enumerate_k_subsets, py::arg("datasets"), py::arg("k"));
    m.def("rank_fidelity", &rank_fidelity, py::arg("full"), py::arg("subset"),
          py::arg("objective"));

    py::class_<SubsetCandidate>(m, "SubsetCandidate")
        .def_readonly("datasets", &SubsetCandidate::datasets)
        .def_readonly("records", &SubsetCandidate::records)
        .def_readonly("fidelity", &SubsetCandidate::fidelity);

    py::class_<SubsetReport>(m, "SubsetReport")
        .def_readonly("k", &SubsetReport::k)
        .def_readonly("objective", &SubsetReport::objective)
        .def_readonly("lambda_", &SubsetReport::lambda)
        .def_readonly("full_records", &SubsetReport::full_records)
        .def_readonly("candidates", &SubsetReport::candidates)
        .def("best", &SubsetReport::best, py::return_value_policy::copy);

    m.def("select_proxy_subset",
          [](const AccuracyMatrix& matrix, std::size_t k, double lam,
             FidelityObjective objective) {
              return select_proxy_subset(matrix, k, Lambda(lam), objective);
          },
          py::arg("matrix"), py::arg("k"), py::arg("lambda_") = 0.5,
          py::arg("objective") = FidelityObjective::kendall_tau);

    py::class_<CorrelationReport>(m, "CorrelationReport")
        .def_readonly("dataset", &CorrelationReport::dataset)
        .def_readonly("pearson_r", &CorrelationReport::pearson_r)
        .def_readonly("spearman_rho", &CorrelationReport::spearman_rho)
        .def_readonly("ols_slope", &CorrelationReport::ols_slope)
        .def_readonly("ols_intercept", &CorrelationReport::ols_intercept)
        .def_readonly("n", &CorrelationReport::n);

    m.def("correlate_accuracy_vs_xscore", &correlate_accuracy_vs_xscore, py::arg("matrix"),
          py::arg("records"), py::arg("dataset"));

    py::class_<ElementMatrix>(m, "ElementMatrix")
        .def(py::init([](std::vector<std::string> models, std::vector<std::string> elements,
                         const std::vector<std::vector<int>>& flags) {
                 std::vector<std::uint8_t> flat;
                 for (const auto& row : flags) {
                     for (int f : row) {
                         flat.push_back(static_cast<std::uint8_t>(f));
                     }
                 }
                 return make_element_matrix(std::move(models), std::move(elements),
                                            std::move(flat));
             }),
             py::arg("models"), py::arg("elements"), py::arg("flags"))
        .def_readonly("models", &ElementMatrix::models)
        .def_readonly("elements", &ElementMatrix::elements)
        .def("flag", &ElementMatrix::flag, py::arg("model"), py::arg("element"));

    py::class_<ElementAssociation>(m, "ElementAssociation")
        .def_readonly("element", &ElementAssociation::element)
        .def_readonly("n_present", &ElementAssociation::n_present)
        .def_readonly("n_absent", &ElementAssociation::n_absent)
        .def_readonly("mean_xscore_present", &ElementAssociation::mean_xscore_present)
        .def_readonly("mean_xscore_absent", &ElementAssociation::mean_xscore_absent)
        .def_readonly("difference", &ElementAssociation::difference)
        .def_readonly("point_biserial_r", &ElementAssociation::point_biserial_r);

    m.def("element_associations", &element_associations, py::arg("elements"),
          py::arg("records"));

    // file formats and report emitters
    m.def("parse_accuracy_csv",
          [](const std::string& text, const std::string& label) {
              return parse_accuracy_csv(text, label);
          },
          py::arg("text"), py::arg("label") = std::string{});
    m.def("emit_accuracy_csv", &emit_accuracy_csv, py::arg("matrix"));
    m.def("parse_single_model_csv",
          [](const std::string& text) { return parse_single_model_csv(text); }, py::arg("text"));
    m.def("parse_element_csv",
          [](const std::string& text) { return parse_element_csv(text); }, py::arg("text"));
    m.def("emit_element_csv", &emit_element_csv, py::arg("elements"));
    m.def("parse_params_csv",
          [](const std::string& text) { return parse_params_csv(text); }, py::arg("text"));
    m.def("emit_anchor_file", &emit_anchor_file, py::arg("anchors"));
    m.def("parse_anchor_file",
          [](const std::string& text) { return parse_anchor_file(text); }, py::arg("text"));
    m.def("emit_leaderboard",
          [](const std::vector<ScoreRecord>& records, const std::vector<std::string>& datasets,
             const std::string& format) {
              return emit_leaderboard(records, datasets, format_from_name(format));
          },
          py::arg("records"), py::arg("datasets"), py::arg("format") = "markdown");
    m.def("emit_scatter_svg",
          [](const CorrelationReport& report,
             const std::vector<std::tuple<std::string, double, double>>& points) {
              std::vector<ScatterPoint> converted;
              converted.reserve(points.size());
              for (const auto& [model, accuracy, xs] : points) {
                  converted.push_back({model, accuracy, xs});
              }
              return emit_scatter_svg(report, converted);
          },
          py::arg("report"), py::arg("points"));
    m.def("emit_correlation_report", &emit_correlation_report, py::arg("report"));
    m.def("emit_subset_report", &emit_subset_report, py::arg("reports"),
          py::arg("matrix_label"), py::arg("reference_subset") = std::vector<std::string>{});
    m.def("emit_new_model_report",
          [](const ScoreRecord& record, const AnchorTable& anchors, double lam) {
              return emit_new_model_report(record, anchors, Lambda(lam));
          },
          py::arg("record"), py::arg("anchors"), py::arg("lambda_") = 0.5);
    m.def("emit_element_associations_csv", &emit_element_associations_csv,
          py::arg("associations"));
    m.def("load_accuracy_csv",
          [](const std::string& path) { return load_accuracy_csv(path); }, py::arg("path"));

#ifdef XSCORE_VERSION
    m.attr("__version__") = XSCORE_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
