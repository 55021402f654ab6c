#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "xscore/analysis.hpp"
#include "xscore/io.hpp"
#include "xscore/matrix.hpp"
#include "xscore/scoring.hpp"
#include "xscore/subset.hpp"

namespace {

void write_output(const std::optional<std::string>& path, const std::string& content) {
    if (path) {
        xscore::write_text_file(*path, content);
    } else {
        std::cout << content;
    }
}

std::vector<std::string> split_names(const std::string& joined) {
    std::vector<std::string> names;
    std::size_t start = 0;
    while (start <= joined.size()) {
        const std::size_t comma = joined.find(',', start);
        if (comma == std::string::npos) {
            if (start < joined.size()) names.push_back(joined.substr(start));
            break;
        }
        if (comma > start) names.push_back(joined.substr(start, comma - start));
        start = comma + 1;
    }
    return names;
}

void report_out_of_range(const std::vector<xscore::ScoreRecord>& records,
                         const std::vector<std::string>& datasets) {
    for (const auto& rec : records) {
        for (const auto& dataset : rec.out_of_range) {
            const auto it = std::find(datasets.begin(), datasets.end(), dataset);
            const double value = rec.normalized_row[static_cast<std::size_t>(it - datasets.begin())];
            std::fprintf(stderr,
                         "xscore: warning [out-of-range]: model '%s' on '%s' normalizes to %.4f, "
                         "outside [0,1]\n",
                         rec.model.c_str(), dataset.c_str(), value);
        }
    }
}

struct AnchorsArgs {
    std::string matrix;
    std::string out;
    std::string source;
    std::string datasets;
};

struct ScoreArgs {
    std::string matrix;
    std::string anchors;
    std::string params;
    double params_ratio = 1.5;
    double lambda = 0.5;
    std::string format = "markdown";
    std::optional<std::string> out;
};

struct NewModelArgs {
    std::string accuracies;
    std::string anchors;
    double lambda = 0.5;
    std::optional<std::string> out;
};

struct SubsetArgs {
    std::string matrix;
    std::size_t k = 4;
    double lambda = 0.5;
    std::string objective = "kendall_tau";
    std::string reference;
    std::optional<std::string> out;
};

struct CorrelateArgs {
    std::string matrix;
    std::string dataset;
    double lambda = 0.5;
    std::optional<std::string> report;
    std::optional<std::string> scatter;
};

struct ElementsArgs {
    std::string matrix;
    std::string elements;
    double lambda = 0.5;
    std::optional<std::string> out;
};

int run_anchors(const AnchorsArgs& args) {
    const xscore::AccuracyMatrix matrix = xscore::load_accuracy_csv(args.matrix);
    xscore::AnchorTable anchors = xscore::column_extrema(matrix);
    const std::vector<std::string> keep = split_names(args.datasets);
    if (!keep.empty()) {
        xscore::AnchorTable filtered;
        filtered.source = anchors.source;
        for (const auto& name : keep) {
            const xscore::AnchorEntry* entry = anchors.find(name);
            if (!entry) {
                throw xscore::error(xscore::errc::unknown_dataset,
                                    "dataset '" + name + "' not in matrix");
            }
            filtered.entries.push_back(*entry);
        }
        anchors = std::move(filtered);
    }
    if (!args.source.empty()) anchors.source = args.source;
    xscore::write_text_file(args.out, xscore::emit_anchor_file(anchors));
    return 0;
}

int run_score(const ScoreArgs& args) {
    xscore::AccuracyMatrix matrix = xscore::load_accuracy_csv(args.matrix);
    if (!args.params.empty()) {
        matrix = matrix.with_params(xscore::parse_params_csv(xscore::read_text_file(args.params)));
        for (const auto& w : xscore::validate_comparability(matrix, args.params_ratio)) {
            std::fprintf(stderr,
                         "xscore: warning [comparability]: %s (%.2fM params) vs %s (%.2fM): "
                         "ratio %.2f exceeds %.2f; xScore comparisons assume similar capacity\n",
                         w.model_a.c_str(), w.params_a, w.model_b.c_str(), w.params_b, w.ratio,
                         args.params_ratio);
        }
    }
    const xscore::AnchorTable anchors =
        args.anchors.empty() ? xscore::column_extrema(matrix)
                             : xscore::parse_anchor_file(xscore::read_text_file(args.anchors));
    const xscore::NormalizedMatrix normalized = xscore::normalize(matrix, anchors);
    const auto records = xscore::aggregate(normalized, xscore::Lambda(args.lambda));
    report_out_of_range(records, normalized.datasets);
    const auto format = args.format == "csv" ? xscore::TableFormat::csv
                                             : xscore::TableFormat::markdown;
    write_output(args.out, xscore::emit_leaderboard(xscore::rank(records),
                                                    normalized.datasets, format));
    return 0;
}

int run_new_model(const NewModelArgs& args) {
    const auto [model, accuracies] =
        xscore::parse_single_model_csv(xscore::read_text_file(args.accuracies));
    const xscore::AnchorTable anchors =
        xscore::parse_anchor_file(xscore::read_text_file(args.anchors));
    const xscore::Lambda lambda(args.lambda);
    const xscore::ScoreRecord record =
        xscore::score_against_anchors(model, accuracies, anchors, lambda);
    for (const auto& dataset : record.out_of_range) {
        std::fprintf(stderr,
                     "xscore: warning [out-of-range]: '%s' normalizes outside [0,1] under the "
                     "frozen anchors\n",
                     dataset.c_str());
    }
    write_output(args.out, xscore::emit_new_model_report(record, anchors, lambda));
    return 0;
}

int run_select_subset(const SubsetArgs& args) {
    const xscore::AccuracyMatrix matrix = xscore::load_accuracy_csv(args.matrix);
    const xscore::Lambda lambda(args.lambda);

    std::vector<xscore::FidelityObjective> objectives;
    if (args.objective == "all") {
        objectives.assign(std::begin(xscore::kAllObjectives), std::end(xscore::kAllObjectives));
    } else if (auto parsed = xscore::objective_from_name(args.objective)) {
        objectives.push_back(*parsed);
    } else {
        throw xscore::error(xscore::errc::parse_error,
                            "unknown objective '" + args.objective + "'");
    }

    const std::vector<std::string> reference = split_names(args.reference);
    if (!reference.empty()) {
        if (reference.size() != args.k) {
            throw xscore::error(xscore::errc::bad_subset_size,
                                "reference subset has " + std::to_string(reference.size()) +
                                    " datasets, expected k = " + std::to_string(args.k));
        }
        for (const auto& name : reference) {
            if (!matrix.dataset_index(name)) {
                throw xscore::error(xscore::errc::unknown_dataset,
                                    "reference dataset '" + name + "' not in matrix");
            }
        }
    }

    std::vector<xscore::SubsetReport> reports;
    reports.reserve(objectives.size());
    for (xscore::FidelityObjective objective : objectives) {
        reports.push_back(xscore::select_proxy_subset(matrix, args.k, lambda, objective));
    }
    write_output(args.out, xscore::emit_subset_report(reports, matrix.label(), reference));
    return 0;
}

int run_correlate(const CorrelateArgs& args) {
    const xscore::AccuracyMatrix matrix = xscore::load_accuracy_csv(args.matrix);
    const auto records = xscore::aggregate(
        xscore::normalize(matrix, xscore::column_extrema(matrix)), xscore::Lambda(args.lambda));
    const xscore::CorrelationReport report =
        xscore::correlate_accuracy_vs_xscore(matrix, records, args.dataset);
    write_output(args.report, xscore::emit_correlation_report(report));
    if (args.scatter) {
        const std::size_t col = *matrix.dataset_index(args.dataset);
        std::vector<xscore::ScatterPoint> points;
        points.reserve(matrix.model_count());
        for (std::size_t r = 0; r < matrix.model_count(); ++r) {
            points.push_back({matrix.models()[r], matrix.at(r, col), records[r].xscore});
        }
        xscore::write_text_file(*args.scatter, xscore::emit_scatter_svg(report, points));
    }
    return 0;
}

int run_elements(const ElementsArgs& args) {
    const xscore::AccuracyMatrix matrix = xscore::load_accuracy_csv(args.matrix);
    const xscore::ElementMatrix elements =
        xscore::parse_element_csv(xscore::read_text_file(args.elements));
    const auto records = xscore::aggregate(
        xscore::normalize(matrix, xscore::column_extrema(matrix)), xscore::Lambda(args.lambda));
    write_output(args.out,
                 xscore::emit_element_associations_csv(
                     xscore::element_associations(elements, records)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cross-dataset robustness scoring over model x dataset accuracy matrices"};
    app.require_subcommand(1);

    AnchorsArgs anchors_args;
    auto* cmd_anchors = app.add_subcommand(
        "anchors", "Derive per-dataset (min, max) normalization anchors and save them");
    cmd_anchors->add_option("--matrix", anchors_args.matrix, "accuracy CSV")->required();
    cmd_anchors->add_option("--out", anchors_args.out, "anchor registry output path")->required();
    cmd_anchors->add_option("--source", anchors_args.source,
                            "provenance label (default: matrix file name)");
    cmd_anchors->add_option("--datasets", anchors_args.datasets,
                            "comma-separated dataset names to keep (default: all columns)");

    ScoreArgs score_args;
    auto* cmd_score =
        app.add_subcommand("score", "Score a matrix and emit the ranked leaderboard");
    cmd_score->add_option("--matrix", score_args.matrix, "accuracy CSV")->required();
    cmd_score->add_option("--anchors", score_args.anchors,
                          "frozen anchor registry (default: derive from the matrix)");
    cmd_score->add_option("--lambda", score_args.lambda, "variance penalty weight in [0,1]")
        ->capture_default_str();
    cmd_score->add_option("--format", score_args.format, "leaderboard format")
        ->check(CLI::IsMember({"csv", "markdown"}))
        ->capture_default_str();
    cmd_score->add_option("--params", score_args.params,
                          "per-model parameter counts for comparability warnings");
    cmd_score->add_option("--params-ratio", score_args.params_ratio,
                          "warn when a parameter-count ratio exceeds this")
        ->capture_default_str();
    cmd_score->add_option("--out", score_args.out, "output path (default: stdout)");

    NewModelArgs new_model_args;
    auto* cmd_new_model = app.add_subcommand(
        "new-model", "Score one model's accuracies against a frozen anchor registry");
    cmd_new_model->add_option("--accuracies", new_model_args.accuracies,
                              "single-row accuracy CSV")->required();
    cmd_new_model->add_option("--anchors", new_model_args.anchors, "anchor registry")->required();
    cmd_new_model->add_option("--lambda", new_model_args.lambda, "variance penalty weight")
        ->capture_default_str();
    cmd_new_model->add_option("--out", new_model_args.out, "output path (default: stdout)");

    SubsetArgs subset_args;
    auto* cmd_subset = app.add_subcommand(
        "select-subset", "Brute-force search for the proxy dataset subset that best "
                         "reproduces the full ranking");
    cmd_subset->add_option("--matrix", subset_args.matrix, "accuracy CSV")->required();
    cmd_subset->add_option("--k", subset_args.k, "subset size")->required();
    cmd_subset->add_option("--lambda", subset_args.lambda, "variance penalty weight")
        ->capture_default_str();
    cmd_subset->add_option("--objective", subset_args.objective,
                           "kendall_tau|spearman_rho|pairwise_agreement|score_mae|all")
        ->capture_default_str();
    cmd_subset->add_option("--reference", subset_args.reference,
                           "comma-separated dataset names to compare against the winner");
    cmd_subset->add_option("--out", subset_args.out, "output path (default: stdout)");

    CorrelateArgs correlate_args;
    auto* cmd_correlate = app.add_subcommand(
        "correlate", "Correlate one dataset's accuracy with xScore across models");
    cmd_correlate->add_option("--matrix", correlate_args.matrix, "accuracy CSV")->required();
    cmd_correlate->add_option("--dataset", correlate_args.dataset, "dataset name")->required();
    cmd_correlate->add_option("--lambda", correlate_args.lambda, "variance penalty weight")
        ->capture_default_str();
    cmd_correlate->add_option("--report", correlate_args.report,
                              "report output path (default: stdout)");
    cmd_correlate->add_option("--scatter", correlate_args.scatter, "scatter SVG output path");

    ElementsArgs elements_args;
    auto* cmd_elements = app.add_subcommand(
        "elements", "Associate binary architecture elements with xScore");
    cmd_elements->add_option("--matrix", elements_args.matrix, "accuracy CSV")->required();
    cmd_elements->add_option("--elements", elements_args.elements, "element CSV")->required();
    cmd_elements->add_option("--lambda", elements_args.lambda, "variance penalty weight")
        ->capture_default_str();
    cmd_elements->add_option("--out", elements_args.out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_anchors->parsed()) return run_anchors(anchors_args);
        if (cmd_score->parsed()) return run_score(score_args);
        if (cmd_new_model->parsed()) return run_new_model(new_model_args);
        if (cmd_subset->parsed()) return run_select_subset(subset_args);
        if (cmd_correlate->parsed()) return run_correlate(correlate_args);
        if (cmd_elements->parsed()) return run_elements(elements_args);
    } catch (const xscore::error& e) {
        std::fprintf(stderr, "xscore: error [%s]: %s\n", xscore::errc_name(e.kind()), e.what());
        return xscore::exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "xscore: error: %s\n", e.what());
        return 1;
    }
    return 0;
}
