#include "xscore/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace xscore {

namespace {

struct CsvLine {
    std::size_t number = 0; // 1-based
    std::vector<std::string> fields;
};

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::vector<CsvLine> read_csv_lines(std::string_view text) {
    std::vector<CsvLine> lines;
    std::size_t start = 0;
    std::size_t number = 0;
    while (start <= text.size()) {
        ++number;
        std::size_t end = text.find('\n', start);
        const bool last = end == std::string_view::npos;
        std::string_view raw = text.substr(start, last ? text.size() - start : end - start);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (raw.empty()) {
            // a final newline is fine; a blank line inside the table is not
            if (!last && end + 1 < text.size()) {
                throw parse_error("blank line", number, 1);
            }
        } else {
            lines.push_back({number, split_fields(raw)});
        }
        if (last) break;
        start = end + 1;
    }
    return lines;
}

/// Identifier validation with the position folded into a parse error.
void check_csv_identifier(const std::string& name, const char* what,
                          std::size_t line, std::size_t column) {
    try {
        detail::check_identifier(name, what);
    } catch (const error& e) {
        throw parse_error(e.what(), line, column);
    }
}

double parse_number(const std::string& token, std::size_t line, std::size_t column) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw parse_error("not a number: '" + token + "'", line, column);
    }
    return value;
}

struct ParsedHeader {
    std::vector<std::string> columns; // names after the leading `model` cell
};

ParsedHeader parse_header(const std::vector<CsvLine>& lines, const char* column_kind) {
    if (lines.empty()) {
        throw parse_error("empty input", 1, 1);
    }
    const CsvLine& header = lines.front();
    if (header.fields.front() != "model") {
        throw parse_error("first header cell must be 'model', got '" + header.fields.front() + "'",
                          header.number, 1);
    }
    if (header.fields.size() < 2) {
        throw parse_error(std::string("header has no ") + column_kind + " columns",
                          header.number, 2);
    }
    ParsedHeader parsed;
    for (std::size_t i = 1; i < header.fields.size(); ++i) {
        const std::string& name = header.fields[i];
        check_csv_identifier(name, column_kind, header.number, i + 1);
        if (std::find(parsed.columns.begin(), parsed.columns.end(), name) != parsed.columns.end()) {
            throw parse_error(std::string("duplicate ") + column_kind + " column '" + name + "'",
                              header.number, i + 1);
        }
        parsed.columns.push_back(name);
    }
    return parsed;
}

void check_field_count(const CsvLine& row, std::size_t expected) {
    if (row.fields.size() != expected) {
        throw parse_error("expected " + std::to_string(expected) + " fields, got " +
                              std::to_string(row.fields.size()),
                          row.number, std::min(row.fields.size(), expected) + 1);
    }
}

} // namespace

// --- accuracy CSV -----------------------------------------------------------

AccuracyMatrix parse_accuracy_csv(std::string_view text, std::string label) {
    const auto lines = read_csv_lines(text);
    const ParsedHeader header = parse_header(lines, "dataset");

    std::vector<CellRecord> records;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const CsvLine& row = lines[li];
        check_field_count(row, header.columns.size() + 1);
        check_csv_identifier(row.fields[0], "model", row.number, 1);
        for (std::size_t i = 0; i < header.columns.size(); ++i) {
            const std::string& cell = row.fields[i + 1];
            if (cell.empty()) continue; // absent value; density is checked downstream
            records.push_back(
                {row.fields[0], header.columns[i], parse_number(cell, row.number, i + 2)});
        }
    }
    return build_matrix(records, {}, std::move(label));
}

std::string emit_accuracy_csv(const AccuracyMatrix& matrix) {
    std::string out = "model";
    for (const auto& dataset : matrix.datasets()) {
        out += ',';
        out += dataset;
    }
    out += '\n';
    for (std::size_t r = 0; r < matrix.model_count(); ++r) {
        out += matrix.models()[r];
        for (std::size_t c = 0; c < matrix.dataset_count(); ++c) {
            out += ',';
            out += format_double(matrix.at(r, c));
        }
        out += '\n';
    }
    return out;
}

std::pair<std::string, std::map<std::string, double>> parse_single_model_csv(std::string_view text) {
    const auto lines = read_csv_lines(text);
    const ParsedHeader header = parse_header(lines, "dataset");
    if (lines.size() != 2) {
        throw parse_error("expected exactly one model row, got " + std::to_string(lines.size() - 1),
                          lines.size() > 2 ? lines[2].number : 1, 1);
    }
    const CsvLine& row = lines[1];
    check_field_count(row, header.columns.size() + 1);
    check_csv_identifier(row.fields[0], "model", row.number, 1);
    std::map<std::string, double> accuracies;
    for (std::size_t i = 0; i < header.columns.size(); ++i) {
        const std::string& cell = row.fields[i + 1];
        if (cell.empty()) continue;
        accuracies.emplace(header.columns[i], parse_number(cell, row.number, i + 2));
    }
    return {row.fields[0], std::move(accuracies)};
}

// --- element CSV --------------------------------------------------------------

ElementMatrix parse_element_csv(std::string_view text) {
    const auto lines = read_csv_lines(text);
    const ParsedHeader header = parse_header(lines, "element");
    if (lines.size() < 2) {
        throw parse_error("no model rows", lines.front().number, 1);
    }
    std::vector<std::string> models;
    std::vector<std::uint8_t> flags;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const CsvLine& row = lines[li];
        check_field_count(row, header.columns.size() + 1);
        check_csv_identifier(row.fields[0], "model", row.number, 1);
        if (std::find(models.begin(), models.end(), row.fields[0]) != models.end()) {
            throw parse_error("duplicate model row '" + row.fields[0] + "'", row.number, 1);
        }
        models.push_back(row.fields[0]);
        for (std::size_t i = 0; i < header.columns.size(); ++i) {
            const std::string& cell = row.fields[i + 1];
            if (cell == "1") {
                flags.push_back(1);
            } else if (cell == "0") {
                flags.push_back(0);
            } else {
                throw parse_error("element flag must be 0 or 1, got '" + cell + "'",
                                  row.number, i + 2);
            }
        }
    }
    return make_element_matrix(std::move(models), header.columns, std::move(flags));
}

std::string emit_element_csv(const ElementMatrix& elements) {
    std::string out = "model";
    for (const auto& element : elements.elements) {
        out += ',';
        out += element;
    }
    out += '\n';
    for (std::size_t m = 0; m < elements.models.size(); ++m) {
        out += elements.models[m];
        for (std::size_t e = 0; e < elements.elements.size(); ++e) {
            out += elements.flag(m, e) ? ",1" : ",0";
        }
        out += '\n';
    }
    return out;
}

// --- params CSV ----------------------------------------------------------------

std::map<std::string, double> parse_params_csv(std::string_view text) {
    const auto lines = read_csv_lines(text);
    if (lines.empty()) {
        throw parse_error("empty input", 1, 1);
    }
    const CsvLine& header = lines.front();
    if (header.fields.size() != 2 || header.fields[0] != "model" ||
        header.fields[1] != "params-m") {
        throw parse_error("params header must be 'model,params-m'", header.number, 1);
    }
    std::map<std::string, double> params;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const CsvLine& row = lines[li];
        check_field_count(row, 2);
        check_csv_identifier(row.fields[0], "model", row.number, 1);
        if (params.count(row.fields[0])) {
            throw parse_error("duplicate model row '" + row.fields[0] + "'", row.number, 1);
        }
        params.emplace(row.fields[0], parse_number(row.fields[1], row.number, 2));
    }
    return params;
}

// --- anchor registry --------------------------------------------------------------

std::string emit_anchor_file(const AnchorTable& anchors) {
    nlohmann::ordered_json doc;
    doc["source"] = anchors.source;
    auto& list = doc["anchors"] = nlohmann::ordered_json::array();
    std::vector<std::string> seen;
    for (const auto& entry : anchors.entries) {
        detail::check_identifier(entry.dataset, "dataset");
        if (std::find(seen.begin(), seen.end(), entry.dataset) != seen.end()) {
            throw error(errc::duplicate_cell, "duplicate anchor for '" + entry.dataset + "'");
        }
        seen.push_back(entry.dataset);
        if (!(entry.max > entry.min)) {
            throw error(errc::degenerate_anchor,
                        "anchor for '" + entry.dataset + "' has max <= min");
        }
        list.push_back({{"dataset", entry.dataset}, {"min", entry.min}, {"max", entry.max}});
    }
    return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void rethrow_json_error(const nlohmann::json::exception& e, std::string_view text,
                                     std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    throw parse_error(e.what(), line, column);
}

} // namespace

AnchorTable parse_anchor_file(std::string_view text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        rethrow_json_error(e, text, e.byte);
    }

    AnchorTable table;
    try {
        if (!doc.is_object() || !doc.contains("anchors") || !doc["anchors"].is_array()) {
            throw error(errc::parse_error, "anchor file must be an object with an 'anchors' array");
        }
        table.source = doc.value("source", std::string{});
        for (const auto& item : doc["anchors"]) {
            AnchorEntry entry;
            entry.dataset = item.at("dataset").get<std::string>();
            entry.min = item.at("min").get<double>();
            entry.max = item.at("max").get<double>();
            detail::check_identifier(entry.dataset, "dataset");
            if (table.find(entry.dataset)) {
                throw error(errc::parse_error, "duplicate anchor for '" + entry.dataset + "'");
            }
            if (!(entry.max > entry.min)) {
                throw error(errc::degenerate_anchor,
                            "anchor for '" + entry.dataset + "' has max <= min");
            }
            table.entries.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::parse_error, std::string("malformed anchor file: ") + e.what());
    }
    return table;
}

// --- leaderboard --------------------------------------------------------------------

namespace {

std::vector<ScoreRecord> by_rank(std::vector<ScoreRecord> records) {
    std::sort(records.begin(), records.end(),
              [](const ScoreRecord& a, const ScoreRecord& b) { return a.rank < b.rank; });
    return records;
}

} // namespace

std::string emit_leaderboard(const std::vector<ScoreRecord>& records,
                             const std::vector<std::string>& datasets,
                             TableFormat format) {
    const std::vector<ScoreRecord> rows = by_rank(records);
    std::string out;
    if (format == TableFormat::csv) {
        out = "rank,model,G,V,xScore";
        for (const auto& dataset : datasets) {
            out += ',';
            out += dataset;
        }
        out += '\n';
        for (const auto& rec : rows) {
            out += std::to_string(rec.rank);
            out += ',';
            out += rec.model;
            out += ',' + format_fixed(rec.mean_score, 3);
            out += ',' + format_fixed(rec.variance, 3);
            out += ',' + format_fixed(rec.xscore, 3);
            for (double v : rec.normalized_row) {
                out += ',' + format_fixed(v, 3);
            }
            out += '\n';
        }
        return out;
    }

    out = "| rank | model | G | V | xScore |";
    for (const auto& dataset : datasets) {
        out += ' ' + dataset + " |";
    }
    out += "\n|---:|:---|---:|---:|---:|";
    for (std::size_t i = 0; i < datasets.size(); ++i) {
        out += "---:|";
    }
    out += '\n';
    for (const auto& rec : rows) {
        out += "| " + std::to_string(rec.rank) + " | " + rec.model;
        out += " | " + format_fixed(rec.mean_score, 3);
        out += " | " + format_fixed(rec.variance, 3);
        out += " | " + format_fixed(rec.xscore, 3);
        for (double v : rec.normalized_row) {
            out += " | " + format_fixed(v, 3);
        }
        out += " |\n";
    }
    return out;
}

// --- scatter SVG ----------------------------------------------------------------------

namespace {

struct AxisScale {
    double lo = 0.0;
    double hi = 1.0;
    double pix_lo = 0.0;
    double pix_hi = 1.0;

    double to_pix(double v) const { return pix_lo + (v - lo) / (hi - lo) * (pix_hi - pix_lo); }
};

AxisScale make_scale(double lo, double hi, double pix_lo, double pix_hi) {
    double pad = (hi - lo) * 0.05;
    if (pad == 0.0) pad = 1.0;
    return {lo - pad, hi + pad, pix_lo, pix_hi};
}

std::string px(double v) { return format_fixed(v, 2); }

void append_line(std::string& out, double x1, double y1, double x2, double y2,
                 const std::string& attrs) {
    out += "  <line x1=\"" + px(x1) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) + "\" y2=\"" +
           px(y2) + "\" " + attrs + "/>\n";
}

void append_text(std::string& out, double x, double y, const std::string& attrs,
                 const std::string& content) {
    out += "  <text x=\"" + px(x) + "\" y=\"" + px(y) + "\" font-size=\"11\" " + attrs + ">" +
           content + "</text>\n";
}

} // namespace

std::string emit_scatter_svg(const CorrelationReport& report,
                             const std::vector<ScatterPoint>& points) {
    constexpr double width = 640.0;
    constexpr double height = 480.0;
    constexpr double ml = 72.0, mr = 24.0, mt = 24.0, mb = 60.0;

    double x_lo = points.front().accuracy, x_hi = x_lo;
    double y_lo = points.front().xscore, y_hi = y_lo;
    for (const auto& p : points) {
        x_lo = std::min(x_lo, p.accuracy);
        x_hi = std::max(x_hi, p.accuracy);
        y_lo = std::min(y_lo, p.xscore);
        y_hi = std::max(y_hi, p.xscore);
    }
    const AxisScale xs = make_scale(x_lo, x_hi, ml, width - mr);
    const AxisScale ys = make_scale(y_lo, y_hi, height - mb, mt); // y grows upward

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const std::string axis_attr = "stroke=\"black\" stroke-width=\"1\"";
    append_line(out, ml, mt, ml, height - mb, axis_attr);
    append_line(out, ml, height - mb, width - mr, height - mb, axis_attr);

    for (int i = 0; i <= 4; ++i) {
        const double xv = xs.lo + (xs.hi - xs.lo) * i / 4.0;
        const double pxv = xs.to_pix(xv);
        append_line(out, pxv, height - mb, pxv, height - mb + 5, axis_attr);
        append_text(out, pxv, height - mb + 18, "text-anchor=\"middle\"", format_fixed(xv, 1));

        const double yv = ys.lo + (ys.hi - ys.lo) * i / 4.0;
        const double pyv = ys.to_pix(yv);
        append_line(out, ml - 5, pyv, ml, pyv, axis_attr);
        append_text(out, ml - 8, pyv + 4, "text-anchor=\"end\"", format_fixed(yv, 2));
    }

    out += "  <text x=\"" + px((ml + width - mr) / 2) + "\" y=\"" + px(height - 16) +
           "\" font-size=\"13\" text-anchor=\"middle\">" + report.dataset + "</text>\n";
    const std::string y_mid = px((mt + height - mb) / 2);
    out += "  <text x=\"18\" y=\"" + y_mid +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " + y_mid +
           ")\">xScore</text>\n";

    const double fy1 = report.ols_slope * xs.lo + report.ols_intercept;
    const double fy2 = report.ols_slope * xs.hi + report.ols_intercept;
    out += "  <line class=\"fit\" x1=\"" + px(xs.to_pix(xs.lo)) + "\" y1=\"" +
           px(ys.to_pix(fy1)) + "\" x2=\"" + px(xs.to_pix(xs.hi)) + "\" y2=\"" +
           px(ys.to_pix(fy2)) + "\" stroke=\"steelblue\" stroke-width=\"2\"/>\n";

    for (const auto& p : points) {
        out += "  <circle class=\"point\" cx=\"" + px(xs.to_pix(p.accuracy)) + "\" cy=\"" +
               px(ys.to_pix(p.xscore)) +
               "\" r=\"4\" fill=\"darkorange\" stroke=\"black\" stroke-width=\"0.5\"><title>" +
               p.model + "</title></circle>\n";
    }

    out += "</svg>\n";
    return out;
}

// --- text reports -----------------------------------------------------------------------

std::string emit_correlation_report(const CorrelationReport& report) {
    std::string out;
    out += "correlation report\n";
    out += "dataset: " + report.dataset + "\n";
    out += "models: " + std::to_string(report.n) + "\n";
    out += "pearson_r: " + format_fixed(report.pearson_r, 9) + "\n";
    out += "spearman_rho: " + format_fixed(report.spearman_rho, 9) +
           " (average ranks for ties)\n";
    out += "ols: xscore = " + format_fixed(report.ols_slope, 9) + " * accuracy " +
           (report.ols_intercept < 0 ? "- " : "+ ") +
           format_fixed(std::abs(report.ols_intercept), 9) + "\n";
    return out;
}

namespace {

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0) out += ", ";
        out += names[i];
    }
    return out;
}

} // namespace

std::string emit_subset_report(const std::vector<SubsetReport>& reports,
                               const std::string& matrix_label,
                               const std::vector<std::string>& reference_subset) {
    std::string out;
    const SubsetReport& first = reports.front();
    out += "subset search report\n";
    out += "matrix: " + matrix_label + "\n";
    out += "k: " + std::to_string(first.k) + "\n";
    out += "lambda: " + format_double(first.lambda) + "\n";
    out += "candidates: " + std::to_string(first.candidates.size()) + "\n";
    out += "tie-break: lexicographically smallest dataset tuple\n";
    out += "conventions: kendall_tau counts tied pairs as neither concordant nor discordant; "
           "spearman_rho uses average ranks\n";

    std::vector<std::string> reference = reference_subset;
    std::sort(reference.begin(), reference.end());

    for (const SubsetReport& report : reports) {
        out += "\nobjective: " + std::string(objective_name(report.objective)) +
               (objective_maximizes(report.objective) ? " (maximize)\n" : " (minimize)\n");
        const SubsetCandidate& best = report.best();
        out += "winner: " + join_names(best.datasets) + "\n";
        out += "winner_fidelity: " + format_fixed(best.fidelity, 9) + "\n";
        if (!reference.empty()) {
            const auto it = std::find_if(
                report.candidates.begin(), report.candidates.end(),
                [&](const SubsetCandidate& c) { return c.datasets == reference; });
            if (it == report.candidates.end()) {
                throw error(errc::unknown_dataset,
                            "reference subset is not among the evaluated candidates");
            }
            out += "reference: " + join_names(reference) + "\n";
            out += std::string("reference_is_winner: ") +
                   (best.datasets == reference ? "yes" : "no") + "\n";
            out += "reference_fidelity: " + format_fixed(it->fidelity, 9) + "\n";
            out += std::string("reference_ties_winner_fidelity: ") +
                   (it->fidelity == best.fidelity ? "yes" : "no") + "\n";
        }
        out += "fidelity table:\n";
        std::size_t position = 0;
        for (const SubsetCandidate& candidate : report.candidates) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%4zu  ", ++position);
            out += buf;
            out += format_fixed(candidate.fidelity, 9) + "  " + join_names(candidate.datasets) + "\n";
        }
    }
    return out;
}

std::string emit_new_model_report(const ScoreRecord& record,
                                  const AnchorTable& anchors,
                                  Lambda lambda) {
    std::string out;
    out += "new model evaluation\n";
    out += "model: " + record.model + "\n";
    out += "anchors: " + (anchors.source.empty() ? std::string("(unlabeled)") : anchors.source) +
           " (" + std::to_string(anchors.size()) + " datasets)\n";
    out += "lambda: " + format_double(lambda.value()) + "\n";
    out += "normalized values:\n";
    for (std::size_t i = 0; i < anchors.entries.size(); ++i) {
        const std::string& dataset = anchors.entries[i].dataset;
        const bool flagged = std::find(record.out_of_range.begin(), record.out_of_range.end(),
                                       dataset) != record.out_of_range.end();
        out += "  " + dataset + ": " + format_fixed(record.normalized_row[i], 4) +
               (flagged ? " [out of range]" : "") + "\n";
    }
    out += "G: " + format_fixed(record.mean_score, 4) + "\n";
    out += "V: " + format_fixed(record.variance, 4) + "\n";
    out += "xScore: " + format_fixed(record.xscore, 4) + "\n";
    out += "out_of_range: " +
           (record.out_of_range.empty() ? std::string("none") : join_names(record.out_of_range)) +
           "\n";
    return out;
}

std::string emit_element_associations_csv(const std::vector<ElementAssociation>& associations) {
    auto cell = [](const std::optional<double>& v) {
        return v ? format_fixed(*v, 6) : std::string("n/a");
    };
    std::string out =
        "element,n_present,n_absent,mean_present,mean_absent,difference,point_biserial_r\n";
    for (const auto& assoc : associations) {
        out += assoc.element;
        out += ',' + std::to_string(assoc.n_present);
        out += ',' + std::to_string(assoc.n_absent);
        out += ',' + cell(assoc.mean_xscore_present);
        out += ',' + cell(assoc.mean_xscore_absent);
        out += ',' + cell(assoc.difference);
        out += ',' + cell(assoc.point_biserial_r);
        out += '\n';
    }
    return out;
}

// --- files ----------------------------------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw error(errc::io_error, "cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw error(errc::io_error, "failed reading '" + path.string() + "'");
    }
    return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw error(errc::io_error, "cannot open '" + path.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw error(errc::io_error, "failed writing '" + path.string() + "'");
    }
}

AccuracyMatrix load_accuracy_csv(const std::filesystem::path& path) {
    return parse_accuracy_csv(read_text_file(path), path.filename().string());
}

// --- formatting ------------------------------------------------------------------------------

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string format_fixed(double value, int digits) {
    // to_chars, not snprintf: immune to LC_NUMERIC so emitted bytes never
    // depend on the host application's locale
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                         std::chars_format::fixed, digits);
    return std::string(buf, ptr);
}

} // namespace xscore
