#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xscore {

/// Every failure mode the library reports, used for exit-code mapping and
/// machine-readable diagnostics.
enum class errc {
    duplicate_cell,
    missing_cell,
    out_of_range,
    too_few_models,
    too_few_datasets,
    degenerate_column,
    degenerate_anchor,
    anchor_missing,
    bad_subset_size,
    model_set_mismatch,
    unknown_dataset,
    constant_variable,
    bad_identifier,
    parse_error,
    io_error,
};

/// Stable kebab-case token for an error kind (appears in CLI diagnostics).
const char* errc_name(errc kind) noexcept;

/// Process exit code for a given error kind: 2 for I/O and parse failures,
/// 1 for domain/validation errors.
int exit_code_for(errc kind) noexcept;

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

/// Text-format failure with a 1-based source position.
class parse_error : public error {
public:
    parse_error(const std::string& message, std::size_t line, std::size_t column)
        : error(errc::parse_error,
                "line " + std::to_string(line) + ", column " + std::to_string(column) +
                    ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace xscore
