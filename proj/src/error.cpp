#include "xscore/error.hpp"

namespace xscore {

const char* errc_name(errc kind) noexcept {
    switch (kind) {
        case errc::duplicate_cell: return "duplicate-cell";
        case errc::missing_cell: return "missing-cell";
        case errc::out_of_range: return "out-of-range";
        case errc::too_few_models: return "too-few-models";
        case errc::too_few_datasets: return "too-few-datasets";
        case errc::degenerate_column: return "degenerate-column";
        case errc::degenerate_anchor: return "degenerate-anchor";
        case errc::anchor_missing: return "anchor-missing";
        case errc::bad_subset_size: return "bad-subset-size";
        case errc::model_set_mismatch: return "model-set-mismatch";
        case errc::unknown_dataset: return "unknown-dataset";
        case errc::constant_variable: return "constant-variable";
        case errc::bad_identifier: return "bad-identifier";
        case errc::parse_error: return "parse-error";
        case errc::io_error: return "io-error";
    }
    return "unknown";
}

int exit_code_for(errc kind) noexcept {
    switch (kind) {
        case errc::parse_error:
        case errc::io_error:
            return 2;
        default:
            return 1;
    }
}

} // namespace xscore
