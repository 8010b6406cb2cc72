#pragma once

#include "udw/config.hpp"

#include <string>
#include <vector>

namespace udw {

struct sweep_row {
    double axis;
    double value;
    double est_error;
    rate_path path;
    bool converged;
};

struct sweep_table {
    quantity_kind quantity = quantity_kind::vacuum_rate;
    std::vector<sweep_row> rows;
};

// Evaluates the configured quantity over the grid with up to `workers`
// concurrent evaluators. Rows are indexed by grid position, so the output
// order and content are independent of scheduling.
sweep_table run_sweep(const experiment_config& cfg, int workers = 1);

// Fixed column set (axis, rate, est_error, path, converged); numbers are
// printed in the shortest form that reparses to the same value.
std::string emit_csv(const sweep_table& t);
std::string emit_json(const sweep_table& t);

// Reparses an emitted CSV body; the round-trip is value-identical.
std::vector<sweep_row> parse_csv_rows(const std::string& text);

// Explicit count wins, then UDW_WORKERS, then hardware concurrency.
int resolve_workers(int cli_workers);

} // namespace udw
