#pragma once

#include "udw/detector.hpp"

#include <string>
#include <vector>

namespace udw {

enum class quantity_kind {
    window,        // frequency window vs k (or Rindler frequency)
    profile,       // spatial profile vs position
    vacuum_rate,   // vacuum transition rate vs delta
    particle_rate, // one-particle rate vs tau or delta
    kms_check,     // detailed-balance ratio vs delta > 0
    hermite_fit    // double-gaussian fit of a hermite coupling
};

enum class sweep_axis { delta, tau, k };

struct sweep_spec {
    sweep_axis axis = sweep_axis::delta;
    double start = 0.0;
    double stop = 0.0;
    long points = 0;
};

struct tolerance_spec {
    double quad_tol = 1e-8;
    double tail_tol = 1e-10;
};

enum class output_format { csv, json };

struct output_spec {
    output_format format = output_format::csv;
    std::string path = "out.csv";
};

struct experiment_config {
    model_spec model;
    double fixed_tau = 0.0; // particle-rate sweeps over delta hold tau here
    sweep_spec sweep;
    bool has_sweep = false;
    tolerance_spec tol;
    output_spec out;
    quantity_kind quantity = quantity_kind::vacuum_rate;
};

// Evenly spaced grid including both endpoints.
std::vector<double> axis_values(const sweep_spec& s);

// Parses the line-oriented `key = value` format with `#` comments and
// bracketed section headers. Collects every syntax and semantic problem and
// throws a single config_error listing them all.
experiment_config parse_config(const std::string& text);

// Reads the file and parses it; file errors become config_error.
experiment_config load_config_file(const std::string& path);

// Re-checks the constraints that depend on what is being computed (axis
// choice, state kind, infrared band of accelerated delta grids).
void validate_for_quantity(const experiment_config& cfg, quantity_kind q);

// Serializes a config so that parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const experiment_config& cfg);

const char* quantity_name(quantity_kind q);

} // namespace udw
