#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace udw {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Polynomial / wavefunction order outside the supported range.
struct unsupported_order : error {
    using error::error;
};

// Evaluation requested inside the infrared guard band around zero frequency.
struct infrared_error : error {
    using error::error;
};

// Pointwise evaluation of a distributional (delta-like) profile.
struct distributional_profile : error {
    using error::error;
};

// Bessel kernel degenerates (zero transverse mass in the massless case).
struct kernel_degeneracy : error {
    using error::error;
};

// Quadrature failed to reach the requested tolerance within budget.
struct quadrature_failure : error {
    quadrature_failure(const std::string& msg, double partial, double est)
        : error(msg), partial_value(partial), est_error(est) {}
    double partial_value;
    double est_error;
};

// Invalid model construction (profile/trajectory/state/spacetime mismatch).
struct model_error : error {
    using error::error;
};

// Config parsing/validation; carries every issue found, not just the first.
struct config_error : error {
    config_error(const std::string& msg, std::vector<std::string> all)
        : error(msg), issues(std::move(all)) {}
    std::vector<std::string> issues;
};

} // namespace udw
