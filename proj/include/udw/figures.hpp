#pragma once

#include "udw/config.hpp"

#include <string>
#include <vector>

namespace udw {

struct labeled_config {
    std::string label; // suffix for the per-curve output file
    experiment_config cfg;
};

struct figure_bundle {
    std::string id;
    std::string recipe; // one-line external-plotter command
    std::vector<labeled_config> curves;
};

// Preconfigured sweeps reproducing the reference plots:
//   fig1 frequency window of double_gaussian(1, 5)
//   fig2 hermite_coupling(0, 1) profile with its double-gaussian overlay
//   fig3 hermite_coupling(0, 3) profile with its double-gaussian overlay
//   fig4 inertial 3+1 point-like rates, m in {0, 1, 1.5}
//   fig5 inertial 3+1 double_gaussian(1, 5) rates, m in {0, 1, 1.5}
//   fig6 accelerated 1+1 point-like rates, a in {0.1, 1, 1.5}
//   fig7 accelerated 1+1 rindler_double_gaussian(1, 5) rates, same a set
figure_bundle figure_preset(const std::string& id);

std::vector<std::string> figure_ids();

} // namespace udw
