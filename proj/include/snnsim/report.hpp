#pragma once

#include <string>

#include "snnsim/experiment.hpp"

namespace snnsim {

// Fixed column order: policy,network,rate,map_seed,accuracy,latency_s,
// energy_j,area_norm. Doubles are printed in shortest round-trip form, so
// identical results serialize to identical bytes.
std::string sweep_to_csv(const SweepResult &result);
SweepResult sweep_from_csv(const std::string &csv);

void write_csv(const SweepResult &result, const std::string &path);
SweepResult read_csv(const std::string &path);

// Renders accuracy_vs_rate.svg (one polyline per policy, mean accuracy
// over fault maps at each rate) and latency.svg / energy.svg / area.svg
// (one bar per policy) into out_dir.
//
// Throws std::invalid_argument on an empty result and std::runtime_error
// on I/O failure.
void write_svg_plots(const SweepResult &result, const std::string &out_dir);

} // namespace snnsim
