#pragma once

#include <string>

#include "lightfl/experiment.hpp"

namespace lightfl::sim {

// Renders mean-vs-sweep line plots, one polyline per (metric, device) series.
// Purely a result display; every byte is determined by the result.
std::string render_svg(const ExperimentResult& result);
void emit_svg(const ExperimentResult& result, const std::string& path);

} // namespace lightfl::sim
