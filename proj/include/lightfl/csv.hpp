#pragma once

#include <iosfwd>
#include <string>

#include "lightfl/experiment.hpp"

namespace lightfl::sim {

// Locale-independent shortest-round-trip decimal rendering.
std::string format_double(double v);

// Schema: experiment,sweep_name,sweep_value,device,metric,mean,std,q05,q95,n_feasible,n_total
// Rows are ordered by (sweep_value, device, metric); header always present.
void emit_csv(const ExperimentResult& result, std::ostream& out);
void emit_csv(const ExperimentResult& result, const std::string& path);

// Round-trip parser used by determinism and schema tests.
ExperimentResult parse_csv(std::istream& in);

} // namespace lightfl::sim
