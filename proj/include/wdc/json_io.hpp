#pragma once

#include <string>

#include "json.hpp"

#include "wdc/beamforming.hpp"
#include "wdc/metrics.hpp"
#include "wdc/model.hpp"
#include "wdc/pipeline.hpp"
#include "wdc/scheduler.hpp"

namespace wdc {

using Json = nlohmann::json;

struct PlacementDocument {
  Placement placement;
  ReduceAssignment assignment;
};

// {"K","Q","r","n_real","n_total","mapped_files":[[..]],"reduce_sets":[[..]]}
Json placement_to_json(const Placement& p, const ReduceAssignment& a);
PlacementDocument placement_from_json(const Json& j);

// {"T","blocks":[{"receivers":[..],"deliveries":[{"q","n","to"}]}]}
Json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const Json& j, int K, int Q);

Json report_to_json(const FeasibilityReport& r);

// {"K","h_min","h_max","seed","coefficients":[[[re,im],..],..]}
Json channel_to_json(const ChannelMatrix& H);
ChannelMatrix channel_from_json(const Json& j);

Json load_report_to_json(const LoadReport& r);

Json simulation_summary_to_json(const SimulationResult& r);

/// Parses text; failures become Error(kParse).
Json parse_json(const std::string& text, const std::string& what);

}  // namespace wdc
