#pragma once

#include "morphshop/json_io.hpp"

// JSON-level entry points shared by the CLI, the HTTP service and the Python
// bindings.
namespace morphshop::api {

using io::Json;

// {violations, w, n, bestCompletion}. The selection may be partial; w/n range
// over the chosen components only (w = compatScaleMax with fewer than two).
// bestCompletion is the first solution of the root composition with the
// chosen DAs pinned, or null. Throws UnknownIdError for unresolvable ids.
Json evaluate(const MorphModel& model, const Selection& selection, const synthesis::ComposeOptions& options = {});

// Composition result as a JSON array of {selection, w, n[, parts]}.
Json compose(const MorphModel& model, const std::string& nodeId, const synthesis::ComposeOptions& options = {});

// Runs the requested aggregation strategy. With a model, prototypes are
// checked against it and DA priorities come from it.
Json aggregate(const io::AggregationRequest& request, const MorphModel* model = nullptr);

Json trajectory(const trajectory::StageCatalog& catalog);

}  // namespace morphshop::api
