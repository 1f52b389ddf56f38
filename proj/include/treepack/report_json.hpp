#pragma once

#include <json.hpp>

#include "treepack/decomposition.hpp"
#include "treepack/furer_raghavachari.hpp"
#include "treepack/mwu_solver.hpp"
#include "treepack/pipelines.hpp"
#include "treepack/sparsify.hpp"

namespace treepack {

// Wall-clock fields are only emitted when with_timing is set, so that
// default output is byte-identical across runs.
nlohmann::json to_json(const MwuReport& r, bool with_timing = false);
nlohmann::json to_json(const MincostReport& r, bool with_timing = false);
nlohmann::json to_json(const SparsifyReport& r);
nlohmann::json to_json(const VerifyReport& r, bool with_timing = false);
nlohmann::json to_json(const DegreeWitness& w);
nlohmann::json to_json(const TrialOutcome& t);
nlohmann::json to_json(const BdstReport& r, bool with_timing = false);
nlohmann::json decomposition_to_json(const ImplicitDecomposition& d);

}  // namespace treepack
