#pragma once

#include <json.hpp>

#include "model.hpp"

namespace molars {

// Direct, non-DSL computation of each task's contract from the INPUT model.
// Pure; shares nothing with the pattern engine or interpreter beyond reading
// the repository. Comparing this against engine_summary() of the transformed
// model is the corpus verification contract.
nlohmann::json oracle_predict(const std::string& task_id, const Model& input);

} // namespace molars
