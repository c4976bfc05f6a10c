#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "interp.hpp"
#include "lower.hpp"
#include "model.hpp"

namespace molars {

// One Hello World sub-task: which program to run, over which metamodels,
// with which temporary extension and default fixture. Ids follow the
// transformation project layout ("_o" optional tasks, "_a" alternative
// solutions); file names are relative to the corpus directory.
struct TaskInfo {
    const char* id;
    const char* program;    // programs/<file>
    const char* source_mm;  // metamodels/<file>
    const char* target_mm;  // metamodels/<file>
    const char* extension;  // extensions/<file>, nullptr when unused
    const char* fixture;    // fixtures/<file>
    const char* entry;
};

const std::vector<TaskInfo>& task_table();
const TaskInfo* find_task(const std::string& id);

// Everything needed to run one task: metamodels merged, augmented and
// extended, and the program lowered against the result.
struct LoadedTask {
    const TaskInfo* info = nullptr;
    std::shared_ptr<const Metamodel> runtime_mm;
    std::shared_ptr<const Metamodel> target_original; // strip reference for export
    Program program;
};

LoadedTask load_task(const std::string& corpus_dir, const TaskInfo& info);

Model import_for_task(const LoadedTask& task, const std::string& model_json);
ExecStatus run_task(const LoadedTask& task, Model& m);

// Result summary read off a transformed model; comparing it against
// oracle_predict() of the input model is the verification contract.
nlohmann::json engine_summary(const std::string& task_id, const Model& after);

// Graph-encoding shape of a model (per graph: node names, edge counts,
// relation support, dangling breakdown). Used for identity checks.
nlohmann::json model_shape_summary(const Model& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace molars
