// molars command-line front end. Only uses the public C API (molars.h);
// the pipeline it drives is: parse metamodels -> augment -> extend ->
// parse/lower program -> import model -> run entry -> export.
//
// Exit codes: 0 completed, 1 parse/validation problem or mismatch,
// 2 runtime failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "molars.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitRuntime = 2;

int exit_code_for(int rc) {
    switch (rc) {
        case MOLARS_OK: return kExitOk;
        case MOLARS_E_PARSE:
        case MOLARS_E_VALIDATE:
        case MOLARS_E_MISMATCH: return kExitDiagnostics;
        default: return kExitRuntime;
    }
}

int complain(int rc) {
    std::cerr << "error: " << molars_last_error() << "\n";
    return exit_code_for(rc);
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream os;
    os << in.rdbuf();
    out = os.str();
    return true;
}

struct MetamodelHandle {
    molars_metamodel* mm = nullptr;
    ~MetamodelHandle() { molars_metamodel_free(mm); }
};
struct ModelHandle {
    molars_model* m = nullptr;
    ~ModelHandle() { molars_model_free(m); }
};
struct ProgramHandle {
    molars_program* p = nullptr;
    ~ProgramHandle() { molars_program_free(p); }
};
struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { molars_free_string(s); }
};

// Parses all metamodel documents, merges them in order, augments
// navigability and applies the extensions. The last metamodel path is the
// export/strip target, returned separately (unaugmented).
int build_metamodel(const std::vector<std::string>& mm_paths, const std::vector<std::string>& ext_paths,
                    MetamodelHandle& runtime, MetamodelHandle& target_original) {
    for (size_t i = 0; i < mm_paths.size(); ++i) {
        std::string text;
        if (!read_file(mm_paths[i], text)) {
            std::cerr << "error: cannot open '" << mm_paths[i] << "'\n";
            return kExitDiagnostics;
        }
        if (!runtime.mm) {
            if (int rc = molars_metamodel_parse(text.c_str(), &runtime.mm)) return complain(rc);
        } else {
            MetamodelHandle part;
            if (int rc = molars_metamodel_parse(text.c_str(), &part.mm)) return complain(rc);
            if (int rc = molars_metamodel_merge(runtime.mm, part.mm)) return complain(rc);
        }
        if (i + 1 == mm_paths.size()) {
            if (int rc = molars_metamodel_parse(text.c_str(), &target_original.mm)) return complain(rc);
        }
    }
    if (int rc = molars_metamodel_augment(runtime.mm)) return complain(rc);
    for (const auto& path : ext_paths) {
        std::string text;
        if (!read_file(path, text)) {
            std::cerr << "error: cannot open '" << path << "'\n";
            return kExitDiagnostics;
        }
        if (int rc = molars_metamodel_extend(runtime.mm, text.c_str())) return complain(rc);
    }
    return kExitOk;
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    // MOLARS_SEED overrides the harness seed when set.
    if (const char* env = std::getenv("MOLARS_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring non-numeric MOLARS_SEED\n";
        }
    }
    return cli_seed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"molars — graph/model transformation engine with the Hello World task corpus"};
    app.require_subcommand(1);

    // ---- run ----
    auto* run = app.add_subcommand("run", "run a transformation program on a model");
    std::string run_program, run_entry_name = "main", run_model, run_out;
    std::vector<std::string> run_mms, run_exts;
    bool run_no_strip = false, run_trace = false;
    run->add_option("--program", run_program, "transformation program (.mt)")->required();
    run->add_option("--entry", run_entry_name, "entry procedure (default: main)");
    run->add_option("--metamodel", run_mms,
                    "metamodel document; repeatable, the last one is the export target")
        ->required();
    run->add_option("--extension", run_exts, "temporary metamodel extension; repeatable");
    run->add_option("--model", run_model, "input model document")->required();
    run->add_option("--out", run_out, "output path (default: stdout)");
    run->add_flag("--no-strip", run_no_strip, "export the full model, including temporaries");
    run->add_flag("--trace", run_trace, "log rule execution to stderr");

    // ---- validate ----
    auto* validate = app.add_subcommand("validate", "check a model against a metamodel");
    std::vector<std::string> val_mms, val_exts;
    std::string val_model;
    validate->add_option("--metamodel", val_mms, "metamodel document; repeatable")->required();
    validate->add_option("--extension", val_exts, "metamodel extension; repeatable");
    validate->add_option("--model", val_model, "model document")->required();

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "run engine and oracle for one task and compare");
    std::string or_task, or_model, or_corpus = "corpus";
    oracle->add_option("--task", or_task, "task id (p1_1 ... p6_o_r2)")->required();
    oracle->add_option("--model", or_model, "input model document")->required();
    oracle->add_option("--corpus", or_corpus, "corpus directory (default: corpus)");

    // ---- corpus-check ----
    auto* check = app.add_subcommand("corpus-check", "run all tasks on fixtures and random models");
    std::string ck_corpus = "corpus";
    std::uint64_t ck_seed = 1;
    int ck_models = 200, ck_jobs = 1;
    bool ck_write = false;
    check->add_option("--corpus", ck_corpus, "corpus directory (default: corpus)");
    check->add_option("--seed", ck_seed, "random-model seed (default: 1)");
    check->add_option("--models", ck_models, "number of random models (default: 200)");
    check->add_option("--jobs", ck_jobs, "worker threads for the random phase");
    check->add_flag("--write-expected", ck_write, "regenerate corpus/expected/*.json from the oracle");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        MetamodelHandle mm, target;
        if (int rc = build_metamodel(run_mms, run_exts, mm, target)) return rc;

        std::string program_text;
        if (!read_file(run_program, program_text)) {
            std::cerr << "error: cannot open '" << run_program << "'\n";
            return kExitDiagnostics;
        }
        ProgramHandle prog;
        {
            OwnedString diags;
            int rc = molars_program_parse(program_text.c_str(), run_program.c_str(), mm.mm, &prog.p, &diags.s);
            if (rc != MOLARS_OK) {
                if (diags.s && *diags.s) std::cerr << diags.s;
                return exit_code_for(rc);
            }
        }

        std::string model_text;
        if (!read_file(run_model, model_text)) {
            std::cerr << "error: cannot open '" << run_model << "'\n";
            return kExitDiagnostics;
        }
        ModelHandle model;
        if (int rc = molars_model_import(model_text.c_str(), mm.mm, &model.m)) return complain(rc);

        {
            OwnedString trace_log;
            int rc = molars_program_run(prog.p, run_entry_name.c_str(), model.m, run_trace ? 1 : 0,
                                        run_trace ? &trace_log.s : nullptr);
            if (run_trace && trace_log.s) std::cerr << trace_log.s;
            if (rc != MOLARS_OK) return complain(rc);
        }

        OwnedString exported;
        if (int rc = molars_model_export(model.m, run_no_strip ? nullptr : target.mm, &exported.s))
            return complain(rc);
        if (run_out.empty()) {
            std::cout << exported.s;
        } else {
            std::ofstream out(run_out, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write '" << run_out << "'\n";
                return kExitDiagnostics;
            }
            out << exported.s;
        }
        return kExitOk;
    }

    if (validate->parsed()) {
        MetamodelHandle mm, target;
        if (int rc = build_metamodel(val_mms, val_exts, mm, target)) return rc;
        std::string model_text;
        if (!read_file(val_model, model_text)) {
            std::cerr << "error: cannot open '" << val_model << "'\n";
            return kExitDiagnostics;
        }
        ModelHandle model;
        if (int rc = molars_model_import(model_text.c_str(), mm.mm, &model.m)) return complain(rc);
        OwnedString report;
        int rc = molars_model_check(model.m, &report.s);
        if (rc != MOLARS_OK) {
            if (report.s && *report.s) std::cerr << report.s;
            return exit_code_for(rc);
        }
        std::cout << "ok\n";
        return kExitOk;
    }

    if (oracle->parsed()) {
        molars_task_info info;
        if (molars_task_find(or_task.c_str(), &info) != MOLARS_OK) {
            std::cerr << "error: " << molars_last_error() << "\n";
            return kExitRuntime; // unknown task
        }
        std::string model_text;
        if (!read_file(or_model, model_text)) {
            std::cerr << "error: cannot open '" << or_model << "'\n";
            return kExitDiagnostics;
        }
        OwnedString predicted;
        if (int rc = molars_oracle_predict(or_corpus.c_str(), or_task.c_str(), model_text.c_str(),
                                           &predicted.s))
            return complain(rc);
        OwnedString actual;
        if (int rc = molars_task_run(or_corpus.c_str(), or_task.c_str(), model_text.c_str(), &actual.s,
                                     nullptr))
            return complain(rc);
        std::cout << "oracle: " << predicted.s << "engine: " << actual.s;
        if (std::string(predicted.s) == std::string(actual.s)) {
            std::cout << "agreement: yes\n";
            return kExitOk;
        }
        std::cout << "agreement: NO\n";
        return kExitDiagnostics;
    }

    if (check->parsed()) {
        OwnedString report;
        int rc = molars_corpus_check(ck_corpus.c_str(), effective_seed(ck_seed), ck_models, ck_jobs,
                                     ck_write ? 1 : 0, &report.s);
        if (report.s) std::cout << report.s;
        if (rc == MOLARS_OK) return kExitOk;
        if (rc == MOLARS_E_MISMATCH) return kExitDiagnostics;
        return complain(rc);
    }

    return kExitRuntime;
}
