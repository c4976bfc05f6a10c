#include "molars.h"

#include <cstring>
#include <sstream>

#include "corpus.hpp"
#include "harness.hpp"
#include "interp.hpp"
#include "lower.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "parser.hpp"

using namespace molars;

struct molars_metamodel {
    std::shared_ptr<const Metamodel> mm;
};
struct molars_model {
    Model m;
};
struct molars_program {
    std::shared_ptr<const Metamodel> mm; // keeps class indices valid
    Program program;
};

namespace {

thread_local std::string g_last_error;

int code_of(const Error& e) {
    switch (e.kind) {
        case ErrorKind::Parse: return MOLARS_E_PARSE;
        case ErrorKind::Validate: return MOLARS_E_VALIDATE;
        case ErrorKind::Runtime: return MOLARS_E_RUNTIME;
    }
    return MOLARS_E_RUNTIME;
}

int set_error(const std::string& msg, int code) {
    g_last_error = msg;
    return code;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        return set_error(e.what(), code_of(e));
    } catch (const std::exception& e) {
        return set_error(e.what(), MOLARS_E_RUNTIME);
    }
}

} // namespace

extern "C" {

const char* molars_version(void) { return "1.0.0"; }

const char* molars_last_error(void) { return g_last_error.c_str(); }

void molars_free_string(char* s) { std::free(s); }

int molars_metamodel_parse(const char* json_text, molars_metamodel** out) {
    if (!json_text || !out) return set_error("null argument", MOLARS_E_INVALID);
    return guarded([&] {
        auto mm = std::make_shared<const Metamodel>(parse_metamodel(json_text));
        *out = new molars_metamodel{std::move(mm)};
        return MOLARS_OK;
    });
}

int molars_metamodel_merge(molars_metamodel* mm, const molars_metamodel* extra) {
    if (!mm || !extra) return set_error("null argument", MOLARS_E_INVALID);
    return guarded([&] {
        mm->mm = std::make_shared<const Metamodel>(merge_metamodels(*mm->mm, *extra->mm));
        return MOLARS_OK;
    });
}

int molars_metamodel_augment(molars_metamodel* mm) {
    if (!mm) return set_error("null argument", MOLARS_E_INVALID);
    return guarded([&] {
        mm->mm = std::make_shared<const Metamodel>(augment_navigability(*mm->mm));
        return MOLARS_OK;
    });
}

int molars_metamodel_extend(molars_metamodel* mm, const char* extension_json) {
    if (!mm || !extension_json) return set_error("null argument", MOLARS_E_INVALID);
    return guarded([&] {
        Metamodel extended = extend_metamodel(*mm->mm, extension_json);
        // Manual extensions get the same navigability adjustment as imports.
        mm->mm = std::make_shared<const Metamodel>(augment_navigability(extended));
        return MOLARS_OK;
    });
}

void molars_metamodel_free(molars_metamodel* mm) { delete mm; }

int molars_model_import(const char* json_text, const molars_metamodel* mm, molars_model** out) {
    if (!json_text || !mm || !out) return set_error("null argument", MOLARS_E_INVALID);
    return guarded([&] {
        *out = new molars_model{import_model(json_text, mm->mm)};
        return MOLARS_OK;
    });
}

int molars_model_export(const molars_model* m, const molars_metamodel* strip_to, char** json_out) {
    if (!m || !json_out) return set_error("null argument", MOLARS_E_INVALID);
    return guarded([&] {
        *json_out = dup_string(export_model(m->m, strip_to ? strip_to->mm.get() : nullptr));
        return MOLARS_OK;
    });
}

int molars_model_check(const molars_model* m, char** report_out) {
    if (!m) return set_error("null argument", MOLARS_E_INVALID);
    return guarded([&] {
        auto violations = m->m.check_conformance();
        if (report_out) {
            std::string text;
            for (const auto& v : violations) text += v + "\n";
            *report_out = dup_string(text);
        }
        if (violations.empty()) return MOLARS_OK;
        return set_error(violations.front(), MOLARS_E_VALIDATE);
    });
}

void molars_model_free(molars_model* m) { delete m; }

int molars_program_parse(const char* text, const char* filename, const molars_metamodel* mm,
                         molars_program** out, char** diagnostics_out) {
    if (!text || !mm || !out) return set_error("null argument", MOLARS_E_INVALID);
    return guarded([&] {
        SourceProgram sp = parse(text, filename ? filename : "<input>");
        std::vector<Diagnostic> diags = sp.diagnostics;
        Program program;
        if (sp.ok()) {
            LowerResult lr = lower(*sp.ast, *mm->mm);
            diags.insert(diags.end(), lr.diagnostics.begin(), lr.diagnostics.end());
            program = std::move(lr.program);
        }
        if (diagnostics_out) {
            std::string text_out;
            for (const auto& d : diags) text_out += d.str() + "\n";
            *diagnostics_out = dup_string(text_out);
        }
        if (!diags.empty())
            return set_error(diags.front().str(), MOLARS_E_PARSE);
        *out = new molars_program{mm->mm, std::move(program)};
        return MOLARS_OK;
    });
}

int molars_program_run(const molars_program* p, const char* entry, molars_model* m, int trace,
                       char** trace_out) {
    if (!p || !entry || !m) return set_error("null argument", MOLARS_E_INVALID);
    return guarded([&] {
        Interpreter interp(p->program, m->m);
        std::string log;
        if (trace) interp.set_trace([&log](const std::string& line) { log += line + "\n"; });
        ExecStatus st = interp.run_entry(entry);
        if (trace && trace_out) *trace_out = dup_string(log);
        if (!st.ok) return set_error(st.diagnostic(), MOLARS_E_RUNTIME);
        return MOLARS_OK;
    });
}

void molars_program_free(molars_program* p) { delete p; }

int molars_task_count(void) { return static_cast<int>(task_table().size()); }

static void fill_task_info(const TaskInfo& t, molars_task_info* out) {
    out->id = t.id;
    out->program = t.program;
    out->source_metamodel = t.source_mm;
    out->target_metamodel = t.target_mm;
    out->extension = t.extension;
    out->fixture = t.fixture;
    out->entry = t.entry;
}

int molars_task_get(int index, molars_task_info* out) {
    if (!out || index < 0 || index >= molars_task_count())
        return set_error("task index out of range", MOLARS_E_INVALID);
    fill_task_info(task_table()[static_cast<size_t>(index)], out);
    return MOLARS_OK;
}

int molars_task_find(const char* id, molars_task_info* out) {
    if (!id || !out) return set_error("null argument", MOLARS_E_INVALID);
    const TaskInfo* t = find_task(id);
    if (!t) return set_error("unknown task '" + std::string(id) + "'", MOLARS_E_INVALID);
    fill_task_info(*t, out);
    return MOLARS_OK;
}

int molars_task_run(const char* corpus_dir, const char* task_id, const char* model_json,
                    char** engine_summary_out, char** exported_out) {
    if (!corpus_dir || !task_id || !model_json) return set_error("null argument", MOLARS_E_INVALID);
    const TaskInfo* info = find_task(task_id);
    if (!info) return set_error("unknown task '" + std::string(task_id) + "'", MOLARS_E_INVALID);
    return guarded([&] {
        LoadedTask task = load_task(corpus_dir, *info);
        Model m = import_for_task(task, model_json);
        ExecStatus st = run_task(task, m);
        if (!st.ok) return set_error(st.diagnostic(), MOLARS_E_RUNTIME);
        if (engine_summary_out)
            *engine_summary_out = dup_string(engine_summary(task_id, m).dump(2) + "\n");
        if (exported_out) *exported_out = dup_string(export_model(m, task.target_original.get()));
        return MOLARS_OK;
    });
}

int molars_oracle_predict(const char* corpus_dir, const char* task_id, const char* model_json,
                          char** summary_out) {
    if (!corpus_dir || !task_id || !model_json || !summary_out)
        return set_error("null argument", MOLARS_E_INVALID);
    const TaskInfo* info = find_task(task_id);
    if (!info) return set_error("unknown task '" + std::string(task_id) + "'", MOLARS_E_INVALID);
    return guarded([&] {
        LoadedTask task = load_task(corpus_dir, *info);
        Model m = import_for_task(task, model_json);
        *summary_out = dup_string(oracle_predict(task_id, m).dump(2) + "\n");
        return MOLARS_OK;
    });
}

int molars_corpus_check(const char* corpus_dir, uint64_t seed, int random_models, int jobs,
                        int write_expected, char** report_out) {
    if (!corpus_dir) return set_error("null argument", MOLARS_E_INVALID);
    return guarded([&] {
        CorpusCheckOptions opts;
        opts.corpus_dir = corpus_dir;
        opts.seed = seed;
        opts.random_models = random_models;
        opts.jobs = jobs;
        opts.write_expected = write_expected != 0;
        CorpusCheckReport report = corpus_check(opts);
        if (report_out) *report_out = dup_string(report.text);
        if (!report.ok) return set_error("corpus-check found disagreements", MOLARS_E_MISMATCH);
        return MOLARS_OK;
    });
}

} // extern "C"
