#include "harness.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "corpus.hpp"
#include "oracle.hpp"
#include "randmodel.hpp"

namespace molars {

using nlohmann::json;

namespace {

// Exports against the original target metamodel and re-imports the result;
// leaked temporaries or augmented ends make the import fail.
void check_export(const LoadedTask& task, const Model& m, std::vector<std::string>& errors,
                  const std::string& where) {
    try {
        std::string doc = export_model(m, task.target_original.get());
        Model round = import_model(doc, task.target_original);
        auto violations = round.check_conformance();
        for (const auto& v : violations)
            errors.push_back(where + ": exported document violates the target metamodel: " + v);
    } catch (const Error& e) {
        errors.push_back(where + ": export/re-import failed: " + e.what());
    }
}

// Runs one task on one model document; returns the engine summary and
// collects any disagreement with the oracle.
json run_and_compare(const LoadedTask& task, const std::string& doc, std::vector<std::string>& errors,
                     const std::string& where, bool with_export_check) {
    Model m = import_for_task(task, doc);
    json predicted = oracle_predict(task.info->id, m);
    ExecStatus st = run_task(task, m);
    if (!st.ok) {
        errors.push_back(where + ": run failed: " + st.diagnostic());
        return json();
    }
    json actual = engine_summary(task.info->id, m);
    if (actual != predicted) {
        errors.push_back(where + ": engine disagrees with oracle\n  oracle: " + predicted.dump() +
                         "\n  engine: " + actual.dump());
    }
    if (with_export_check) check_export(task, m, errors, where);
    return actual;
}

// Random-model checks beyond plain engine-vs-oracle equivalence.
void random_model_extras(const std::map<std::string, LoadedTask>& tasks, const std::string& doc,
                         const std::map<std::string, json>& summaries, std::vector<std::string>& errors,
                         const std::string& where) {
    // The two circle-counting solutions agree, and the count is divisible by 3.
    auto a = summaries.find("p2_4");
    auto b = summaries.find("p2_4_a");
    if (a != summaries.end() && b != summaries.end() && !a->second.is_null() && !b->second.is_null()) {
        if (a->second != b->second)
            errors.push_back(where + ": p2_4 and p2_4_a disagree: " + a->second.dump() + " vs " +
                             b->second.dump());
        if (a->second.contains("results"))
            for (const auto& r : a->second["results"])
                if (r.is_number_integer() && r.get<std::int64_t>() % 3 != 0)
                    errors.push_back(where + ": p2_4 count " + r.dump() + " is not divisible by 3");
    }

    // Reversing twice restores the original relation support.
    const LoadedTask& rev = tasks.at("p3_a");
    try {
        Model m = import_for_task(rev, doc);
        json original = model_shape_summary(m);
        ExecStatus st1 = run_task(rev, m);
        ExecStatus st2 = run_task(rev, m);
        if (!st1.ok || !st2.ok) {
            errors.push_back(where + ": double reversal failed to run");
        } else {
            json twice = model_shape_summary(m);
            if (twice != original)
                errors.push_back(where + ": reversing twice did not restore the model\n  before: " +
                                 original.dump() + "\n  after:  " + twice.dump());
        }
    } catch (const Error& e) {
        errors.push_back(where + ": double reversal: " + e.what());
    }
}

const std::vector<std::string>& random_task_ids() {
    static const std::vector<std::string> ids = {
        "p2_1", "p2_2", "p2_3", "p2_4", "p2_4_a", "p2_5_o", "p3_a",
        "p4_1", "p4_2_o", "p5_1", "p5_2_o", "p6_o", "p6_o_r2",
    };
    return ids;
}

} // namespace

CorpusCheckReport corpus_check(const CorpusCheckOptions& opts) {
    CorpusCheckReport report;
    std::ostringstream out;

    // ---- fixture phase ----
    std::map<std::string, LoadedTask> tasks;
    int fixture_ok = 0;
    for (const TaskInfo& info : task_table()) {
        std::vector<std::string> errors;
        try {
            LoadedTask task = load_task(opts.corpus_dir, info);
            std::string doc = read_file(opts.corpus_dir + "/fixtures/" + info.fixture);
            Model m = import_for_task(task, doc);
            json predicted = oracle_predict(info.id, m);
            ExecStatus st = run_task(task, m);
            if (!st.ok) errors.push_back(std::string(info.id) + ": run failed: " + st.diagnostic());
            if (st.ok) {
                json actual = engine_summary(info.id, m);
                if (actual != predicted)
                    errors.push_back(std::string(info.id) + ": engine disagrees with oracle\n  oracle: " +
                                     predicted.dump() + "\n  engine: " + actual.dump());
                check_export(task, m, errors, info.id);

                std::string expected_path = opts.corpus_dir + "/expected/" + std::string(info.id) + ".json";
                if (opts.write_expected) {
                    write_file(expected_path, predicted.dump(2) + "\n");
                } else {
                    try {
                        json expected = json::parse(read_file(expected_path));
                        if (expected != actual)
                            errors.push_back(std::string(info.id) + ": engine result differs from " +
                                             expected_path + "\n  expected: " + expected.dump() +
                                             "\n  engine:   " + actual.dump());
                    } catch (const Error&) {
                        errors.push_back(std::string(info.id) + ": missing expected file " + expected_path +
                                         " (generate with --write-expected)");
                    }
                }
            }
            tasks.emplace(info.id, std::move(task));
        } catch (const Error& e) {
            errors.push_back(std::string(info.id) + ": " + e.what());
        }

        if (errors.empty()) {
            out << "task " << info.id << ": ok\n";
            ++fixture_ok;
        } else {
            report.ok = false;
            for (const auto& e : errors) out << "task " << info.id << ": FAIL: " << e << "\n";
        }
    }
    out << "fixtures: " << fixture_ok << "/" << task_table().size() << " ok\n";

    // ---- randomized phase ----
    if (opts.random_models > 0 && report.ok) {
        const int n = opts.random_models;
        std::vector<std::vector<std::string>> failures(static_cast<size_t>(n));
        std::mutex next_mutex;
        int next_index = 0;

        auto worker = [&]() {
            for (;;) {
                int i;
                {
                    std::lock_guard<std::mutex> lock(next_mutex);
                    if (next_index >= n) return;
                    i = next_index++;
                }
                Rng mix(opts.seed + static_cast<std::uint64_t>(i));
                std::string doc = random_graph_model(mix.next());
                std::string where = "model #" + std::to_string(i);
                std::vector<std::string>& errors = failures[static_cast<size_t>(i)];
                std::map<std::string, json> summaries;
                for (const auto& id : random_task_ids()) {
                    const LoadedTask& task = tasks.at(id);
                    summaries[id] =
                        run_and_compare(task, doc, errors, where + " task " + id, true);
                }
                random_model_extras(tasks, doc, summaries, errors, where);

                std::string greet_doc = random_greeting_model(mix.next());
                for (const char* id : {"p1_1", "p1_2", "p1_3"})
                    run_and_compare(tasks.at(id), greet_doc, errors, where + " task " + id, true);
            }
        };

        int jobs = std::max(1, opts.jobs);
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }

        int failed_models = 0;
        for (int i = 0; i < n; ++i) {
            if (failures[static_cast<size_t>(i)].empty()) continue;
            ++failed_models;
            report.ok = false;
            for (const auto& e : failures[static_cast<size_t>(i)]) out << "random: FAIL: " << e << "\n";
        }
        out << "random: " << (n - failed_models) << "/" << n << " models ok (seed " << opts.seed << ", "
            << random_task_ids().size() + 3 << " tasks each)\n";
    }

    out << (report.ok ? "corpus-check: PASS\n" : "corpus-check: FAIL\n");
    report.text = out.str();
    return report;
}

} // namespace molars
