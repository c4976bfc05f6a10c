#pragma once

#include <functional>
#include <map>
#include <string>

#include "program.hpp"

namespace molars {

struct ExecStatus {
    bool ok = true;
    std::string procedure; // failure site
    int statement = -1;    // index within the failing procedure's block
    std::string message;

    std::string diagnostic() const {
        if (ok) return "completed";
        return "procedure '" + procedure + "', statement " + std::to_string(statement) + ": " + message;
    }
};

using TraceSink = std::function<void(const std::string&)>;

// Executes program IR against a model. Single-threaded per model; a fresh
// frame is pushed per procedure call, a child scope per loop iteration.
class Interpreter {
public:
    struct Scope;

    Interpreter(const Program& prog, Model& model) : prog_(prog), model_(model) {}

    void set_trace(TraceSink sink) { trace_ = std::move(sink); }
    void set_while_cap(long cap) { while_cap_ = cap; }

    ExecStatus run_procedure(const std::string& name, const std::vector<Value>& args);
    ExecStatus run_entry(const std::string& name) { return run_procedure(name, {}); }

private:
    void exec_block(const Block& b, Scope& scope, const std::string& proc, int depth);
    void exec_statement(const Statement& s, Scope& scope, const std::string& proc, int depth);
    void call(int proc_index, const std::vector<Value>& args, int depth);
    void trace(const std::string& msg) {
        if (trace_) trace_(msg);
    }

    const Program& prog_;
    Model& model_;
    TraceSink trace_;
    long while_cap_ = 1000000;
    static constexpr int kMaxCallDepth = 10000;
};

} // namespace molars
