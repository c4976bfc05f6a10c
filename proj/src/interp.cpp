#include "interp.hpp"

namespace molars {

namespace {

// Runtime error already annotated with its failure site.
struct ExecError : Error {
    std::string proc;
    int stmt;
    ExecError(const std::string& p, int s, const Error& cause)
        : Error(cause.kind, cause.what()), proc(p), stmt(s) {}
};

} // namespace

struct Interpreter::Scope : EvalScope {
    Scope* parent = nullptr;

    struct Entry {
        Value v;
        bool is_var = false; // assignable
        bool initialized = true;
    };
    std::map<std::string, Entry> entries;

    const Value* lookup(const std::string& name) const override {
        auto it = entries.find(name);
        if (it != entries.end()) {
            if (it->second.is_var && !it->second.initialized)
                fail_runtime("variable '" + name + "' read before initialization");
            return &it->second.v;
        }
        return parent ? parent->lookup(name) : nullptr;
    }

    bool visible(const std::string& name) const {
        if (entries.count(name)) return true;
        return parent && parent->visible(name);
    }

    void bind(const std::string& name, Value v, bool is_var, bool initialized) {
        if (visible(name)) fail_runtime("name '" + name + "' is already bound");
        entries[name] = Entry{std::move(v), is_var, initialized};
    }

    Entry* find_assignable(const std::string& name) {
        auto it = entries.find(name);
        if (it != entries.end()) return it->second.is_var ? &it->second : nullptr;
        return parent ? parent->find_assignable(name) : nullptr;
    }
};

ExecStatus Interpreter::run_procedure(const std::string& name, const std::vector<Value>& args) {
    int idx = prog_.proc_index(name);
    ExecStatus st;
    try {
        if (idx < 0) fail_runtime("unknown procedure '" + name + "'");
        call(idx, args, 0);
    } catch (const ExecError& e) {
        st.ok = false;
        st.procedure = e.proc;
        st.statement = e.stmt;
        st.message = e.what();
    } catch (const Error& e) {
        st.ok = false;
        st.procedure = name;
        st.statement = -1;
        st.message = e.what();
    }
    return st;
}

void Interpreter::call(int proc_index, const std::vector<Value>& args, int depth) {
    if (depth > kMaxCallDepth) fail_runtime("call depth limit exceeded");
    const Procedure& proc = prog_.procedures[static_cast<size_t>(proc_index)];
    if (args.size() != proc.params.size())
        fail_runtime("procedure '" + proc.name + "' expects " + std::to_string(proc.params.size()) +
                     " argument(s), got " + std::to_string(args.size()));

    Scope frame;
    for (size_t i = 0; i < proc.params.size(); ++i) {
        const Param& p = proc.params[i];
        if (p.type.is_object) {
            const ObjRef* ref = std::get_if<ObjRef>(&args[i]);
            if (!ref || !model_.is_instance_of(ref->id, p.type.cls))
                fail_runtime("argument '" + p.name + "' of '" + proc.name + "' is not a " +
                             model_.metamodel().cls(p.type.cls).name);
        } else if (!value_is(args[i], p.type.prim)) {
            fail_runtime("argument '" + p.name + "' of '" + proc.name + "' is not " +
                         prim_type_name(p.type.prim));
        }
        frame.bind(p.name, args[i], false, true);
    }
    exec_block(proc.body, frame, proc.name, depth);
}

void Interpreter::exec_block(const Block& b, Scope& scope, const std::string& proc, int depth) {
    for (size_t i = 0; i < b.stmts.size(); ++i) {
        try {
            exec_statement(b.stmts[i], scope, proc, depth);
        } catch (const ExecError&) {
            throw;
        } catch (const Error& e) {
            throw ExecError(proc, static_cast<int>(i), e);
        }
    }
}

namespace {

// Matched and created elements become visible to later statements; reference
// elements are already bound, delete elements are gone.
void bind_match(Interpreter::Scope& scope, const Pattern& p, const ElementBinding& bound) {
    for (size_t i = 0; i < p.elements.size(); ++i) {
        const PatElem& e = p.elements[i];
        if (e.kind == ElemKind::Match || e.kind == ElemKind::Create)
            scope.bind(e.name, Value(ObjRef{bound[i]}), false, true);
    }
}

} // namespace

void Interpreter::exec_statement(const Statement& s, Scope& scope, const std::string& proc, int depth) {
    switch (s.kind) {
        case Statement::K::Var: {
            if (s.value) {
                Value v = eval(*s.value, scope, model_);
                scope.bind(s.var_name, std::move(v), true, true);
            } else {
                scope.bind(s.var_name, Value(std::int64_t(0)), true, false);
            }
            return;
        }
        case Statement::K::Assign: {
            auto* entry = scope.find_assignable(s.var_name);
            if (!entry) fail_runtime("'" + s.var_name + "' is not an assignable variable");
            entry->v = eval(*s.value, scope, model_);
            entry->initialized = true;
            return;
        }
        case Statement::K::Call: {
            std::vector<Value> args;
            args.reserve(s.args.size());
            for (const auto& a : s.args) args.push_back(eval(*a, scope, model_));
            trace("call " + s.callee);
            call(s.callee_index, args, depth + 1);
            return;
        }
        case Statement::K::Rule: {
            auto match = match_rule(s.pattern, scope, model_);
            if (match) {
                apply_actions(s.pattern, *match, scope, model_);
                bind_match(scope, s.pattern, *match);
                trace("rule " + (s.pattern.name.empty() ? proc : s.pattern.name) + ": matched");
            } else {
                trace("rule " + (s.pattern.name.empty() ? proc : s.pattern.name) + ": no match");
                Scope child;
                child.parent = &scope;
                exec_block(s.else_body, child, proc, depth);
            }
            return;
        }
        case Statement::K::While: {
            long applications = 0;
            for (;;) {
                Scope iter;
                iter.parent = &scope;
                auto match = match_rule(s.pattern, iter, model_);
                if (!match) break;
                if (++applications > while_cap_)
                    fail_runtime("while-rule iteration cap (" + std::to_string(while_cap_) +
                                 ") exceeded; the rule keeps matching");
                apply_actions(s.pattern, *match, iter, model_);
            }
            trace("while " + s.pattern.name + ": " + std::to_string(applications) + " application(s)");
            return;
        }
        case Statement::K::Foreach: {
            // The candidate set is a snapshot taken at loop entry: instances
            // created in the body are never iterated. The remaining pattern is
            // re-evaluated per iteration against the current model state.
            const PatElem& lv = s.pattern.elements[static_cast<size_t>(s.loop_var)];
            std::vector<ObjectId> snapshot = model_.objects_of_class(lv.cls);
            long iterations = 0;
            for (ObjectId cand : snapshot) {
                if (!model_.alive(cand)) continue; // deleted by an earlier iteration
                Scope iter;
                iter.parent = &scope;
                auto match = match_rule_fixed(s.pattern, iter, model_, s.loop_var, cand);
                if (!match) continue;
                ++iterations;
                apply_actions(s.pattern, *match, iter, model_);
                bind_match(iter, s.pattern, *match);
                exec_block(s.body, iter, proc, depth);
            }
            trace("foreach " + lv.name + ": " + std::to_string(iterations) + " iteration(s)");
            return;
        }
    }
}

} // namespace molars
