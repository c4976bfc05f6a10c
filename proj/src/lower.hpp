#pragma once

#include "ast.hpp"
#include "metamodel.hpp"
#include "program.hpp"

namespace molars {

struct LowerResult {
    Program program;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

// Resolves every class, attribute and association-end name against the
// (augmented, possibly extended) metamodel, type-checks all expressions and
// produces interpreter IR. Never throws; problems land in diagnostics.
LowerResult lower(const AstProgram& ast, const Metamodel& mm);

} // namespace molars
