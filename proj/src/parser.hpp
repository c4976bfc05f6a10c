#pragma once

#include <optional>

#include "ast.hpp"

namespace molars {

// Parse result. The tree is present iff there are no error diagnostics;
// parsing never throws.
struct SourceProgram {
    std::string text;
    std::string filename;
    std::optional<AstProgram> ast;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return ast.has_value(); }
};

SourceProgram parse(const std::string& text, const std::string& filename = "<input>");

} // namespace molars
