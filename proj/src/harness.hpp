#pragma once

#include <cstdint>
#include <string>

namespace molars {

struct CorpusCheckOptions {
    std::string corpus_dir = "corpus";
    std::uint64_t seed = 1;
    int random_models = 200;
    int jobs = 1;
    bool write_expected = false;
};

struct CorpusCheckReport {
    bool ok = true;
    std::string text;
};

// Runs every task against its fixture (engine vs oracle vs expected file,
// plus export/strip validation), then the randomized equivalence suite.
CorpusCheckReport corpus_check(const CorpusCheckOptions& opts);

} // namespace molars
