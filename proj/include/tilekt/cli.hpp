#pragma once

#include "tilekt/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tilekt {

enum ExitCode : int { exit_ok = 0, exit_input = 1, exit_math = 2 };

enum class CheckStatus { ok, mismatch, flagged, error };

// One compared quantity of one corpus row.
struct CorpusCheck {
    std::string quantity;
    std::string computed;
    std::string expected;
    std::string reference;  // set for flagged reference-table entries
    CheckStatus status = CheckStatus::ok;
};

struct CorpusRow {
    std::string name;
    std::string document;
    std::vector<CorpusCheck> checks;
};

struct CorpusResult {
    std::vector<CorpusRow> rows;

    std::size_t count(CheckStatus s) const;
    int exit_code() const;
};

struct CorpusOptions {
    LimitOptions limit;
    Route route = Route::stable;
};

// TILEKT_CORPUS_DIR if set, else the bundled data directory.
std::string default_corpus_dir();

// Reads <dir>/corpus.json; throws InputError when the manifest is unreadable.
CorpusResult run_corpus(const std::string& dir, const CorpusOptions& opts = {});

std::string corpus_text(const CorpusResult& r);
nlohmann::ordered_json corpus_json(const CorpusResult& r);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tilekt
