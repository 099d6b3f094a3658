#pragma once

#include <string>
#include <vector>

#include "qrpl/ast.hpp"

namespace qrpl {

// One program asset plus the oracle its verification runs against. Fidelity
// is "verbatim" for straight transliterations of the published programs and
// "corrected" where the printed text desk-checks as defective; corrected
// entries say in `note` what was wrong.
struct StdlibEntry {
    std::string name;
    std::string file;      // relative to the asset directory
    std::string entry;     // entry call, e.g. "QFT(1, n)"; empty means main
    std::string oracle;    // oracle binding, e.g. "dft" or "error CoinViolation"
    std::string fidelity;  // "verbatim" | "corrected"
    std::string note;
};

// Reads manifest.json from the asset directory and checks integrity: every
// listed file must exist, parse, and pass the static checks.
std::vector<StdlibEntry> load_stdlib(const std::string& dir);

// Convenience for tools and tests.
std::string read_text_file(const std::string& path);

}  // namespace qrpl
