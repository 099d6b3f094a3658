#pragma once

#include <string>

#include "qrpl/ast.hpp"

namespace qrpl {

// Parses a whole program. Throws SyntaxError with a 1-based position on the
// first malformed construct.
Program parse(const std::string& src);

// Parses an entry-point spec such as "QFT(1, n)" or "Main". Arguments are
// expressions evaluated against the initial store.
struct EntryCall {
    std::string proc;
    std::vector<ExprPtr> args;
};
EntryCall parse_entry(const std::string& text);

}  // namespace qrpl
