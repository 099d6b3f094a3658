#pragma once

#include <vector>

#include "qrpl/ast.hpp"

namespace qrpl {

// Non-throwing whole-program validation: name and arity errors, malformed
// gates, and branch labels that cannot match their coin. Checks needing
// runtime values (dynamic bounds, dynamic coin widths) are left to the
// interpreter. Diagnostics come back sorted by source position.
std::vector<Diagnostic> static_check(const Program& p);

}  // namespace qrpl
