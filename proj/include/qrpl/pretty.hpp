#pragma once

#include <string>

#include "qrpl/ast.hpp"

namespace qrpl {

// Canonical source form. Feeding the output back through parse yields a
// structurally equal program.
std::string pretty(const Program& p);
std::string pretty(const Stmt& s);
std::string pretty(const Expr& e);

}  // namespace qrpl
