#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qrpl {

struct SourcePos {
    int line = 0;  // 1-based; 0 means "no location"
    int col = 0;
};

struct SourceSpan {
    SourcePos begin;
    SourcePos end;
};

// Everything that can stop a run. The name of the kind is part of the CLI
// contract: runtime failures print exactly one of these identifiers.
enum class ErrKind {
    OutOfRange,
    TypeError,
    Unbound,
    DuplicateWire,
    DuplicateTarget,
    DuplicateName,
    DivisionByZero,
    Overflow,
    FuelExhausted,
    RecursionLimit,
    CoinViolation,
    ClassicalDivergence,
    DimensionMismatch,
    NonUnitary,
    NonUnitaryResult,
    ClassicalStoreMismatch,
    UnknownWire,
    UnknownName,
    LayoutMismatch,
    SizeCap,
    ZeroVector,
    BadInput,
};

const char* to_string(ErrKind k);

class RunError : public std::runtime_error {
  public:
    RunError(ErrKind kind, const std::string& msg, SourceSpan span = {})
        : std::runtime_error(msg), kind_(kind), span_(span) {}

    ErrKind kind() const { return kind_; }
    const SourceSpan& span() const { return span_; }

  private:
    ErrKind kind_;
    SourceSpan span_;
};

// Raised by the lexer/parser only; static analysis reports Diagnostics instead.
class SyntaxError : public std::runtime_error {
  public:
    SyntaxError(const std::string& msg, SourcePos pos)
        : std::runtime_error(msg), pos_(pos) {}

    const SourcePos& pos() const { return pos_; }

  private:
    SourcePos pos_;
};

struct Diagnostic {
    std::string code;     // short machine-readable tag, e.g. "NonUnitary"
    std::string message;  // human-readable explanation
    SourcePos pos;
};

// "file:line:col: error: message" per diagnostic, one per line.
std::string format_diagnostics(const std::vector<Diagnostic>& ds, const std::string& file);

}  // namespace qrpl
