#include "qrpl/errors.hpp"

#include <sstream>

namespace qrpl {

const char* to_string(ErrKind k) {
    switch (k) {
        case ErrKind::OutOfRange: return "OutOfRange";
        case ErrKind::TypeError: return "TypeError";
        case ErrKind::Unbound: return "Unbound";
        case ErrKind::DuplicateWire: return "DuplicateWire";
        case ErrKind::DuplicateTarget: return "DuplicateTarget";
        case ErrKind::DuplicateName: return "DuplicateName";
        case ErrKind::DivisionByZero: return "DivisionByZero";
        case ErrKind::Overflow: return "Overflow";
        case ErrKind::FuelExhausted: return "FuelExhausted";
        case ErrKind::RecursionLimit: return "RecursionLimit";
        case ErrKind::CoinViolation: return "CoinViolation";
        case ErrKind::ClassicalDivergence: return "ClassicalDivergence";
        case ErrKind::DimensionMismatch: return "DimensionMismatch";
        case ErrKind::NonUnitary: return "NonUnitary";
        case ErrKind::NonUnitaryResult: return "NonUnitaryResult";
        case ErrKind::ClassicalStoreMismatch: return "ClassicalStoreMismatch";
        case ErrKind::UnknownWire: return "UnknownWire";
        case ErrKind::UnknownName: return "UnknownName";
        case ErrKind::LayoutMismatch: return "LayoutMismatch";
        case ErrKind::SizeCap: return "SizeCap";
        case ErrKind::ZeroVector: return "ZeroVector";
        case ErrKind::BadInput: return "BadInput";
    }
    return "Unknown";
}

std::string format_diagnostics(const std::vector<Diagnostic>& ds, const std::string& file) {
    std::ostringstream out;
    for (const auto& d : ds) {
        out << file << ':' << d.pos.line << ':' << d.pos.col << ": error: " << d.message
            << '\n';
    }
    return out.str();
}

}  // namespace qrpl
