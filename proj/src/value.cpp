#include "qrpl/value.hpp"

#include <cmath>
#include <sstream>

namespace qrpl {

std::int64_t ClassicalValue::as_int(SourceSpan at) const {
    if (!is_int()) throw RunError(ErrKind::TypeError, "expected an int value", at);
    return std::get<std::int64_t>(v);
}

double ClassicalValue::as_real(SourceSpan at) const {
    if (is_real()) return std::get<double>(v);
    if (is_int()) return static_cast<double>(std::get<std::int64_t>(v));
    throw RunError(ErrKind::TypeError, "expected a numeric value", at);
}

bool ClassicalValue::as_bool(SourceSpan at) const {
    if (!is_bool()) throw RunError(ErrKind::TypeError, "expected a bool value", at);
    return std::get<bool>(v);
}

std::string to_string(const ClassicalValue& v) {
    std::ostringstream out;
    if (v.is_int()) {
        out << std::get<std::int64_t>(v.v);
    } else if (v.is_real()) {
        out.precision(17);
        out << std::get<double>(v.v);
    } else {
        out << (std::get<bool>(v.v) ? "true" : "false");
    }
    return out.str();
}

std::string to_string(const StoreKey& k) {
    std::ostringstream out;
    out << k.name;
    if (!k.idx.empty()) {
        out << '[';
        for (std::size_t i = 0; i < k.idx.size(); ++i) {
            if (i) out << ',';
            out << k.idx[i];
        }
        out << ']';
    }
    return out.str();
}

const ClassicalValue& ClassicalStore::get(const StoreKey& k, SourceSpan at) const {
    auto it = m_.find(k);
    if (it == m_.end())
        throw RunError(ErrKind::Unbound, "unbound variable " + to_string(k), at);
    return it->second;
}

const ClassicalValue* ClassicalStore::find(const StoreKey& k) const {
    auto it = m_.find(k);
    return it == m_.end() ? nullptr : &it->second;
}

void ClassicalStore::set(const StoreKey& k, ClassicalValue v) { m_[k] = std::move(v); }

void ClassicalStore::erase(const StoreKey& k) { m_.erase(k); }

std::int64_t checked_add(std::int64_t a, std::int64_t b, SourceSpan at) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw RunError(ErrKind::Overflow, "integer overflow in addition", at);
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b, SourceSpan at) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw RunError(ErrKind::Overflow, "integer overflow in subtraction", at);
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b, SourceSpan at) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw RunError(ErrKind::Overflow, "integer overflow in multiplication", at);
    return r;
}

std::int64_t checked_neg(std::int64_t a, SourceSpan at) {
    return checked_sub(0, a, at);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b, SourceSpan at) {
    if (b == 0) throw RunError(ErrKind::DivisionByZero, "division by zero", at);
    if (a == INT64_MIN && b == -1)
        throw RunError(ErrKind::Overflow, "integer overflow in division", at);
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b, SourceSpan at) {
    if (b == 0) throw RunError(ErrKind::DivisionByZero, "modulo by zero", at);
    if (a == INT64_MIN && b == -1) return 0;
    std::int64_t r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

std::int64_t checked_pow_int(std::int64_t base, std::int64_t exp, SourceSpan at) {
    if (exp < 0)
        throw RunError(ErrKind::TypeError, "negative exponent on int base", at);
    std::int64_t acc = 1;
    std::int64_t b = base;
    std::int64_t e = exp;
    while (e > 0) {
        if (e & 1) acc = checked_mul(acc, b, at);
        e >>= 1;
        if (e > 0) b = checked_mul(b, b, at);
    }
    return acc;
}

}  // namespace qrpl
