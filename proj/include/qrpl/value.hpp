#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qrpl/errors.hpp"

namespace qrpl {

// Int is exact 64-bit; any arithmetic overflow is an error, never a wrap.
// Int and Real never mix silently except promotion at a Real operator.
struct ClassicalValue {
    std::variant<std::int64_t, double, bool> v;

    ClassicalValue() : v(std::int64_t{0}) {}
    ClassicalValue(std::int64_t i) : v(i) {}
    ClassicalValue(double d) : v(d) {}
    ClassicalValue(bool b) : v(b) {}

    bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
    bool is_real() const { return std::holds_alternative<double>(v); }
    bool is_bool() const { return std::holds_alternative<bool>(v); }

    std::int64_t as_int(SourceSpan at = {}) const;
    double as_real(SourceSpan at = {}) const;  // promotes Int, rejects Bool
    bool as_bool(SourceSpan at = {}) const;

    // Exact equality: values of different kinds are never equal.
    bool operator==(const ClassicalValue& o) const { return v == o.v; }
    bool operator!=(const ClassicalValue& o) const { return !(*this == o); }
};

std::string to_string(const ClassicalValue& v);

enum class DeclKind { Int, Real, Bool };

// A store key is a variable name plus subscripts: plain variables carry an
// empty index tuple, array cells the evaluated indices.
struct StoreKey {
    std::string name;
    std::vector<std::int64_t> idx;

    bool operator==(const StoreKey& o) const = default;
    auto operator<=>(const StoreKey& o) const = default;
};

std::string to_string(const StoreKey& k);

// Declared classical variables. Arrays carry their index ranges; reads and
// writes outside a declared range are errors.
struct ClassicalDeclInfo {
    DeclKind kind = DeclKind::Int;
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;  // empty: scalar
};

using ClassicalDecls = std::map<std::string, ClassicalDeclInfo>;

// Partial map; looking up an unbound key is an error. Store equality is exact
// value equality over all bindings, which is what branch agreement compares.
class ClassicalStore {
  public:
    const ClassicalValue& get(const StoreKey& k, SourceSpan at = {}) const;
    const ClassicalValue* find(const StoreKey& k) const;
    void set(const StoreKey& k, ClassicalValue v);
    void erase(const StoreKey& k);
    bool contains(const StoreKey& k) const { return m_.count(k) != 0; }

    bool operator==(const ClassicalStore& o) const { return m_ == o.m_; }
    bool operator!=(const ClassicalStore& o) const { return !(*this == o); }

    const std::map<StoreKey, ClassicalValue>& bindings() const { return m_; }
    std::size_t size() const { return m_.size(); }

  private:
    std::map<StoreKey, ClassicalValue> m_;
};

// Checked Int arithmetic. Division helpers follow floor semantics: the
// quotient rounds toward minus infinity and the remainder takes the sign of
// the divisor.
std::int64_t checked_add(std::int64_t a, std::int64_t b, SourceSpan at = {});
std::int64_t checked_sub(std::int64_t a, std::int64_t b, SourceSpan at = {});
std::int64_t checked_mul(std::int64_t a, std::int64_t b, SourceSpan at = {});
std::int64_t checked_neg(std::int64_t a, SourceSpan at = {});
std::int64_t floor_div(std::int64_t a, std::int64_t b, SourceSpan at = {});
std::int64_t floor_mod(std::int64_t a, std::int64_t b, SourceSpan at = {});
std::int64_t checked_pow_int(std::int64_t base, std::int64_t exp, SourceSpan at = {});

}  // namespace qrpl
