#pragma once

#include <map>
#include <string>
#include <vector>

#include "qrpl/ast.hpp"
#include "qrpl/eval.hpp"

namespace qrpl {

// A quantum declaration after its bounds evaluated. Wires are numbered
// globally in declaration order, multi-index arrays row-major, so the wire
// numbering is total and canonical for the whole program.
struct QuantumDecl {
    std::string name;
    std::int64_t site_dim = 2;
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;  // inclusive
    int base = 0;                       // global id of the first wire
    std::vector<std::int64_t> mults;    // row-major multipliers per dimension

    std::int64_t wire_count() const {
        std::int64_t n = 1;
        for (const auto& [lo, hi] : ranges) n *= hi - lo + 1;
        return n;
    }
};

struct WireDesc {
    int decl = 0;  // index into WireTable::decls
    std::vector<std::int64_t> indices;
};

struct WireTable {
    std::vector<QuantumDecl> decls;
    std::map<std::string, int> by_name;
    std::vector<WireDesc> wires;  // indexed by global wire id
    std::vector<std::int64_t> dims;

    int total() const { return static_cast<int>(wires.size()); }
    std::int64_t dim_of(int wire) const { return dims[wire]; }
    std::string wire_name(int wire) const;
};

// Appends a resolved declaration, assigning global ids. Errors on duplicate
// names, empty ranges, site dimension < 2, or blowing the amplitude cap.
void add_quantum_decl(WireTable& table, const std::string& name, std::int64_t site_dim,
                      const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges,
                      std::int64_t amplitude_cap, SourceSpan at = {});

// Resolves one wire reference, evaluating subscripts against the store.
int resolve_wire(EvalContext& ctx, const ClassicalStore& store, const WireTable& table,
                 const std::string& name, const std::vector<ExprPtr>& subs,
                 SourceSpan at = {});

// Resolves a register spec to distinct global wires. Range items expand in
// ascending index order; duplicates anywhere in the register are an error.
std::vector<int> resolve_register(EvalContext& ctx, const ClassicalStore& store,
                                  const WireTable& table, const RegSpec& reg);

}  // namespace qrpl
