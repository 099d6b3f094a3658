#include "qrpl/model.hpp"

#include <set>

namespace qrpl {

std::string WireTable::wire_name(int wire) const {
    const WireDesc& d = wires[wire];
    std::string s = decls[d.decl].name;
    if (!d.indices.empty()) {
        s += '[';
        for (std::size_t i = 0; i < d.indices.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(d.indices[i]);
        }
        s += ']';
    }
    return s;
}

void add_quantum_decl(WireTable& table, const std::string& name, std::int64_t site_dim,
                      const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges,
                      std::int64_t amplitude_cap, SourceSpan at) {
    if (table.by_name.count(name))
        throw RunError(ErrKind::DuplicateName, "duplicate quantum variable " + name, at);
    if (site_dim < 2)
        throw RunError(ErrKind::OutOfRange, "site dimension must be at least 2", at);
    QuantumDecl d;
    d.name = name;
    d.site_dim = site_dim;
    d.ranges = ranges;
    d.base = table.total();
    for (const auto& [lo, hi] : ranges)
        if (lo > hi)
            throw RunError(ErrKind::OutOfRange,
                           "empty index range [" + std::to_string(lo) + ":" +
                               std::to_string(hi) + "] on " + name,
                           at);
    std::int64_t count = d.wire_count();
    if (count > (1LL << 26))
        throw RunError(ErrKind::SizeCap, "too many wires declared by " + name, at);
    d.mults.assign(ranges.size(), 1);
    for (int i = static_cast<int>(ranges.size()) - 2; i >= 0; --i)
        d.mults[i] = d.mults[i + 1] * (ranges[i + 1].second - ranges[i + 1].first + 1);

    // Amplitude budget: multiply the current state dimension by site_dim for
    // every new wire, refusing before anything can overflow.
    long double total = 1.0L;
    for (auto dim : table.dims) total *= static_cast<long double>(dim);
    for (std::int64_t k = 0; k < count; ++k) {
        total *= static_cast<long double>(site_dim);
        if (total > static_cast<long double>(amplitude_cap))
            throw RunError(ErrKind::SizeCap,
                           "state space exceeds the amplitude cap at " + name, at);
    }

    int decl_index = static_cast<int>(table.decls.size());
    std::vector<std::int64_t> idx;
    for (const auto& [lo, hi] : ranges) idx.push_back(lo);
    for (std::int64_t k = 0; k < count; ++k) {
        table.wires.push_back(WireDesc{decl_index, idx});
        table.dims.push_back(site_dim);
        for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
            if (++idx[i] <= ranges[i].second) break;
            idx[i] = ranges[i].first;
        }
    }
    table.by_name[name] = decl_index;
    table.decls.push_back(std::move(d));
}

int resolve_wire(EvalContext& ctx, const ClassicalStore& store, const WireTable& table,
                 const std::string& name, const std::vector<ExprPtr>& subs,
                 SourceSpan at) {
    auto it = table.by_name.find(name);
    if (it == table.by_name.end())
        throw RunError(ErrKind::UnknownWire, "unknown quantum variable " + name, at);
    const QuantumDecl& d = table.decls[it->second];
    if (subs.size() != d.ranges.size())
        throw RunError(ErrKind::TypeError,
                       "wrong number of subscripts on " + name + ": got " +
                           std::to_string(subs.size()) + ", declared " +
                           std::to_string(d.ranges.size()),
                       at);
    std::int64_t offset = 0;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        std::int64_t v = eval_expr(ctx, store, *subs[i]).as_int(subs[i]->span);
        if (v < d.ranges[i].first || v > d.ranges[i].second)
            throw RunError(ErrKind::OutOfRange,
                           "index " + std::to_string(v) + " outside " + name + "[" +
                               std::to_string(d.ranges[i].first) + ":" +
                               std::to_string(d.ranges[i].second) + "]",
                           at);
        offset += (v - d.ranges[i].first) * d.mults[i];
    }
    return d.base + static_cast<int>(offset);
}

std::vector<int> resolve_register(EvalContext& ctx, const ClassicalStore& store,
                                  const WireTable& table, const RegSpec& reg) {
    std::vector<int> wires;
    for (const RegItem& item : reg) {
        if (item.is_range()) {
            auto it = table.by_name.find(item.name);
            if (it == table.by_name.end())
                throw RunError(ErrKind::UnknownWire,
                               "unknown quantum variable " + item.name, item.span);
            const QuantumDecl& d = table.decls[it->second];
            if (d.ranges.size() != 1)
                throw RunError(ErrKind::TypeError,
                               "range spec needs a one-dimensional array", item.span);
            std::int64_t lo =
                eval_expr(ctx, store, *item.range_lo).as_int(item.range_lo->span);
            std::int64_t hi =
                eval_expr(ctx, store, *item.range_hi).as_int(item.range_hi->span);
            if (lo > hi)
                throw RunError(ErrKind::OutOfRange, "empty register range", item.span);
            if (lo < d.ranges[0].first || hi > d.ranges[0].second)
                throw RunError(ErrKind::OutOfRange,
                               "range [" + std::to_string(lo) + ":" +
                                   std::to_string(hi) + "] outside " + item.name,
                               item.span);
            for (std::int64_t v = lo; v <= hi; ++v)
                wires.push_back(d.base + static_cast<int>(v - d.ranges[0].first));
        } else {
            wires.push_back(
                resolve_wire(ctx, store, table, item.name, item.subs, item.span));
        }
    }
    std::set<int> seen;
    for (int w : wires)
        if (!seen.insert(w).second)
            throw RunError(ErrKind::DuplicateWire,
                           "wire " + table.wire_name(w) + " repeated in register");
    return wires;
}

}  // namespace qrpl
