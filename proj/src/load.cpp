#include "qrpl/load.hpp"

#include <set>

namespace qrpl {

namespace {

constexpr std::int64_t kMaxArrayCells = 1LL << 22;

ClassicalValue default_value(DeclKind kind) {
    switch (kind) {
        case DeclKind::Int: return ClassicalValue{std::int64_t{0}};
        case DeclKind::Real: return ClassicalValue{0.0};
        case DeclKind::Bool: return ClassicalValue{false};
    }
    return {};
}

struct Loader {
    ProgramEnv& env;
    const LoadOptions& opts;
    EvalContext ctx;
    std::set<std::string> used_overrides;

    Loader(ProgramEnv& e, const LoadOptions& o) : env(e), opts(o) {
        ctx.decls = &env.decls;
    }

    void check_fresh(const std::string& name, SourceSpan at) {
        if (env.decls.count(name) || env.wires.by_name.count(name))
            throw RunError(ErrKind::DuplicateName, "duplicate declaration of " + name, at);
    }

    void run(const VarDeclAst& d) {
        check_fresh(d.name, d.span);
        ClassicalDeclInfo info;
        info.kind = d.kind;
        if (d.range_lo) {
            std::int64_t lo = eval_expr(ctx, env.store, *d.range_lo).as_int(d.span);
            std::int64_t hi = eval_expr(ctx, env.store, *d.range_hi).as_int(d.span);
            if (lo > hi)
                throw RunError(ErrKind::OutOfRange,
                               "empty index range on " + d.name, d.span);
            if (hi - lo + 1 > kMaxArrayCells)
                throw RunError(ErrKind::SizeCap, d.name + " is too large", d.span);
            info.ranges.push_back({lo, hi});
            env.decls[d.name] = info;
            if (opts.overrides.count(d.name))
                throw RunError(ErrKind::BadInput,
                               d.name + " is an array; bind it through a data file",
                               d.span);
            std::vector<ClassicalValue> cells;
            if (!d.init_list.empty()) {
                if (static_cast<std::int64_t>(d.init_list.size()) != hi - lo + 1)
                    throw RunError(ErrKind::BadInput,
                                   "initializer length does not match " + d.name,
                                   d.span);
                for (const ExprPtr& e : d.init_list)
                    cells.push_back(eval_expr(ctx, env.store, *e));
            } else {
                cells.assign(hi - lo + 1, default_value(d.kind));
            }
            for (std::int64_t i = lo; i <= hi; ++i)
                store_write(ctx, env.store, StoreKey{d.name, {i}},
                            cells[static_cast<std::size_t>(i - lo)], d.span);
            return;
        }
        env.decls[d.name] = info;
        ClassicalValue v = default_value(d.kind);
        if (d.init) v = eval_expr(ctx, env.store, *d.init);
        auto ov = opts.overrides.find(d.name);
        if (ov != opts.overrides.end()) {
            v = ov->second;
            used_overrides.insert(d.name);
        }
        store_write(ctx, env.store, StoreKey{d.name, {}}, v, d.span);
    }

    void run(const QuantumDeclAst& d) {
        if (env.decls.count(d.name))
            throw RunError(ErrKind::DuplicateName, "duplicate declaration of " + d.name,
                           d.span);
        std::int64_t site_dim = 2;
        if (d.site_dim) site_dim = eval_expr(ctx, env.store, *d.site_dim).as_int(d.span);
        std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
        for (const auto& [lo, hi] : d.ranges)
            ranges.push_back({eval_expr(ctx, env.store, *lo).as_int(d.span),
                              eval_expr(ctx, env.store, *hi).as_int(d.span)});
        add_quantum_decl(env.wires, d.name, site_dim, ranges, env.amplitude_cap, d.span);
    }

    void run(const GateDeclAst& d) {
        if (is_builtin_gate(d.name))
            throw RunError(ErrKind::DuplicateName, d.name + " shadows a builtin gate",
                           d.span);
        if (env.gates.count(d.name))
            throw RunError(ErrKind::DuplicateName, "duplicate gate " + d.name, d.span);
        CMat m;
        if (!d.matrix.empty()) {
            std::size_t n = d.matrix.size();
            m.resize(n, n);
            for (std::size_t r = 0; r < n; ++r) {
                if (d.matrix[r].size() != n)
                    throw RunError(ErrKind::DimensionMismatch,
                                   d.name + " must be square", d.span);
                for (std::size_t c = 0; c < n; ++c) m(r, c) = d.matrix[r][c];
            }
            CMat gram = m.adjoint() * m;
            gram -= CMat::Identity(n, n);
            if (gram.cwiseAbs().maxCoeff() > kEpsUnitary)
                throw RunError(ErrKind::NonUnitary, d.name + " is not unitary", d.span);
        } else {
            // Alias arguments evaluate once, here, against the declarations
            // seen so far.
            std::vector<ClassicalValue> args;
            for (const ExprPtr& e : d.base_args)
                args.push_back(eval_expr(ctx, env.store, *e));
            m = gate_matrix(env.gates, d.base, args, d.span);
        }
        env.gates[d.name] = std::move(m);
    }
};

}  // namespace

const ProcDecl* ProgramEnv::find_proc(const std::string& name) const {
    auto it = procs.find(name);
    if (it == procs.end()) return nullptr;
    return &program.procs[it->second];
}

ProgramEnv load_program(Program program, const LoadOptions& opts) {
    ProgramEnv env;
    env.program = std::move(program);
    env.amplitude_cap = opts.amplitude_cap;
    Loader loader(env, opts);
    for (const Decl& d : env.program.decls)
        std::visit([&](const auto& node) { loader.run(node); }, d);
    for (std::size_t i = 0; i < env.program.procs.size(); ++i) {
        const ProcDecl& p = env.program.procs[i];
        if (!env.procs.emplace(p.name, static_cast<int>(i)).second)
            throw RunError(ErrKind::DuplicateName, "duplicate procedure " + p.name,
                           p.span);
        std::set<std::string> seen(p.params.begin(), p.params.end());
        if (seen.size() != p.params.size())
            throw RunError(ErrKind::DuplicateName,
                           "duplicate parameter in " + p.name, p.span);
    }
    for (const auto& [name, value] : opts.overrides)
        if (!loader.used_overrides.count(name))
            throw RunError(ErrKind::BadInput, "no scalar variable named " + name +
                                                  " to override");
    return env;
}

void bind_scalar(ProgramEnv& env, const std::string& name, ClassicalValue v) {
    auto it = env.decls.find(name);
    if (it == env.decls.end())
        throw RunError(ErrKind::BadInput, "no declared variable named " + name);
    if (!it->second.ranges.empty())
        throw RunError(ErrKind::BadInput, name + " is an array; bind a list");
    EvalContext ctx;
    ctx.decls = &env.decls;
    store_write(ctx, env.store, StoreKey{name, {}}, v);
}

void bind_list(ProgramEnv& env, const std::string& name,
               const std::vector<ClassicalValue>& values) {
    auto it = env.decls.find(name);
    if (it == env.decls.end())
        throw RunError(ErrKind::BadInput, "no declared variable named " + name);
    if (it->second.ranges.size() != 1)
        throw RunError(ErrKind::BadInput, name + " is not a one-dimensional array");
    auto [lo, hi] = it->second.ranges[0];
    if (static_cast<std::int64_t>(values.size()) != hi - lo + 1)
        throw RunError(ErrKind::BadInput,
                       "expected " + std::to_string(hi - lo + 1) + " values for " +
                           name + ", got " + std::to_string(values.size()));
    EvalContext ctx;
    ctx.decls = &env.decls;
    for (std::size_t i = 0; i < values.size(); ++i)
        store_write(ctx, env.store, StoreKey{name, {lo + static_cast<std::int64_t>(i)}},
                    values[i]);
}

}  // namespace qrpl
