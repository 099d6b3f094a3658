#include "qrpl/interp.hpp"

#include "qrpl/pretty.hpp"

namespace qrpl {

namespace {

std::string join_values(const std::vector<ClassicalValue>& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ", ";
        s += to_string(vs[i]);
    }
    return s;
}

}  // namespace

CVec ket_vector_of(const Ket& ket, const std::vector<std::int64_t>& dims,
                   SourceSpan at) {
    std::int64_t dim = 1;
    for (std::int64_t d : dims) dim *= d;
    switch (ket.kind) {
        case Ket::Kind::Bits: {
            if (ket.bits.size() != dims.size())
                throw RunError(ErrKind::DimensionMismatch,
                               "|" + ket.bits + "> labels " +
                                   std::to_string(ket.bits.size()) + " wire(s), coin has " +
                                   std::to_string(dims.size()),
                               at);
            std::int64_t index = 0;
            for (std::size_t i = 0; i < dims.size(); ++i) {
                std::int64_t digit = ket.bits[i] - '0';
                if (digit >= dims[i])
                    throw RunError(ErrKind::OutOfRange,
                                   "digit " + std::to_string(digit) +
                                       " exceeds the wire dimension",
                                   at);
                index = index * dims[i] + digit;
            }
            CVec v = CVec::Zero(dim);
            v(index) = 1.0;
            return v;
        }
        case Ket::Kind::Plus:
        case Ket::Kind::Minus: {
            if (dim != 2)
                throw RunError(ErrKind::DimensionMismatch,
                               "|+> and |-> label a single qubit", at);
            CVec v(2);
            double s2 = 1.0 / std::sqrt(2.0);
            v(0) = s2;
            v(1) = ket.kind == Ket::Kind::Plus ? s2 : -s2;
            return v;
        }
        case Ket::Kind::Vector: {
            if (static_cast<std::int64_t>(ket.amplitudes.size()) != dim)
                throw RunError(ErrKind::DimensionMismatch,
                               "ket has " + std::to_string(ket.amplitudes.size()) +
                                   " amplitudes, coin dimension is " +
                                   std::to_string(dim),
                               at);
            CVec v(dim);
            for (std::int64_t i = 0; i < dim; ++i) v(i) = ket.amplitudes[i];
            return v;
        }
    }
    throw RunError(ErrKind::BadInput, "malformed ket", at);
}

Interpreter::Interpreter(const ProgramEnv& env, RunLimits limits, TraceSink trace)
    : env_(env), limits_(limits), trace_(std::move(trace)) {
    ctx_.decls = &env_.decls;
    ctx_.fuel = limits_.loop_fuel;
}

RunResult Interpreter::run(ClassicalStore store, StateVector state) {
    if (!env_.program.main)
        throw RunError(ErrKind::BadInput, "program has no main block");
    store_ = std::move(store);
    state_ = std::move(state);
    exec(*env_.program.main);
    return RunResult{std::move(store_), std::move(state_)};
}

RunResult Interpreter::run_call(const std::string& proc,
                                const std::vector<ClassicalValue>& args,
                                ClassicalStore store, StateVector state) {
    store_ = std::move(store);
    state_ = std::move(state);
    call_proc(proc, args, {});
    return RunResult{std::move(store_), std::move(state_)};
}

void Interpreter::emit(const char* tag, std::string detail) {
    if (trace_) trace_(TraceEvent{tag, std::move(detail), static_cast<int>(call_depth_)});
}

void Interpreter::exec(const Stmt& s) {
    std::visit([&](const auto& node) { exec(node, s.span); }, s.node);
}

void Interpreter::exec(const SkipStmt&, SourceSpan) { emit("SK", ""); }

void Interpreter::exec(const AssignStmt& s, SourceSpan at) {
    store_update(ctx_, store_, s.targets, s.values, at);
    if (trace_) {
        std::string detail;
        for (std::size_t i = 0; i < s.targets.size(); ++i) {
            if (i) detail += ", ";
            detail += s.targets[i].name;
            if (!s.targets[i].subs.empty()) {
                detail += "[";
                for (std::size_t j = 0; j < s.targets[i].subs.size(); ++j) {
                    if (j) detail += ", ";
                    detail += pretty(*s.targets[i].subs[j]);
                }
                detail += "]";
            }
        }
        detail += " := ";
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            if (i) detail += ", ";
            detail += pretty(*s.values[i]);
        }
        emit("AS", std::move(detail));
    }
}

void Interpreter::exec(const GateStmt& s, SourceSpan at) {
    std::vector<ClassicalValue> args;
    for (const ExprPtr& e : s.args) args.push_back(eval_expr(ctx_, store_, *e));
    CMat m = gate_matrix(env_.gates, s.gate, args, at);
    std::vector<int> wires = resolve_register(ctx_, store_, env_.wires, s.reg);
    check_unlocked(wires, at);
    apply_unitary(state_, m, wires);
    if (trace_) {
        std::string detail = s.gate;
        if (!args.empty()) detail += "(" + join_values(args) + ")";
        detail += "[";
        for (std::size_t i = 0; i < wires.size(); ++i) {
            if (i) detail += ", ";
            detail += env_.wires.wire_name(wires[i]);
        }
        detail += "]";
        emit("GA", std::move(detail));
    }
}

void Interpreter::exec(const CallStmt& s, SourceSpan at) {
    std::vector<ClassicalValue> args;
    for (const ExprPtr& e : s.args) args.push_back(eval_expr(ctx_, store_, *e));
    call_proc(s.proc, std::move(args), at);
}

void Interpreter::exec(const SeqStmt& s, SourceSpan) {
    for (const StmtPtr& t : s.stmts) exec(*t);
}

void Interpreter::exec(const IfStmt& s, SourceSpan at) {
    bool cond = eval_bool(ctx_, store_, *s.cond);
    emit("IF", cond ? "true" : "false");
    if (cond)
        exec(*s.then_body);
    else if (s.else_body)
        exec(*s.else_body);
}

void Interpreter::exec(const WhileStmt& s, SourceSpan at) {
    for (;;) {
        bool cond = eval_bool(ctx_, store_, *s.cond);
        emit("WH", cond ? "true" : "false");
        if (!cond) break;
        ctx_.consume_fuel(at);
        exec(*s.body);
    }
}

void Interpreter::check_unlocked(const std::vector<int>& wires, SourceSpan at) const {
    for (int w : wires)
        if (locked_.count(w))
            throw RunError(ErrKind::CoinViolation,
                           env_.wires.wire_name(w) +
                               " is a coin of an enclosing quantum branch",
                           at);
}

void Interpreter::run_branches(const std::vector<int>& coin,
                               const std::vector<CVec>& kets,
                               const std::function<void(std::size_t)>& body,
                               SourceSpan at) {
    Layout full = state_.layout;
    std::vector<StateVector> components = extract_components(state_, coin, kets);
    ClassicalStore entry = std::move(store_);
    std::set<int> saved_locks = locked_;
    locked_.insert(coin.begin(), coin.end());
    std::vector<StateVector> branch_states;
    std::vector<ClassicalStore> branch_stores;
    for (std::size_t b = 0; b < kets.size(); ++b) {
        store_ = entry;
        state_ = std::move(components[b]);
        body(b);
        branch_states.push_back(std::move(state_));
        branch_stores.push_back(std::move(store_));
    }
    locked_ = std::move(saved_locks);
    for (std::size_t b = 1; b < branch_stores.size(); ++b)
        if (branch_stores[b] != branch_stores[0])
            throw RunError(ErrKind::ClassicalDivergence,
                           "branches left different classical stores", at);
    store_ = std::move(branch_stores[0]);
    state_ = recombine_components(full, coin, kets, branch_states);
}

void Interpreter::exec(const QifStmt& s, SourceSpan at) {
    std::vector<int> coin = resolve_register(ctx_, store_, env_.wires, s.coin);
    check_unlocked(coin, at);
    std::vector<std::int64_t> dims;
    std::int64_t dim = 1;
    for (int w : coin) {
        dims.push_back(env_.wires.dim_of(w));
        dim *= dims.back();
    }
    if (static_cast<std::int64_t>(s.branches.size()) != dim)
        throw RunError(ErrKind::DimensionMismatch,
                       "coin dimension " + std::to_string(dim) + " needs " +
                           std::to_string(dim) + " branches, got " +
                           std::to_string(s.branches.size()),
                       at);
    std::vector<CVec> kets;
    for (const QifBranch& b : s.branches)
        kets.push_back(ket_vector_of(b.ket, dims, b.ket.span));
    CMat basis(dim, dim);
    for (std::int64_t c = 0; c < dim; ++c) basis.col(c) = kets[c];
    CMat gram = basis.adjoint() * basis;
    gram -= CMat::Identity(dim, dim);
    if (gram.cwiseAbs().maxCoeff() > kEpsUnitary)
        throw RunError(ErrKind::NonUnitary, "branch kets are not orthonormal", at);
    if (trace_) {
        std::string detail = "qif[";
        for (std::size_t i = 0; i < coin.size(); ++i) {
            if (i) detail += ", ";
            detail += env_.wires.wire_name(coin[i]);
        }
        emit("QC", detail + "]");
    }
    run_branches(coin, kets,
                 [&](std::size_t b) {
                     emit("BS", "case " + std::to_string(b));
                     exec(*s.branches[b].body);
                 },
                 at);
}

void Interpreter::exec(const QifForallStmt& s, SourceSpan at) {
    std::vector<int> coin = resolve_register(ctx_, store_, env_.wires, s.coin);
    check_unlocked(coin, at);
    std::int64_t dim = 1;
    for (int w : coin) dim *= env_.wires.dim_of(w);
    std::vector<CVec> kets(dim);
    for (std::int64_t x = 0; x < dim; ++x) {
        kets[x] = CVec::Zero(dim);
        kets[x](x) = 1.0;
    }
    if (trace_) {
        std::string detail = "qif[";
        for (std::size_t i = 0; i < coin.size(); ++i) {
            if (i) detail += ", ";
            detail += env_.wires.wire_name(coin[i]);
        }
        emit("QC", detail + "] forall " + s.binder);
    }
    StoreKey key{s.binder, {}};
    run_branches(coin, kets,
                 [&](std::size_t b) {
                     emit("BS", s.binder + " = " + std::to_string(b));
                     const ClassicalValue* old = store_.find(key);
                     std::optional<ClassicalValue> saved =
                         old ? std::optional<ClassicalValue>(*old) : std::nullopt;
                     store_.set(key, ClassicalValue{static_cast<std::int64_t>(b)});
                     exec(*s.body);
                     if (saved)
                         store_.set(key, *saved);
                     else
                         store_.erase(key);
                 },
                 at);
}

void Interpreter::exec(const BlockStmt& s, SourceSpan at) {
    SavedBindings saved = bind_locals(ctx_, store_, s.locals, at);
    exec(*s.body);
    restore_bindings(store_, saved);
}

void Interpreter::call_proc(const std::string& name, std::vector<ClassicalValue> args,
                            SourceSpan at) {
    const ProcDecl* p = env_.find_proc(name);
    if (!p) throw RunError(ErrKind::UnknownName, "unknown procedure " + name, at);
    if (args.size() != p->params.size())
        throw RunError(ErrKind::TypeError,
                       name + " takes " + std::to_string(p->params.size()) +
                           " argument(s), got " + std::to_string(args.size()),
                       at);
    if (++call_depth_ > limits_.recursion_depth)
        throw RunError(ErrKind::RecursionLimit, "call depth limit reached in " + name,
                       at);
    emit("CR", name + "(" + join_values(args) + ")");
    SavedBindings saved;
    for (std::size_t i = 0; i < p->params.size(); ++i) {
        StoreKey key{p->params[i], {}};
        const ClassicalValue* old = store_.find(key);
        saved.entries.push_back(
            {key, old ? std::optional<ClassicalValue>(*old) : std::nullopt});
    }
    for (std::size_t i = 0; i < p->params.size(); ++i)
        store_write(ctx_, store_, StoreKey{p->params[i], {}}, args[i], at);
    exec(*p->body);
    restore_bindings(store_, saved);
    emit("RC", name);
    --call_depth_;
}

}  // namespace qrpl
