#include "qrpl/ast.hpp"

namespace qrpl {

ExprPtr mk_int(std::int64_t v) {
    auto e = std::make_unique<Expr>();
    e->node = IntLit{v};
    return e;
}

ExprPtr mk_real(double v) {
    auto e = std::make_unique<Expr>();
    e->node = RealLit{v};
    return e;
}

ExprPtr mk_bool(bool v) {
    auto e = std::make_unique<Expr>();
    e->node = BoolLit{v};
    return e;
}

ExprPtr mk_const(char which) {
    auto e = std::make_unique<Expr>();
    e->node = ConstRef{which};
    return e;
}

ExprPtr mk_var(std::string name) {
    auto e = std::make_unique<Expr>();
    e->node = VarRef{std::move(name)};
    return e;
}

ExprPtr mk_index(std::string name, std::vector<ExprPtr> idx) {
    auto e = std::make_unique<Expr>();
    e->node = ArrayRef{std::move(name), std::move(idx)};
    return e;
}

ExprPtr mk_unary(UnOp op, ExprPtr sub) {
    auto e = std::make_unique<Expr>();
    e->node = Unary{op, std::move(sub)};
    return e;
}

ExprPtr mk_binary(BinOp op, ExprPtr l, ExprPtr r) {
    auto e = std::make_unique<Expr>();
    e->node = Binary{op, std::move(l), std::move(r)};
    return e;
}

ExprPtr clone(const Expr& e) {
    auto out = std::make_unique<Expr>();
    out->span = e.span;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ArrayRef>) {
                ArrayRef a{n.name, {}};
                for (const auto& i : n.idx) a.idx.push_back(clone(*i));
                out->node = std::move(a);
            } else if constexpr (std::is_same_v<T, Unary>) {
                out->node = Unary{n.op, clone(*n.e)};
            } else if constexpr (std::is_same_v<T, Binary>) {
                out->node = Binary{n.op, clone(*n.l), clone(*n.r)};
            } else {
                out->node = n;
            }
        },
        e.node);
    return out;
}

RegItem mk_wire(std::string name) {
    RegItem r;
    r.name = std::move(name);
    return r;
}

RegItem mk_wire(std::string name, std::vector<ExprPtr> subs) {
    RegItem r;
    r.name = std::move(name);
    r.subs = std::move(subs);
    return r;
}

RegItem mk_wire_range(std::string name, ExprPtr lo, ExprPtr hi) {
    RegItem r;
    r.name = std::move(name);
    r.range_lo = std::move(lo);
    r.range_hi = std::move(hi);
    return r;
}

RegItem clone(const RegItem& r) {
    RegItem out;
    out.span = r.span;
    out.name = r.name;
    for (const auto& s : r.subs) out.subs.push_back(clone(*s));
    if (r.range_lo) out.range_lo = clone(*r.range_lo);
    if (r.range_hi) out.range_hi = clone(*r.range_hi);
    return out;
}

RegSpec clone(const RegSpec& r) {
    RegSpec out;
    for (const auto& item : r) out.push_back(clone(item));
    return out;
}

Ket mk_ket_bits(std::string bits) {
    Ket k;
    k.kind = Ket::Kind::Bits;
    k.bits = std::move(bits);
    return k;
}

Ket mk_ket_plus() {
    Ket k;
    k.kind = Ket::Kind::Plus;
    return k;
}

Ket mk_ket_minus() {
    Ket k;
    k.kind = Ket::Kind::Minus;
    return k;
}

Ket mk_ket_vector(std::vector<cxd> amps) {
    Ket k;
    k.kind = Ket::Kind::Vector;
    k.amplitudes = std::move(amps);
    return k;
}

static StmtPtr wrap(Stmt&& s) { return std::make_unique<Stmt>(std::move(s)); }

StmtPtr mk_skip() { return wrap({{}, SkipStmt{}}); }

StmtPtr mk_assign(std::vector<LValue> targets, std::vector<ExprPtr> values) {
    return wrap({{}, AssignStmt{std::move(targets), std::move(values)}});
}

StmtPtr mk_assign(std::string name, ExprPtr value) {
    std::vector<LValue> t;
    t.push_back(LValue{{}, std::move(name), {}});
    std::vector<ExprPtr> v;
    v.push_back(std::move(value));
    return mk_assign(std::move(t), std::move(v));
}

StmtPtr mk_gate(std::string gate, RegSpec reg) {
    return wrap({{}, GateStmt{std::move(gate), {}, std::move(reg)}});
}

StmtPtr mk_gate(std::string gate, std::vector<ExprPtr> args, RegSpec reg) {
    return wrap({{}, GateStmt{std::move(gate), std::move(args), std::move(reg)}});
}

StmtPtr mk_call(std::string proc, std::vector<ExprPtr> args) {
    return wrap({{}, CallStmt{std::move(proc), std::move(args)}});
}

StmtPtr mk_seq(std::vector<StmtPtr> stmts) {
    return wrap({{}, SeqStmt{std::move(stmts)}});
}

StmtPtr mk_if(ExprPtr cond, StmtPtr then_body, StmtPtr else_body) {
    return wrap({{}, IfStmt{std::move(cond), std::move(then_body), std::move(else_body)}});
}

StmtPtr mk_while(ExprPtr cond, StmtPtr body) {
    return wrap({{}, WhileStmt{std::move(cond), std::move(body)}});
}

StmtPtr mk_qif(RegSpec coin, std::vector<QifBranch> branches) {
    return wrap({{}, QifStmt{std::move(coin), std::move(branches)}});
}

StmtPtr mk_qif_forall(RegSpec coin, std::string binder, StmtPtr body) {
    return wrap({{}, QifForallStmt{std::move(coin), std::move(binder), std::move(body)}});
}

StmtPtr mk_block(std::vector<std::pair<std::string, ExprPtr>> locals, StmtPtr body) {
    return wrap({{}, BlockStmt{std::move(locals), std::move(body)}});
}

// ------------------------------------------------------------------- equality

static bool eq_expr_vec(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equals(*a[i], *b[i])) return false;
    return true;
}

bool equals(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, IntLit>) return x.v == y.v;
            else if constexpr (std::is_same_v<T, RealLit>) return x.v == y.v;
            else if constexpr (std::is_same_v<T, BoolLit>) return x.v == y.v;
            else if constexpr (std::is_same_v<T, ConstRef>) return x.which == y.which;
            else if constexpr (std::is_same_v<T, VarRef>) return x.name == y.name;
            else if constexpr (std::is_same_v<T, ArrayRef>)
                return x.name == y.name && eq_expr_vec(x.idx, y.idx);
            else if constexpr (std::is_same_v<T, Unary>)
                return x.op == y.op && equals(*x.e, *y.e);
            else
                return x.op == y.op && equals(*x.l, *y.l) && equals(*x.r, *y.r);
        },
        a.node);
}

bool equals(const RegItem& a, const RegItem& b) {
    if (a.name != b.name) return false;
    if (a.is_range() != b.is_range()) return false;
    if (a.is_range())
        return equals(*a.range_lo, *b.range_lo) && equals(*a.range_hi, *b.range_hi);
    return eq_expr_vec(a.subs, b.subs);
}

static bool equals(const RegSpec& a, const RegSpec& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equals(a[i], b[i])) return false;
    return true;
}

bool equals(const Ket& a, const Ket& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Ket::Kind::Bits: return a.bits == b.bits;
        case Ket::Kind::Plus:
        case Ket::Kind::Minus: return true;
        case Ket::Kind::Vector: return a.amplitudes == b.amplitudes;
    }
    return false;
}

bool equals(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, SkipStmt>) {
                return true;
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                if (x.targets.size() != y.targets.size()) return false;
                for (std::size_t i = 0; i < x.targets.size(); ++i) {
                    if (x.targets[i].name != y.targets[i].name) return false;
                    if (!eq_expr_vec(x.targets[i].subs, y.targets[i].subs)) return false;
                }
                return eq_expr_vec(x.values, y.values);
            } else if constexpr (std::is_same_v<T, GateStmt>) {
                return x.gate == y.gate && eq_expr_vec(x.args, y.args) &&
                       equals(x.reg, y.reg);
            } else if constexpr (std::is_same_v<T, CallStmt>) {
                return x.proc == y.proc && eq_expr_vec(x.args, y.args);
            } else if constexpr (std::is_same_v<T, SeqStmt>) {
                if (x.stmts.size() != y.stmts.size()) return false;
                for (std::size_t i = 0; i < x.stmts.size(); ++i)
                    if (!equals(*x.stmts[i], *y.stmts[i])) return false;
                return true;
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                if (!equals(*x.cond, *y.cond)) return false;
                if (!equals(*x.then_body, *y.then_body)) return false;
                if ((x.else_body == nullptr) != (y.else_body == nullptr)) return false;
                return !x.else_body || equals(*x.else_body, *y.else_body);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                return equals(*x.cond, *y.cond) && equals(*x.body, *y.body);
            } else if constexpr (std::is_same_v<T, QifStmt>) {
                if (!equals(x.coin, y.coin)) return false;
                if (x.branches.size() != y.branches.size()) return false;
                for (std::size_t i = 0; i < x.branches.size(); ++i) {
                    if (!equals(x.branches[i].ket, y.branches[i].ket)) return false;
                    if (!equals(*x.branches[i].body, *y.branches[i].body)) return false;
                }
                return true;
            } else if constexpr (std::is_same_v<T, QifForallStmt>) {
                return equals(x.coin, y.coin) && x.binder == y.binder &&
                       equals(*x.body, *y.body);
            } else {
                if (x.locals.size() != y.locals.size()) return false;
                for (std::size_t i = 0; i < x.locals.size(); ++i) {
                    if (x.locals[i].first != y.locals[i].first) return false;
                    if (!equals(*x.locals[i].second, *y.locals[i].second)) return false;
                }
                return equals(*x.body, *y.body);
            }
        },
        a.node);
}

static bool equals(const Decl& a, const Decl& b) {
    if (a.index() != b.index()) return false;
    if (std::holds_alternative<QuantumDeclAst>(a)) {
        const auto& x = std::get<QuantumDeclAst>(a);
        const auto& y = std::get<QuantumDeclAst>(b);
        if (x.name != y.name) return false;
        if ((x.site_dim == nullptr) != (y.site_dim == nullptr)) return false;
        if (x.site_dim && !equals(*x.site_dim, *y.site_dim)) return false;
        if (x.ranges.size() != y.ranges.size()) return false;
        for (std::size_t i = 0; i < x.ranges.size(); ++i) {
            if (!equals(*x.ranges[i].first, *y.ranges[i].first)) return false;
            if (!equals(*x.ranges[i].second, *y.ranges[i].second)) return false;
        }
        return true;
    }
    if (std::holds_alternative<VarDeclAst>(a)) {
        const auto& x = std::get<VarDeclAst>(a);
        const auto& y = std::get<VarDeclAst>(b);
        if (x.name != y.name || x.kind != y.kind) return false;
        if ((x.range_lo == nullptr) != (y.range_lo == nullptr)) return false;
        if (x.range_lo &&
            (!equals(*x.range_lo, *y.range_lo) || !equals(*x.range_hi, *y.range_hi)))
            return false;
        if ((x.init == nullptr) != (y.init == nullptr)) return false;
        if (x.init && !equals(*x.init, *y.init)) return false;
        return eq_expr_vec(x.init_list, y.init_list);
    }
    const auto& x = std::get<GateDeclAst>(a);
    const auto& y = std::get<GateDeclAst>(b);
    return x.name == y.name && x.matrix == y.matrix && x.base == y.base &&
           eq_expr_vec(x.base_args, y.base_args);
}

bool equals(const Program& a, const Program& b) {
    if (a.decls.size() != b.decls.size()) return false;
    for (std::size_t i = 0; i < a.decls.size(); ++i)
        if (!equals(a.decls[i], b.decls[i])) return false;
    if (a.procs.size() != b.procs.size()) return false;
    for (std::size_t i = 0; i < a.procs.size(); ++i) {
        if (a.procs[i].name != b.procs[i].name) return false;
        if (a.procs[i].params != b.procs[i].params) return false;
        if (!equals(*a.procs[i].body, *b.procs[i].body)) return false;
    }
    if ((a.main == nullptr) != (b.main == nullptr)) return false;
    return !a.main || equals(*a.main, *b.main);
}

}  // namespace qrpl
