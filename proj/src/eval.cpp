#include "qrpl/eval.hpp"

#include <cmath>
#include <set>

namespace qrpl {

namespace {

ClassicalValue arith(BinOp op, const ClassicalValue& a, const ClassicalValue& b,
                     SourceSpan at) {
    if (a.is_bool() || b.is_bool())
        throw RunError(ErrKind::TypeError, "arithmetic on bool", at);
    bool ints = a.is_int() && b.is_int();
    switch (op) {
        case BinOp::Add:
            if (ints) return checked_add(a.as_int(), b.as_int(), at);
            return a.as_real(at) + b.as_real(at);
        case BinOp::Sub:
            if (ints) return checked_sub(a.as_int(), b.as_int(), at);
            return a.as_real(at) - b.as_real(at);
        case BinOp::Mul:
            if (ints) return checked_mul(a.as_int(), b.as_int(), at);
            return a.as_real(at) * b.as_real(at);
        case BinOp::Div: {
            double d = b.as_real(at);
            if (d == 0.0)
                throw RunError(ErrKind::DivisionByZero, "division by zero", at);
            return a.as_real(at) / d;
        }
        case BinOp::FloorDiv:
            if (!ints)
                throw RunError(ErrKind::TypeError, "div expects int operands", at);
            return floor_div(a.as_int(), b.as_int(), at);
        case BinOp::Mod:
            if (!ints)
                throw RunError(ErrKind::TypeError, "mod expects int operands", at);
            return floor_mod(a.as_int(), b.as_int(), at);
        case BinOp::Pow:
            if (ints) return checked_pow_int(a.as_int(), b.as_int(), at);
            return std::pow(a.as_real(at), b.as_real(at));
        default:
            throw RunError(ErrKind::TypeError, "not an arithmetic operator", at);
    }
}

ClassicalValue compare(BinOp op, const ClassicalValue& a, const ClassicalValue& b,
                       SourceSpan at) {
    if (a.is_bool() || b.is_bool()) {
        if (!(a.is_bool() && b.is_bool()) || (op != BinOp::Eq && op != BinOp::Ne))
            throw RunError(ErrKind::TypeError, "invalid comparison on bool", at);
        bool eq = a.as_bool() == b.as_bool();
        return op == BinOp::Eq ? eq : !eq;
    }
    if (a.is_int() && b.is_int()) {
        auto x = a.as_int(), y = b.as_int();
        switch (op) {
            case BinOp::Eq: return x == y;
            case BinOp::Ne: return x != y;
            case BinOp::Lt: return x < y;
            case BinOp::Le: return x <= y;
            case BinOp::Gt: return x > y;
            case BinOp::Ge: return x >= y;
            default: break;
        }
    }
    double x = a.as_real(at), y = b.as_real(at);
    switch (op) {
        case BinOp::Eq: return x == y;
        case BinOp::Ne: return x != y;
        case BinOp::Lt: return x < y;
        case BinOp::Le: return x <= y;
        case BinOp::Gt: return x > y;
        case BinOp::Ge: return x >= y;
        default:
            throw RunError(ErrKind::TypeError, "not a comparison operator", at);
    }
}

const ClassicalDeclInfo* lookup_decl(const EvalContext& ctx, const std::string& name) {
    if (!ctx.decls) return nullptr;
    auto it = ctx.decls->find(name);
    return it == ctx.decls->end() ? nullptr : &it->second;
}

void check_array_access(const ClassicalDeclInfo& info, const std::string& name,
                        const std::vector<std::int64_t>& idx, SourceSpan at) {
    if (info.ranges.empty())
        throw RunError(ErrKind::TypeError, name + " is not an array", at);
    if (idx.size() != info.ranges.size())
        throw RunError(ErrKind::TypeError, "wrong number of subscripts on " + name, at);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < info.ranges[i].first || idx[i] > info.ranges[i].second)
            throw RunError(ErrKind::OutOfRange,
                           "index " + std::to_string(idx[i]) + " outside " + name + "[" +
                               std::to_string(info.ranges[i].first) + ":" +
                               std::to_string(info.ranges[i].second) + "]",
                           at);
    }
}

}  // namespace

ClassicalValue eval_expr(EvalContext& ctx, const ClassicalStore& store, const Expr& e) {
    return std::visit(
        [&](const auto& n) -> ClassicalValue {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                return n.v;
            } else if constexpr (std::is_same_v<T, RealLit>) {
                return n.v;
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return n.v;
            } else if constexpr (std::is_same_v<T, ConstRef>) {
                return n.which == 'p' ? 3.14159265358979323846 : 2.71828182845904523536;
            } else if constexpr (std::is_same_v<T, VarRef>) {
                if (const auto* info = lookup_decl(ctx, n.name))
                    if (!info->ranges.empty())
                        throw RunError(ErrKind::TypeError, n.name + " is an array",
                                       e.span);
                return store.get({n.name, {}}, e.span);
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
                StoreKey key{n.name, {}};
                for (const auto& ie : n.idx)
                    key.idx.push_back(eval_expr(ctx, store, *ie).as_int(ie->span));
                if (const auto* info = lookup_decl(ctx, n.name))
                    check_array_access(*info, n.name, key.idx, e.span);
                return store.get(key, e.span);
            } else if constexpr (std::is_same_v<T, Unary>) {
                ClassicalValue v = eval_expr(ctx, store, *n.e);
                if (n.op == UnOp::Neg) {
                    if (v.is_int()) return checked_neg(v.as_int(), e.span);
                    if (v.is_real()) return -v.as_real();
                    throw RunError(ErrKind::TypeError, "negation of bool", e.span);
                }
                return !v.as_bool(e.span);
            } else {
                const Binary& b = n;
                if (b.op == BinOp::And || b.op == BinOp::Or) {
                    bool l = eval_expr(ctx, store, *b.l).as_bool(b.l->span);
                    if (b.op == BinOp::And && !l) return false;
                    if (b.op == BinOp::Or && l) return true;
                    return eval_expr(ctx, store, *b.r).as_bool(b.r->span);
                }
                ClassicalValue l = eval_expr(ctx, store, *b.l);
                ClassicalValue r = eval_expr(ctx, store, *b.r);
                switch (b.op) {
                    case BinOp::Eq:
                    case BinOp::Ne:
                    case BinOp::Lt:
                    case BinOp::Le:
                    case BinOp::Gt:
                    case BinOp::Ge:
                        return compare(b.op, l, r, e.span);
                    default:
                        return arith(b.op, l, r, e.span);
                }
            }
        },
        e.node);
}

bool eval_bool(EvalContext& ctx, const ClassicalStore& store, const Expr& e) {
    return eval_expr(ctx, store, e).as_bool(e.span);
}

StoreKey eval_lvalue(EvalContext& ctx, const ClassicalStore& store, const LValue& lv) {
    StoreKey key{lv.name, {}};
    for (const auto& s : lv.subs)
        key.idx.push_back(eval_expr(ctx, store, *s).as_int(s->span));
    return key;
}

void store_write(EvalContext& ctx, ClassicalStore& store, const StoreKey& key,
                 ClassicalValue v, SourceSpan at) {
    if (const auto* info = lookup_decl(ctx, key.name)) {
        if (!key.idx.empty()) {
            check_array_access(*info, key.name, key.idx, at);
        } else if (!info->ranges.empty()) {
            throw RunError(ErrKind::TypeError, key.name + " is an array", at);
        }
        switch (info->kind) {
            case DeclKind::Int:
                if (!v.is_int())
                    throw RunError(ErrKind::TypeError,
                                   "assigning non-int to " + to_string(key), at);
                break;
            case DeclKind::Real:
                if (v.is_int()) v = ClassicalValue(v.as_real());
                if (!v.is_real())
                    throw RunError(ErrKind::TypeError,
                                   "assigning non-real to " + to_string(key), at);
                break;
            case DeclKind::Bool:
                if (!v.is_bool())
                    throw RunError(ErrKind::TypeError,
                                   "assigning non-bool to " + to_string(key), at);
                break;
        }
    } else if (!key.idx.empty()) {
        throw RunError(ErrKind::TypeError, "assignment to undeclared array " + key.name,
                       at);
    }
    store.set(key, std::move(v));
}

void store_update(EvalContext& ctx, ClassicalStore& store,
                  const std::vector<LValue>& targets,
                  const std::vector<ExprPtr>& values, SourceSpan at) {
    std::vector<StoreKey> keys;
    std::set<StoreKey> seen;
    for (const auto& t : targets) {
        StoreKey k = eval_lvalue(ctx, store, t);
        if (!seen.insert(k).second)
            throw RunError(ErrKind::DuplicateTarget,
                           "duplicate assignment target " + to_string(k), t.span);
        keys.push_back(std::move(k));
    }
    std::vector<ClassicalValue> vals;
    for (const auto& v : values) vals.push_back(eval_expr(ctx, store, *v));
    for (std::size_t i = 0; i < keys.size(); ++i)
        store_write(ctx, store, keys[i], std::move(vals[i]), at);
}

SavedBindings bind_locals(EvalContext& ctx, ClassicalStore& store,
                          const std::vector<std::pair<std::string, ExprPtr>>& locals,
                          SourceSpan at) {
    std::set<std::string> seen;
    for (const auto& [name, _] : locals)
        if (!seen.insert(name).second)
            throw RunError(ErrKind::DuplicateTarget, "duplicate local " + name, at);
    std::vector<ClassicalValue> vals;
    for (const auto& [_, init] : locals) vals.push_back(eval_expr(ctx, store, *init));
    SavedBindings saved;
    for (std::size_t i = 0; i < locals.size(); ++i) {
        StoreKey key{locals[i].first, {}};
        const ClassicalValue* old = store.find(key);
        saved.entries.emplace_back(key, old ? std::optional<ClassicalValue>(*old)
                                            : std::nullopt);
        store_write(ctx, store, key, std::move(vals[i]), at);
    }
    return saved;
}

void restore_bindings(ClassicalStore& store, const SavedBindings& saved) {
    for (const auto& [key, old] : saved.entries) {
        if (old)
            store.set(key, *old);
        else
            store.erase(key);
    }
}

void exec_classical(EvalContext& ctx, const Stmt& s, ClassicalStore& store) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, SkipStmt>) {
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                store_update(ctx, store, n.targets, n.values, s.span);
            } else if constexpr (std::is_same_v<T, SeqStmt>) {
                for (const auto& sub : n.stmts) exec_classical(ctx, *sub, store);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                if (eval_bool(ctx, store, *n.cond))
                    exec_classical(ctx, *n.then_body, store);
                else if (n.else_body)
                    exec_classical(ctx, *n.else_body, store);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                while (eval_bool(ctx, store, *n.cond)) {
                    ctx.consume_fuel(s.span);
                    exec_classical(ctx, *n.body, store);
                }
            } else if constexpr (std::is_same_v<T, BlockStmt>) {
                SavedBindings saved = bind_locals(ctx, store, n.locals, s.span);
                exec_classical(ctx, *n.body, store);
                restore_bindings(store, saved);
            } else {
                throw RunError(ErrKind::TypeError,
                               "quantum statement in classical context", s.span);
            }
        },
        s.node);
}

}  // namespace qrpl
