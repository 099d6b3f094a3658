#include "qrpl/check.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qrpl/gates.hpp"
#include "qrpl/interp.hpp"

namespace qrpl {

namespace {

struct QuantumInfo {
    std::size_t nranges = 0;
    std::int64_t site_dim = -1;  // -1 when not statically known
};

struct Checker {
    const Program& p;
    std::vector<Diagnostic> out;

    std::map<std::string, std::size_t> classical;  // name -> subscript count
    std::map<std::string, QuantumInfo> quantum;
    std::set<std::string> gates;
    std::map<std::string, std::size_t> procs;
    std::vector<std::string> binders;

    void add(const char* code, std::string msg, SourceSpan at) {
        out.push_back(Diagnostic{code, std::move(msg), at.begin});
    }

    bool known_name(const std::string& n) const {
        return classical.count(n) || quantum.count(n) || gates.count(n) ||
               is_builtin_gate(n) || procs.count(n);
    }

    // ------------------------------------------------------------ expressions

    void check_expr(const Expr& e) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, VarRef>) {
                    auto it = classical.find(node.name);
                    if (it != classical.end() && it->second != 0)
                        add("subscript", node.name + " is an array and needs subscripts",
                            e.span);
                } else if constexpr (std::is_same_v<T, ArrayRef>) {
                    auto it = classical.find(node.name);
                    if (it != classical.end() && it->second != node.idx.size())
                        add("subscript",
                            node.name + " takes " + std::to_string(it->second) +
                                " subscript(s), got " + std::to_string(node.idx.size()),
                            e.span);
                    for (const ExprPtr& i : node.idx) check_expr(*i);
                } else if constexpr (std::is_same_v<T, Unary>) {
                    check_expr(*node.e);
                } else if constexpr (std::is_same_v<T, Binary>) {
                    check_expr(*node.l);
                    check_expr(*node.r);
                }
            },
            e.node);
    }

    // -------------------------------------------------------------- registers

    void check_reg_item(const RegItem& item) {
        auto it = quantum.find(item.name);
        if (it == quantum.end()) {
            add("unknown-wire", item.name + " is not a quantum variable", item.span);
            return;
        }
        if (item.is_range()) {
            if (it->second.nranges != 1)
                add("subscript", item.name + " is not a one-dimensional array",
                    item.span);
            check_expr(*item.range_lo);
            check_expr(*item.range_hi);
            return;
        }
        if (item.subs.size() != it->second.nranges)
            add("subscript",
                item.name + " takes " + std::to_string(it->second.nranges) +
                    " subscript(s), got " + std::to_string(item.subs.size()),
                item.span);
        for (const ExprPtr& e : item.subs) check_expr(*e);
    }

    void check_reg(const RegSpec& reg) {
        for (const RegItem& item : reg) check_reg_item(item);
    }

    // ------------------------------------------------------------- statements

    void check_stmt(const Stmt& s) {
        std::visit([&](const auto& node) { check_stmt_node(node, s.span); }, s.node);
    }

    void check_stmt_node(const SkipStmt&, SourceSpan) {}

    void check_stmt_node(const AssignStmt& s, SourceSpan at) {
        for (const LValue& t : s.targets) {
            for (const std::string& b : binders)
                if (t.name == b && t.subs.empty())
                    add("binder-assign", "cannot assign to branch index " + t.name,
                        t.span);
            auto it = classical.find(t.name);
            if (it != classical.end() && it->second != t.subs.size())
                add("subscript",
                    t.name + " takes " + std::to_string(it->second) +
                        " subscript(s), got " + std::to_string(t.subs.size()),
                    t.span);
            for (const ExprPtr& e : t.subs) check_expr(*e);
        }
        for (const ExprPtr& v : s.values) check_expr(*v);
        if (s.targets.size() != s.values.size())
            add("arity", "assignment target and value counts differ", at);
    }

    void check_stmt_node(const GateStmt& s, SourceSpan at) {
        if (gates.count(s.gate)) {
            if (!s.args.empty())
                add("arity", s.gate + " takes no arguments", at);
        } else if (is_builtin_gate(s.gate)) {
            int argc = builtin_arg_count(s.gate);
            if (static_cast<int>(s.args.size()) != argc)
                add("arity",
                    s.gate + " takes " + std::to_string(argc) + " argument(s), got " +
                        std::to_string(s.args.size()),
                    at);
        } else {
            add("unknown-gate", "unknown gate " + s.gate, at);
        }
        for (const ExprPtr& e : s.args) check_expr(*e);
        check_reg(s.reg);
    }

    void check_stmt_node(const CallStmt& s, SourceSpan at) {
        auto it = procs.find(s.proc);
        if (it == procs.end())
            add("unknown-proc", "unknown procedure " + s.proc, at);
        else if (it->second != s.args.size())
            add("arity",
                s.proc + " takes " + std::to_string(it->second) + " argument(s), got " +
                    std::to_string(s.args.size()),
                at);
        for (const ExprPtr& e : s.args) check_expr(*e);
    }

    void check_stmt_node(const SeqStmt& s, SourceSpan) {
        for (const StmtPtr& t : s.stmts) check_stmt(*t);
    }

    void check_stmt_node(const IfStmt& s, SourceSpan) {
        check_expr(*s.cond);
        check_stmt(*s.then_body);
        if (s.else_body) check_stmt(*s.else_body);
    }

    void check_stmt_node(const WhileStmt& s, SourceSpan) {
        check_expr(*s.cond);
        check_stmt(*s.body);
    }

    void check_stmt_node(const QifStmt& s, SourceSpan at) {
        check_reg(s.coin);
        bool fixed_width = true;
        for (const RegItem& item : s.coin)
            if (item.is_range()) {
                add("coin-range",
                    "explicit branch labels need a fixed coin; use the forall form",
                    item.span);
                fixed_width = false;
            }
        // Coin dimension, when every wire dimension is statically known.
        std::vector<std::int64_t> dims;
        bool known_dim = fixed_width;
        for (const RegItem& item : s.coin) {
            if (item.is_range()) continue;
            auto it = quantum.find(item.name);
            if (it == quantum.end() || it->second.site_dim < 0) {
                known_dim = false;
                continue;
            }
            dims.push_back(it->second.site_dim);
        }
        std::int64_t dim = 1;
        for (std::int64_t d : dims) dim *= d;
        if (known_dim && static_cast<std::int64_t>(s.branches.size()) != dim)
            add("branch-count",
                "coin dimension " + std::to_string(dim) + " needs " +
                    std::to_string(dim) + " branches, got " +
                    std::to_string(s.branches.size()),
                at);
        bool shapes_ok = true;
        for (const QifBranch& b : s.branches) {
            if (b.ket.kind == Ket::Kind::Bits && fixed_width &&
                b.ket.bits.size() != s.coin.size()) {
                add("ket-shape",
                    "|" + b.ket.bits + "> labels " + std::to_string(b.ket.bits.size()) +
                        " wire(s), coin has " + std::to_string(s.coin.size()),
                    b.ket.span);
                shapes_ok = false;
            }
            if ((b.ket.kind == Ket::Kind::Plus || b.ket.kind == Ket::Kind::Minus) &&
                fixed_width && s.coin.size() != 1) {
                add("ket-shape", "|+> and |-> label a single qubit", b.ket.span);
                shapes_ok = false;
            }
            if (b.ket.kind == Ket::Kind::Vector && known_dim &&
                static_cast<std::int64_t>(b.ket.amplitudes.size()) != dim) {
                add("ket-shape",
                    "ket has " + std::to_string(b.ket.amplitudes.size()) +
                        " amplitudes, coin dimension is " + std::to_string(dim),
                    b.ket.span);
                shapes_ok = false;
            }
        }
        if (known_dim && shapes_ok &&
            static_cast<std::int64_t>(s.branches.size()) == dim) {
            CMat basis(dim, dim);
            bool built = true;
            for (std::int64_t c = 0; c < dim; ++c) {
                try {
                    basis.col(c) = ket_vector_of(s.branches[c].ket, dims);
                } catch (const RunError& e) {
                    add("ket-shape", e.what(), s.branches[c].ket.span);
                    built = false;
                }
            }
            if (built) {
                CMat gram = basis.adjoint() * basis;
                gram -= CMat::Identity(dim, dim);
                if (gram.cwiseAbs().maxCoeff() > kEpsUnitary)
                    add("orthonormal", "branch kets are not orthonormal", at);
            }
        }
        for (const QifBranch& b : s.branches) check_stmt(*b.body);
    }

    void check_stmt_node(const QifForallStmt& s, SourceSpan at) {
        if (s.coin.size() != 1 || !s.coin[0].is_range())
            add("coin-range", "forall needs a single index range as its coin", at);
        check_reg(s.coin);
        binders.push_back(s.binder);
        check_stmt(*s.body);
        binders.pop_back();
    }

    void check_stmt_node(const BlockStmt& s, SourceSpan) {
        std::set<std::string> seen;
        for (const auto& [name, init] : s.locals) {
            if (!seen.insert(name).second)
                add("dup-name", "duplicate local " + name, s.body->span);
            check_expr(*init);
        }
        check_stmt(*s.body);
    }

    // ------------------------------------------------------------ declarations

    void check_decl(const VarDeclAst& d) {
        if (known_name(d.name))
            add("dup-name", "duplicate declaration of " + d.name, d.span);
        if (d.range_lo) {
            check_expr(*d.range_lo);
            check_expr(*d.range_hi);
        }
        if (d.init) check_expr(*d.init);
        for (const ExprPtr& e : d.init_list) check_expr(*e);
        classical[d.name] = d.range_lo ? 1 : 0;
    }

    void check_decl(const QuantumDeclAst& d) {
        if (known_name(d.name))
            add("dup-name", "duplicate declaration of " + d.name, d.span);
        QuantumInfo info;
        info.nranges = d.ranges.size();
        if (!d.site_dim)
            info.site_dim = 2;
        else if (const IntLit* lit = std::get_if<IntLit>(&d.site_dim->node)) {
            info.site_dim = lit->v;
            if (lit->v < 2)
                add("dimension", "site dimension must be at least 2", d.span);
        }
        if (d.site_dim) check_expr(*d.site_dim);
        for (const auto& [lo, hi] : d.ranges) {
            check_expr(*lo);
            check_expr(*hi);
        }
        quantum[d.name] = info;
    }

    void check_decl(const GateDeclAst& d) {
        if (is_builtin_gate(d.name))
            add("dup-name", d.name + " shadows a builtin gate", d.span);
        else if (known_name(d.name))
            add("dup-name", "duplicate declaration of " + d.name, d.span);
        if (!d.matrix.empty()) {
            std::size_t n = d.matrix.size();
            bool square = true;
            for (const auto& row : d.matrix)
                if (row.size() != n) square = false;
            if (!square) {
                add("dimension", d.name + " must be square", d.span);
            } else {
                CMat m(n, n);
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c) m(r, c) = d.matrix[r][c];
                CMat gram = m.adjoint() * m;
                gram -= CMat::Identity(n, n);
                if (gram.cwiseAbs().maxCoeff() > kEpsUnitary)
                    add("non-unitary", d.name + " is not unitary", d.span);
            }
        } else if (gates.count(d.base)) {
            if (!d.base_args.empty())
                add("arity", d.base + " takes no arguments", d.span);
        } else if (is_builtin_gate(d.base)) {
            int argc = builtin_arg_count(d.base);
            if (static_cast<int>(d.base_args.size()) != argc)
                add("arity",
                    d.base + " takes " + std::to_string(argc) + " argument(s), got " +
                        std::to_string(d.base_args.size()),
                    d.span);
        } else {
            add("unknown-gate", "unknown gate " + d.base, d.span);
        }
        for (const ExprPtr& e : d.base_args) check_expr(*e);
        gates.insert(d.name);
    }

    void run() {
        for (const Decl& d : p.decls)
            std::visit([&](const auto& node) { check_decl(node); }, d);
        std::set<std::string> proc_names;
        for (const ProcDecl& pd : p.procs) {
            if (known_name(pd.name) || !proc_names.insert(pd.name).second)
                add("dup-name", "duplicate declaration of " + pd.name, pd.span);
            procs[pd.name] = pd.params.size();
        }
        for (const ProcDecl& pd : p.procs) {
            std::set<std::string> seen;
            for (const std::string& param : pd.params)
                if (!seen.insert(param).second)
                    add("dup-name", "duplicate parameter " + param + " in " + pd.name,
                        pd.span);
            check_stmt(*pd.body);
        }
        if (p.main) check_stmt(*p.main);
        std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return std::tie(a.pos.line, a.pos.col) < std::tie(b.pos.line, b.pos.col);
        });
    }
};

}  // namespace

std::vector<Diagnostic> static_check(const Program& p) {
    Checker c{p};
    c.run();
    return c.out;
}

}  // namespace qrpl
