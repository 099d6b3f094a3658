#include "qrpl/pretty.hpp"

#include <cstdio>
#include <sstream>

namespace qrpl {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    if (s.find_first_of(".eE") == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

// Bare numeral: ints lex back as IntLit, which complex entries accept too.
std::string fmt_component(double v) {
    if (v == static_cast<std::int64_t>(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
        return buf;
    }
    return fmt_double(v);
}

std::string fmt_complex(cxd c) {
    if (c.imag() == 0) return fmt_component(c.real());
    if (c.real() == 0) return fmt_component(c.imag()) + "i";
    std::string s = fmt_component(c.real());
    if (c.imag() >= 0) s += "+";
    return s + fmt_component(c.imag()) + "i";
}

// Precedence levels, higher binds tighter. Mirrors the parser.
int prec_of(const Expr& e) {
    if (std::holds_alternative<Binary>(e.node)) {
        switch (std::get<Binary>(e.node).op) {
            case BinOp::Or: return 1;
            case BinOp::And: return 2;
            case BinOp::Eq:
            case BinOp::Ne:
            case BinOp::Lt:
            case BinOp::Le:
            case BinOp::Gt:
            case BinOp::Ge: return 4;
            case BinOp::Add:
            case BinOp::Sub: return 5;
            case BinOp::Mul:
            case BinOp::Div:
            case BinOp::FloorDiv:
            case BinOp::Mod: return 6;
            case BinOp::Pow: return 8;
        }
    }
    if (std::holds_alternative<Unary>(e.node))
        return std::get<Unary>(e.node).op == UnOp::Not ? 3 : 7;
    return 9;
}

const char* op_text(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::FloorDiv: return "div";
        case BinOp::Mod: return "mod";
        case BinOp::Pow: return "^";
        case BinOp::Eq: return "=";
        case BinOp::Ne: return "!=";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::And: return "and";
        case BinOp::Or: return "or";
    }
    return "?";
}

class Printer {
  public:
    std::string expr(const Expr& e, int need = 0) {
        std::ostringstream out;
        print_expr(out, e, need);
        return out.str();
    }

    void print_expr(std::ostream& out, const Expr& e, int need) {
        int p = prec_of(e);
        bool parens = p < need;
        if (parens) out << '(';
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, IntLit>) {
                    out << n.v;
                } else if constexpr (std::is_same_v<T, RealLit>) {
                    out << fmt_double(n.v);
                } else if constexpr (std::is_same_v<T, BoolLit>) {
                    out << (n.v ? "true" : "false");
                } else if constexpr (std::is_same_v<T, ConstRef>) {
                    out << (n.which == 'p' ? "pi" : "e");
                } else if constexpr (std::is_same_v<T, VarRef>) {
                    out << n.name;
                } else if constexpr (std::is_same_v<T, ArrayRef>) {
                    out << n.name << '[';
                    for (std::size_t i = 0; i < n.idx.size(); ++i) {
                        if (i) out << ", ";
                        print_expr(out, *n.idx[i], 0);
                    }
                    out << ']';
                } else if constexpr (std::is_same_v<T, Unary>) {
                    if (n.op == UnOp::Neg) {
                        out << '-';
                        print_expr(out, *n.e, 7);
                    } else {
                        out << "not ";
                        print_expr(out, *n.e, 3);
                    }
                } else {  // Binary
                    if (n.op == BinOp::Pow) {
                        print_expr(out, *n.l, 9);
                        out << '^';
                        print_expr(out, *n.r, 7);
                    } else {
                        print_expr(out, *n.l, p);
                        out << ' ' << op_text(n.op) << ' ';
                        print_expr(out, *n.r, p + 1);
                    }
                }
            },
            e.node);
        if (parens) out << ')';
    }

    std::string reg_item(const RegItem& r) {
        std::string s = r.name;
        if (r.is_range()) {
            s += '[' + expr(*r.range_lo) + ':' + expr(*r.range_hi) + ']';
        } else if (!r.subs.empty()) {
            s += '[';
            for (std::size_t i = 0; i < r.subs.size(); ++i) {
                if (i) s += ", ";
                s += expr(*r.subs[i]);
            }
            s += ']';
        }
        return s;
    }

    std::string reg_spec(const RegSpec& reg) {
        std::string s;
        for (std::size_t i = 0; i < reg.size(); ++i) {
            if (i) s += ", ";
            s += reg_item(reg[i]);
        }
        return s;
    }

    std::string ket(const Ket& k) {
        switch (k.kind) {
            case Ket::Kind::Bits: return "|" + k.bits + ">";
            case Ket::Kind::Plus: return "|+>";
            case Ket::Kind::Minus: return "|->";
            case Ket::Kind::Vector: {
                std::string s = "|(";
                for (std::size_t i = 0; i < k.amplitudes.size(); ++i) {
                    if (i) s += ", ";
                    s += fmt_complex(k.amplitudes[i]);
                }
                return s + ")>";
            }
        }
        return "|?>";
    }

    bool simple(const Stmt& s) const {
        return std::holds_alternative<SkipStmt>(s.node) ||
               std::holds_alternative<AssignStmt>(s.node) ||
               std::holds_alternative<GateStmt>(s.node) ||
               std::holds_alternative<CallStmt>(s.node);
    }

    void line(std::ostream& out, const std::string& text) {
        for (int i = 0; i < indent_; ++i) out << "  ";
        out << text << '\n';
    }

    std::string one_liner(const Stmt& s) {
        std::ostringstream out;
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, SkipStmt>) {
                    out << "skip";
                } else if constexpr (std::is_same_v<T, AssignStmt>) {
                    if (n.parenthesized) out << '(';
                    for (std::size_t i = 0; i < n.targets.size(); ++i) {
                        if (i) out << ", ";
                        out << n.targets[i].name;
                        if (!n.targets[i].subs.empty()) {
                            out << '[';
                            for (std::size_t j = 0; j < n.targets[i].subs.size(); ++j) {
                                if (j) out << ", ";
                                out << expr(*n.targets[i].subs[j]);
                            }
                            out << ']';
                        }
                    }
                    if (n.parenthesized) out << ')';
                    out << " := ";
                    if (n.parenthesized) out << '(';
                    for (std::size_t i = 0; i < n.values.size(); ++i) {
                        if (i) out << ", ";
                        out << expr(*n.values[i]);
                    }
                    if (n.parenthesized) out << ')';
                } else if constexpr (std::is_same_v<T, GateStmt>) {
                    out << n.gate;
                    if (!n.args.empty()) {
                        out << '(';
                        for (std::size_t i = 0; i < n.args.size(); ++i) {
                            if (i) out << ", ";
                            out << expr(*n.args[i]);
                        }
                        out << ')';
                    }
                    out << '[' << reg_spec(n.reg) << ']';
                } else if constexpr (std::is_same_v<T, CallStmt>) {
                    out << n.proc << '(';
                    for (std::size_t i = 0; i < n.args.size(); ++i) {
                        if (i) out << ", ";
                        out << expr(*n.args[i]);
                    }
                    out << ')';
                }
            },
            s.node);
        return out.str();
    }

    // Emits one statement; a trailing ";" goes on the last line when asked.
    void stmt(std::ostream& out, const Stmt& s, bool semi) {
        const char* tail = semi ? ";" : "";
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, SkipStmt> ||
                              std::is_same_v<T, AssignStmt> ||
                              std::is_same_v<T, GateStmt> ||
                              std::is_same_v<T, CallStmt>) {
                    line(out, one_liner(s) + tail);
                } else if constexpr (std::is_same_v<T, SeqStmt>) {
                    for (std::size_t i = 0; i < n.stmts.size(); ++i)
                        stmt(out, *n.stmts[i], i + 1 < n.stmts.size() || semi);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    line(out, "if " + expr(*n.cond) + " then");
                    ++indent_;
                    stmt(out, *n.then_body, false);
                    --indent_;
                    if (n.else_body) {
                        line(out, "else");
                        ++indent_;
                        stmt(out, *n.else_body, false);
                        --indent_;
                    }
                    line(out, std::string("fi") + tail);
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    line(out, "while " + expr(*n.cond) + " do");
                    ++indent_;
                    stmt(out, *n.body, false);
                    --indent_;
                    line(out, std::string("od") + tail);
                } else if constexpr (std::is_same_v<T, QifStmt>) {
                    line(out, "qif[" + reg_spec(n.coin) + "]");
                    ++indent_;
                    for (const auto& b : n.branches) {
                        if (simple(*b.body)) {
                            line(out, "case " + ket(b.ket) + " -> " + one_liner(*b.body));
                        } else {
                            line(out, "case " + ket(b.ket) + " ->");
                            ++indent_;
                            stmt(out, *b.body, false);
                            --indent_;
                        }
                    }
                    --indent_;
                    line(out, std::string("fiq") + tail);
                } else if constexpr (std::is_same_v<T, QifForallStmt>) {
                    line(out, "qif[" + reg_spec(n.coin) + "] forall " + n.binder + " {");
                    ++indent_;
                    if (simple(*n.body)) {
                        line(out, "|" + n.binder + "> -> " + one_liner(*n.body));
                    } else {
                        line(out, "|" + n.binder + "> ->");
                        ++indent_;
                        stmt(out, *n.body, false);
                        --indent_;
                    }
                    --indent_;
                    line(out, std::string("}") + tail);
                } else {  // BlockStmt
                    if (n.locals.empty()) {
                        line(out, "begin");
                    } else {
                        std::string head = "begin local ";
                        for (std::size_t i = 0; i < n.locals.size(); ++i) {
                            if (i) head += ", ";
                            head += n.locals[i].first + " := " + expr(*n.locals[i].second);
                        }
                        line(out, head + ";");
                    }
                    ++indent_;
                    stmt(out, *n.body, false);
                    --indent_;
                    line(out, std::string("end") + tail);
                }
            },
            s.node);
    }

    void decl(std::ostream& out, const Decl& d) {
        if (std::holds_alternative<QuantumDeclAst>(d)) {
            const auto& q = std::get<QuantumDeclAst>(d);
            std::string s;
            if (q.site_dim)
                s = "qudit(" + expr(*q.site_dim) + ") " + q.name;
            else
                s = "qubit " + q.name;
            if (!q.ranges.empty()) {
                s += '[';
                for (std::size_t i = 0; i < q.ranges.size(); ++i) {
                    if (i) s += ", ";
                    s += expr(*q.ranges[i].first) + ':' + expr(*q.ranges[i].second);
                }
                s += ']';
            }
            line(out, s + ";");
        } else if (std::holds_alternative<VarDeclAst>(d)) {
            const auto& v = std::get<VarDeclAst>(d);
            std::string s = "var " + v.name;
            if (v.range_lo)
                s += '[' + expr(*v.range_lo) + ':' + expr(*v.range_hi) + ']';
            s += " : ";
            s += v.kind == DeclKind::Int ? "int" : v.kind == DeclKind::Real ? "real" : "bool";
            if (v.init) {
                s += " := " + expr(*v.init);
            } else if (!v.init_list.empty()) {
                s += " := [";
                for (std::size_t i = 0; i < v.init_list.size(); ++i) {
                    if (i) s += ", ";
                    s += expr(*v.init_list[i]);
                }
                s += ']';
            }
            line(out, s + ";");
        } else {
            const auto& g = std::get<GateDeclAst>(d);
            std::string s = "gate " + g.name + " := ";
            if (!g.matrix.empty()) {
                s += '[';
                for (std::size_t r = 0; r < g.matrix.size(); ++r) {
                    if (r) s += ", ";
                    s += '[';
                    for (std::size_t c = 0; c < g.matrix[r].size(); ++c) {
                        if (c) s += ", ";
                        s += fmt_complex(g.matrix[r][c]);
                    }
                    s += ']';
                }
                s += ']';
            } else {
                s += g.base;
                if (!g.base_args.empty()) {
                    s += '(';
                    for (std::size_t i = 0; i < g.base_args.size(); ++i) {
                        if (i) s += ", ";
                        s += expr(*g.base_args[i]);
                    }
                    s += ')';
                }
            }
            line(out, s + ";");
        }
    }

    std::string program(const Program& p) {
        std::ostringstream out;
        for (const auto& d : p.decls) decl(out, d);
        for (const auto& pr : p.procs) {
            out << '\n';
            std::string head = "proc " + pr.name + "(";
            for (std::size_t i = 0; i < pr.params.size(); ++i) {
                if (i) head += ", ";
                head += pr.params[i];
            }
            line(out, head + ") {");
            ++indent_;
            stmt(out, *pr.body, false);
            --indent_;
            line(out, "}");
        }
        if (p.main) {
            out << '\n';
            line(out, "main {");
            ++indent_;
            stmt(out, *p.main, false);
            --indent_;
            line(out, "}");
        }
        return out.str();
    }

  private:
    int indent_ = 0;
};

}  // namespace

std::string pretty(const Program& p) { return Printer().program(p); }

std::string pretty(const Stmt& s) {
    std::ostringstream out;
    Printer pr;
    pr.stmt(out, s, false);
    return out.str();
}

std::string pretty(const Expr& e) { return Printer().expr(e); }

}  // namespace qrpl
