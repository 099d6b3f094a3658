#include "qrpl/parser.hpp"

#include "qrpl/lexer.hpp"

namespace qrpl {

namespace {

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program parse_program() {
        Program p;
        for (;;) {
            switch (peek().kind) {
                case Tok::End: return p;
                case Tok::KwQubit: p.decls.push_back(parse_qubit_decl(false)); break;
                case Tok::KwQudit: p.decls.push_back(parse_qubit_decl(true)); break;
                case Tok::KwVar: p.decls.push_back(parse_var_decl()); break;
                case Tok::KwGate: p.decls.push_back(parse_gate_decl()); break;
                case Tok::KwProc: p.procs.push_back(parse_proc()); break;
                case Tok::KwMain: {
                    SourcePos at = peek().pos;
                    if (p.main) fail("duplicate main block", at);
                    advance();
                    expect(Tok::LBrace, "'{' after main");
                    p.main = parse_stmt_seq();
                    expect(Tok::RBrace, "'}' closing main");
                    break;
                }
                default:
                    fail("expected a declaration, proc, or main", peek().pos);
            }
        }
    }

    EntryCall parse_entry_call() {
        EntryCall c;
        c.proc = expect_ident("procedure name");
        if (peek().kind == Tok::LParen) {
            advance();
            if (peek().kind != Tok::RParen) c.args = parse_expr_list();
            expect(Tok::RParen, "')' closing call arguments");
        }
        expect(Tok::End, "end of entry spec");
        return c;
    }

  private:
    // ------------------------------------------------------------- plumbing

    const Token& peek(std::size_t k = 0) const {
        std::size_t j = i_ + k;
        if (j >= toks_.size()) j = toks_.size() - 1;
        return toks_[j];
    }

    const Token& advance() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

    bool accept(Tok k) {
        if (peek().kind == k) {
            advance();
            return true;
        }
        return false;
    }

    const Token& expect(Tok k, const std::string& what) {
        if (peek().kind != k) fail("expected " + what, peek().pos);
        return advance();
    }

    std::string expect_ident(const std::string& what) {
        if (peek().kind != Tok::Ident) fail("expected " + what, peek().pos);
        return advance().text;
    }

    [[noreturn]] void fail(const std::string& msg, SourcePos at) const {
        throw SyntaxError(msg, at);
    }

    SourceSpan span_from(SourcePos begin) const {
        return {begin, i_ > 0 ? toks_[i_ - 1].pos : begin};
    }

    // --------------------------------------------------------- declarations

    Decl parse_qubit_decl(bool qudit) {
        QuantumDeclAst d;
        d.span.begin = peek().pos;
        advance();
        if (qudit) {
            expect(Tok::LParen, "'(' after qudit");
            d.site_dim = parse_expr();
            expect(Tok::RParen, "')' after site dimension");
        }
        d.name = expect_ident("quantum variable name");
        if (accept(Tok::LBracket)) {
            for (;;) {
                ExprPtr lo = parse_expr();
                expect(Tok::Colon, "':' in index range");
                ExprPtr hi = parse_expr();
                d.ranges.emplace_back(std::move(lo), std::move(hi));
                if (!accept(Tok::Comma)) break;
            }
            expect(Tok::RBracket, "']' closing index ranges");
        }
        expect(Tok::Semi, "';' after declaration");
        d.span = span_from(d.span.begin);
        return d;
    }

    Decl parse_var_decl() {
        VarDeclAst d;
        d.span.begin = peek().pos;
        advance();
        d.name = expect_ident("variable name");
        if (accept(Tok::LBracket)) {
            d.range_lo = parse_expr();
            expect(Tok::Colon, "':' in array range");
            d.range_hi = parse_expr();
            expect(Tok::RBracket, "']' closing array range");
        }
        expect(Tok::Colon, "':' before type");
        switch (peek().kind) {
            case Tok::KwInt: d.kind = DeclKind::Int; break;
            case Tok::KwReal: d.kind = DeclKind::Real; break;
            case Tok::KwBool: d.kind = DeclKind::Bool; break;
            default: fail("expected int, real, or bool", peek().pos);
        }
        advance();
        if (accept(Tok::Assign)) {
            if (peek().kind == Tok::LBracket) {
                advance();
                d.init_list = parse_expr_list();
                expect(Tok::RBracket, "']' closing initializer list");
            } else {
                d.init = parse_expr();
            }
        }
        expect(Tok::Semi, "';' after declaration");
        d.span = span_from(d.span.begin);
        return d;
    }

    Decl parse_gate_decl() {
        GateDeclAst d;
        d.span.begin = peek().pos;
        advance();
        d.name = expect_ident("gate name");
        expect(Tok::Assign, "':=' in gate definition");
        if (peek().kind == Tok::LBracket) {
            d.matrix = parse_matrix_literal();
        } else {
            d.base = expect_ident("gate name or matrix literal");
            if (accept(Tok::LParen)) {
                if (peek().kind != Tok::RParen) d.base_args = parse_expr_list();
                expect(Tok::RParen, "')' closing gate arguments");
            }
        }
        expect(Tok::Semi, "';' after gate definition");
        d.span = span_from(d.span.begin);
        return d;
    }

    std::vector<std::vector<cxd>> parse_matrix_literal() {
        std::vector<std::vector<cxd>> rows;
        expect(Tok::LBracket, "'[' opening matrix");
        for (;;) {
            expect(Tok::LBracket, "'[' opening matrix row");
            std::vector<cxd> row;
            for (;;) {
                row.push_back(parse_complex_entry());
                if (!accept(Tok::Comma)) break;
            }
            expect(Tok::RBracket, "']' closing matrix row");
            rows.push_back(std::move(row));
            if (!accept(Tok::Comma)) break;
        }
        expect(Tok::RBracket, "']' closing matrix");
        return rows;
    }

    // A matrix entry: real, imaginary, or a sum "a+bi". The imaginary unit is
    // the bare identifier i directly after a number.
    cxd parse_complex_entry() {
        SourcePos at = peek().pos;
        auto piece = [&](double& value) -> bool {  // true when imaginary
            double sign = 1;
            while (peek().kind == Tok::Minus || peek().kind == Tok::Plus) {
                if (advance().kind == Tok::Minus) sign = -sign;
            }
            double v;
            if (peek().kind == Tok::IntLit) v = static_cast<double>(advance().ival);
            else if (peek().kind == Tok::RealLit) v = advance().rval;
            else { fail("expected a number in matrix entry", peek().pos); }
            value = sign * v;
            if (peek().kind == Tok::Ident && peek().text == "i") {
                advance();
                return true;
            }
            return false;
        };
        double re = 0, im = 0;
        double first;
        bool imag = piece(first);
        if (imag) {
            im = first;
        } else {
            re = first;
            if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
                double second;
                std::size_t save = i_;
                bool second_imag = piece(second);
                if (second_imag) {
                    im = second;
                } else {
                    i_ = save;  // not ours: happens only in malformed entries
                    fail("expected imaginary part in matrix entry", at);
                }
            }
        }
        return cxd(re, im);
    }

    // ---------------------------------------------------------------- procs

    ProcDecl parse_proc() {
        ProcDecl p;
        p.span.begin = peek().pos;
        advance();
        p.name = expect_ident("procedure name");
        expect(Tok::LParen, "'(' after procedure name");
        if (peek().kind != Tok::RParen) {
            for (;;) {
                p.params.push_back(expect_ident("parameter name"));
                if (!accept(Tok::Comma)) break;
            }
        }
        expect(Tok::RParen, "')' closing parameter list");
        expect(Tok::LBrace, "'{' opening procedure body");
        p.body = parse_stmt_seq();
        expect(Tok::RBrace, "'}' closing procedure body");
        p.span = span_from(p.span.begin);
        return p;
    }

    // ----------------------------------------------------------- statements

    bool at_seq_end() const {
        switch (peek().kind) {
            case Tok::KwFi:
            case Tok::KwElse:
            case Tok::KwOd:
            case Tok::KwEnd:
            case Tok::KwCase:
            case Tok::KwFiq:
            case Tok::RBrace:
            case Tok::End:
                return true;
            default:
                return false;
        }
    }

    StmtPtr parse_stmt_seq() {
        std::vector<StmtPtr> stmts;
        SourcePos begin = peek().pos;
        if (at_seq_end()) fail("expected a statement", begin);
        stmts.push_back(parse_stmt());
        while (accept(Tok::Semi)) {
            if (at_seq_end()) break;  // trailing separator
            stmts.push_back(parse_stmt());
        }
        if (stmts.size() == 1) return std::move(stmts.front());
        auto s = mk_seq(std::move(stmts));
        s->span = span_from(begin);
        return s;
    }

    StmtPtr parse_stmt() {
        SourcePos begin = peek().pos;
        StmtPtr s;
        switch (peek().kind) {
            case Tok::KwSkip:
                advance();
                s = mk_skip();
                break;
            case Tok::KwIf: {
                advance();
                ExprPtr cond = parse_expr();
                expect(Tok::KwThen, "'then'");
                StmtPtr then_body = parse_stmt_seq();
                StmtPtr else_body;
                if (accept(Tok::KwElse)) else_body = parse_stmt_seq();
                expect(Tok::KwFi, "'fi'");
                s = mk_if(std::move(cond), std::move(then_body), std::move(else_body));
                break;
            }
            case Tok::KwWhile: {
                advance();
                ExprPtr cond = parse_expr();
                expect(Tok::KwDo, "'do'");
                StmtPtr body = parse_stmt_seq();
                expect(Tok::KwOd, "'od'");
                s = mk_while(std::move(cond), std::move(body));
                break;
            }
            case Tok::KwBegin: {
                advance();
                std::vector<std::pair<std::string, ExprPtr>> locals;
                if (accept(Tok::KwLocal)) {
                    for (;;) {
                        std::string name = expect_ident("local variable name");
                        expect(Tok::Assign, "':=' after local variable");
                        locals.emplace_back(std::move(name), parse_expr());
                        if (!accept(Tok::Comma)) break;
                    }
                    expect(Tok::Semi, "';' after local bindings");
                }
                StmtPtr body = parse_stmt_seq();
                expect(Tok::KwEnd, "'end'");
                s = mk_block(std::move(locals), std::move(body));
                break;
            }
            case Tok::KwQif:
                s = parse_qif();
                break;
            case Tok::LParen:
                s = parse_paren_assign();
                break;
            case Tok::Ident:
                s = parse_ident_stmt();
                break;
            default:
                fail("expected a statement", begin);
        }
        s->span = span_from(begin);
        return s;
    }

    StmtPtr parse_qif() {
        advance();
        expect(Tok::LBracket, "'[' after qif");
        RegSpec coin = parse_reg_spec();
        expect(Tok::RBracket, "']' closing coin register");
        if (accept(Tok::KwForall)) {
            std::string binder = expect_ident("forall binder");
            expect(Tok::LBrace, "'{' opening forall body");
            if (peek().kind != Tok::KetName)
                fail("expected |" + binder + "> branch label", peek().pos);
            if (peek().text != binder)
                fail("forall branch label must use the binder name", peek().pos);
            advance();
            expect(Tok::Arrow, "'->' after branch label");
            StmtPtr body = parse_stmt_seq();
            expect(Tok::RBrace, "'}' closing forall body");
            return mk_qif_forall(std::move(coin), std::move(binder), std::move(body));
        }
        std::vector<QifBranch> branches;
        while (peek().kind == Tok::KwCase) {
            advance();
            Ket ket = parse_ket();
            expect(Tok::Arrow, "'->' after branch ket");
            QifBranch b;
            b.ket = std::move(ket);
            b.body = parse_stmt_seq();
            branches.push_back(std::move(b));
        }
        if (branches.empty()) fail("qif needs at least one case", peek().pos);
        expect(Tok::KwFiq, "'fiq'");
        return mk_qif(std::move(coin), std::move(branches));
    }

    Ket parse_ket() {
        const Token& t = peek();
        Ket k;
        switch (t.kind) {
            case Tok::KetBits: k = mk_ket_bits(t.text); break;
            case Tok::KetPlus: k = mk_ket_plus(); break;
            case Tok::KetMinus: k = mk_ket_minus(); break;
            case Tok::KetVector: k = mk_ket_vector(t.amps); break;
            case Tok::KetName:
                fail("branch kets must be constant; use the forall form for a bound index",
                     t.pos);
            default:
                fail("expected a ket", t.pos);
        }
        k.span = {t.pos, t.pos};
        advance();
        return k;
    }

    // Either a simultaneous assignment "(x, y) := (a, b)" with parentheses on
    // both sides, or a parse error.
    StmtPtr parse_paren_assign() {
        advance();
        std::vector<LValue> targets;
        for (;;) {
            targets.push_back(parse_lvalue());
            if (!accept(Tok::Comma)) break;
        }
        expect(Tok::RParen, "')' closing assignment targets");
        expect(Tok::Assign, "':='");
        expect(Tok::LParen, "'(' opening assignment values");
        std::vector<ExprPtr> values = parse_expr_list();
        expect(Tok::RParen, "')' closing assignment values");
        if (targets.size() != values.size())
            fail("assignment arity mismatch", peek().pos);
        auto s = mk_assign(std::move(targets), std::move(values));
        std::get<AssignStmt>(s->node).parenthesized = true;
        return s;
    }

    LValue parse_lvalue() {
        LValue lv;
        lv.span.begin = peek().pos;
        lv.name = expect_ident("assignment target");
        if (accept(Tok::LBracket)) {
            lv.subs = parse_expr_list();
            expect(Tok::RBracket, "']' closing subscript");
        }
        lv.span = span_from(lv.span.begin);
        return lv;
    }

    // Statements opening with an identifier: assignment, gate application, or
    // a procedure call. Tried as an assignment first, then re-parsed.
    StmtPtr parse_ident_stmt() {
        std::size_t save = i_;
        try {
            std::vector<LValue> targets;
            for (;;) {
                targets.push_back(parse_lvalue());
                if (!accept(Tok::Comma)) break;
            }
            expect(Tok::Assign, "':='");
            std::vector<ExprPtr> values = parse_expr_list();
            if (targets.size() != values.size())
                fail("assignment arity mismatch", peek().pos);
            return mk_assign(std::move(targets), std::move(values));
        } catch (const SyntaxError&) {
            i_ = save;
        }
        std::string name = expect_ident("statement");
        std::vector<ExprPtr> args;
        bool had_parens = false;
        if (accept(Tok::LParen)) {
            had_parens = true;
            if (peek().kind != Tok::RParen) args = parse_expr_list();
            expect(Tok::RParen, "')' closing arguments");
        }
        if (peek().kind == Tok::LBracket) {
            advance();
            RegSpec reg = parse_reg_spec();
            expect(Tok::RBracket, "']' closing register");
            return mk_gate(std::move(name), std::move(args), std::move(reg));
        }
        if (had_parens) return mk_call(std::move(name), std::move(args));
        fail("expected ':=', '(', or '[' after identifier", peek().pos);
    }

    RegSpec parse_reg_spec() {
        RegSpec reg;
        for (;;) {
            RegItem item;
            item.span.begin = peek().pos;
            item.name = expect_ident("quantum variable");
            if (accept(Tok::LBracket)) {
                ExprPtr first = parse_expr();
                if (accept(Tok::Colon)) {
                    item.range_lo = std::move(first);
                    item.range_hi = parse_expr();
                } else {
                    item.subs.push_back(std::move(first));
                    while (accept(Tok::Comma)) item.subs.push_back(parse_expr());
                }
                expect(Tok::RBracket, "']' closing subscript");
            }
            item.span = span_from(item.span.begin);
            reg.push_back(std::move(item));
            if (!accept(Tok::Comma)) break;
        }
        return reg;
    }

    // ---------------------------------------------------------- expressions

    std::vector<ExprPtr> parse_expr_list() {
        std::vector<ExprPtr> out;
        out.push_back(parse_expr());
        while (accept(Tok::Comma)) out.push_back(parse_expr());
        return out;
    }

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr with_span(ExprPtr e, SourcePos begin) {
        e->span = span_from(begin);
        return e;
    }

    ExprPtr parse_or() {
        SourcePos begin = peek().pos;
        ExprPtr l = parse_and();
        while (accept(Tok::KwOr))
            l = with_span(mk_binary(BinOp::Or, std::move(l), parse_and()), begin);
        return l;
    }

    ExprPtr parse_and() {
        SourcePos begin = peek().pos;
        ExprPtr l = parse_not();
        while (accept(Tok::KwAnd))
            l = with_span(mk_binary(BinOp::And, std::move(l), parse_not()), begin);
        return l;
    }

    ExprPtr parse_not() {
        SourcePos begin = peek().pos;
        if (accept(Tok::KwNot))
            return with_span(mk_unary(UnOp::Not, parse_not()), begin);
        return parse_cmp();
    }

    ExprPtr parse_cmp() {
        SourcePos begin = peek().pos;
        ExprPtr l = parse_add();
        BinOp op;
        switch (peek().kind) {
            case Tok::Eq: op = BinOp::Eq; break;
            case Tok::Ne: op = BinOp::Ne; break;
            case Tok::Lt: op = BinOp::Lt; break;
            case Tok::Le: op = BinOp::Le; break;
            case Tok::Gt: op = BinOp::Gt; break;
            case Tok::Ge: op = BinOp::Ge; break;
            default: return l;
        }
        advance();
        return with_span(mk_binary(op, std::move(l), parse_add()), begin);
    }

    ExprPtr parse_add() {
        SourcePos begin = peek().pos;
        ExprPtr l = parse_mul();
        for (;;) {
            if (accept(Tok::Plus))
                l = with_span(mk_binary(BinOp::Add, std::move(l), parse_mul()), begin);
            else if (accept(Tok::Minus))
                l = with_span(mk_binary(BinOp::Sub, std::move(l), parse_mul()), begin);
            else
                return l;
        }
    }

    ExprPtr parse_mul() {
        SourcePos begin = peek().pos;
        ExprPtr l = parse_unary();
        for (;;) {
            BinOp op;
            switch (peek().kind) {
                case Tok::Star: op = BinOp::Mul; break;
                case Tok::Slash: op = BinOp::Div; break;
                case Tok::KwDiv: op = BinOp::FloorDiv; break;
                case Tok::KwMod: op = BinOp::Mod; break;
                default: return l;
            }
            advance();
            l = with_span(mk_binary(op, std::move(l), parse_unary()), begin);
        }
    }

    ExprPtr parse_unary() {
        SourcePos begin = peek().pos;
        if (accept(Tok::Minus))
            return with_span(mk_unary(UnOp::Neg, parse_unary()), begin);
        return parse_pow();
    }

    ExprPtr parse_pow() {
        SourcePos begin = peek().pos;
        ExprPtr base = parse_atom();
        if (accept(Tok::Caret))
            return with_span(mk_binary(BinOp::Pow, std::move(base), parse_unary()), begin);
        return base;
    }

    ExprPtr parse_atom() {
        SourcePos begin = peek().pos;
        const Token& t = peek();
        switch (t.kind) {
            case Tok::IntLit: {
                auto v = advance().ival;
                return with_span(mk_int(v), begin);
            }
            case Tok::RealLit: {
                auto v = advance().rval;
                return with_span(mk_real(v), begin);
            }
            case Tok::KwTrue:
                advance();
                return with_span(mk_bool(true), begin);
            case Tok::KwFalse:
                advance();
                return with_span(mk_bool(false), begin);
            case Tok::KwPi:
                advance();
                return with_span(mk_const('p'), begin);
            case Tok::KwE:
                advance();
                return with_span(mk_const('e'), begin);
            case Tok::Ident: {
                std::string name = advance().text;
                if (accept(Tok::LBracket)) {
                    std::vector<ExprPtr> idx = parse_expr_list();
                    expect(Tok::RBracket, "']' closing subscript");
                    return with_span(mk_index(std::move(name), std::move(idx)), begin);
                }
                return with_span(mk_var(std::move(name)), begin);
            }
            case Tok::LParen: {
                advance();
                ExprPtr e = parse_expr();
                expect(Tok::RParen, "')' closing expression");
                return e;
            }
            default:
                fail("expected an expression", begin);
        }
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

}  // namespace

Program parse(const std::string& src) { return Parser(lex(src)).parse_program(); }

EntryCall parse_entry(const std::string& text) {
    return Parser(lex(text)).parse_entry_call();
}

}  // namespace qrpl
