#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qrpl/errors.hpp"
#include "qrpl/types.hpp"
#include "qrpl/value.hpp"

namespace qrpl {

// ---------------------------------------------------------------- expressions

enum class UnOp { Neg, Not };
enum class BinOp {
    Add, Sub, Mul, Div, FloorDiv, Mod, Pow,
    Eq, Ne, Lt, Le, Gt, Ge,
    And, Or,
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct IntLit { std::int64_t v = 0; };
struct RealLit { double v = 0; };
struct BoolLit { bool v = false; };
struct ConstRef { char which = 'p'; };  // 'p' = pi, 'e' = e
struct VarRef { std::string name; };
struct ArrayRef {
    std::string name;
    std::vector<ExprPtr> idx;
};
struct Unary {
    UnOp op;
    ExprPtr e;
};
struct Binary {
    BinOp op;
    ExprPtr l, r;
};

struct Expr {
    SourceSpan span;
    std::variant<IntLit, RealLit, BoolLit, ConstRef, VarRef, ArrayRef, Unary, Binary> node;
};

ExprPtr mk_int(std::int64_t v);
ExprPtr mk_real(double v);
ExprPtr mk_bool(bool v);
ExprPtr mk_const(char which);
ExprPtr mk_var(std::string name);
ExprPtr mk_index(std::string name, std::vector<ExprPtr> idx);
ExprPtr mk_unary(UnOp op, ExprPtr e);
ExprPtr mk_binary(BinOp op, ExprPtr l, ExprPtr r);
ExprPtr clone(const Expr& e);

// ------------------------------------------------------------------- registers

// One item of a register spec: a plain name, a subscripted wire, or an
// inclusive index range over a one-dimensional quantum array.
struct RegItem {
    SourceSpan span;
    std::string name;
    std::vector<ExprPtr> subs;  // non-empty for q[i] / q[i,j]
    ExprPtr range_lo, range_hi; // both set for q[lo:hi]; subs empty then

    bool is_range() const { return range_lo != nullptr; }
};

using RegSpec = std::vector<RegItem>;

RegItem mk_wire(std::string name);
RegItem mk_wire(std::string name, std::vector<ExprPtr> subs);
RegItem mk_wire_range(std::string name, ExprPtr lo, ExprPtr hi);
RegItem clone(const RegItem& r);
RegSpec clone(const RegSpec& r);

// ------------------------------------------------------------------------ kets

// Branch labels of a quantum case statement. Constant kets only; the forall
// form binds a classical variable to the computational index instead.
struct Ket {
    enum class Kind { Bits, Plus, Minus, Vector } kind = Kind::Bits;
    SourceSpan span;
    std::string bits;            // Kind::Bits
    std::vector<cxd> amplitudes; // Kind::Vector, unit norm within 1e-9
};

Ket mk_ket_bits(std::string bits);
Ket mk_ket_plus();
Ket mk_ket_minus();
Ket mk_ket_vector(std::vector<cxd> amps);

// ------------------------------------------------------------------ statements

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct LValue {
    SourceSpan span;
    std::string name;
    std::vector<ExprPtr> subs;  // empty for plain variables
};

struct SkipStmt {};
struct AssignStmt {
    std::vector<LValue> targets;
    std::vector<ExprPtr> values;
    bool parenthesized = false;  // written as (x, y) := (a, b)
};
struct GateStmt {
    std::string gate;
    std::vector<ExprPtr> args;  // parameters of a gate family, often empty
    RegSpec reg;
};
struct CallStmt {
    std::string proc;
    std::vector<ExprPtr> args;
};
struct SeqStmt {
    std::vector<StmtPtr> stmts;
};
struct IfStmt {
    ExprPtr cond;
    StmtPtr then_body;
    StmtPtr else_body;  // may be null
};
struct WhileStmt {
    ExprPtr cond;
    StmtPtr body;
};
struct QifBranch {
    Ket ket;
    StmtPtr body;
};
struct QifStmt {
    RegSpec coin;
    std::vector<QifBranch> branches;
};
struct QifForallStmt {
    RegSpec coin;  // exactly one range item
    std::string binder;
    StmtPtr body;
};
struct BlockStmt {
    // begin local x := t, ...; body end. Locals are plain variables; their
    // prior bindings (or absence) are restored on exit.
    std::vector<std::pair<std::string, ExprPtr>> locals;
    StmtPtr body;
};

struct Stmt {
    SourceSpan span;
    std::variant<SkipStmt, AssignStmt, GateStmt, CallStmt, SeqStmt, IfStmt, WhileStmt,
                 QifStmt, QifForallStmt, BlockStmt>
        node;
};

StmtPtr mk_skip();
StmtPtr mk_assign(std::vector<LValue> targets, std::vector<ExprPtr> values);
StmtPtr mk_assign(std::string name, ExprPtr value);
StmtPtr mk_gate(std::string gate, RegSpec reg);
StmtPtr mk_gate(std::string gate, std::vector<ExprPtr> args, RegSpec reg);
StmtPtr mk_call(std::string proc, std::vector<ExprPtr> args = {});
StmtPtr mk_seq(std::vector<StmtPtr> stmts);
StmtPtr mk_if(ExprPtr cond, StmtPtr then_body, StmtPtr else_body = nullptr);
StmtPtr mk_while(ExprPtr cond, StmtPtr body);
StmtPtr mk_qif(RegSpec coin, std::vector<QifBranch> branches);
StmtPtr mk_qif_forall(RegSpec coin, std::string binder, StmtPtr body);
StmtPtr mk_block(std::vector<std::pair<std::string, ExprPtr>> locals, StmtPtr body);

// ---------------------------------------------------------------- declarations

struct QuantumDeclAst {
    SourceSpan span;
    std::string name;
    ExprPtr site_dim;  // null means qubit (dimension 2)
    std::vector<std::pair<ExprPtr, ExprPtr>> ranges;  // empty: single wire
};

struct VarDeclAst {
    SourceSpan span;
    std::string name;
    DeclKind kind = DeclKind::Int;
    ExprPtr range_lo, range_hi;       // both set for array declarations
    ExprPtr init;                     // scalar initializer
    std::vector<ExprPtr> init_list;   // array initializer
};

struct GateDeclAst {
    SourceSpan span;
    std::string name;
    std::vector<std::vector<cxd>> matrix;  // literal form; empty if aliased
    std::string base;                      // alias form: existing gate name
    std::vector<ExprPtr> base_args;        // arguments for a gate family alias
};

using Decl = std::variant<QuantumDeclAst, VarDeclAst, GateDeclAst>;

struct ProcDecl {
    SourceSpan span;
    std::string name;
    std::vector<std::string> params;
    StmtPtr body;
};

struct Program {
    std::vector<Decl> decls;  // in source order; later decls may use earlier ones
    std::vector<ProcDecl> procs;
    StmtPtr main;  // may be null
};

// Structural equality, ignoring source spans. Used by the round-trip tests.
bool equals(const Expr& a, const Expr& b);
bool equals(const RegItem& a, const RegItem& b);
bool equals(const Ket& a, const Ket& b);
bool equals(const Stmt& a, const Stmt& b);
bool equals(const Program& a, const Program& b);

}  // namespace qrpl
