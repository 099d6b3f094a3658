#pragma once

#include "qrpl/ast.hpp"
#include "qrpl/value.hpp"

namespace qrpl {

// Shared budget for classical work. Fuel is consumed once per loop iteration
// across the whole run, so a diverging while cannot hang the interpreter.
struct EvalContext {
    const ClassicalDecls* decls = nullptr;  // optional; enables kind checks
    std::int64_t fuel = 1'000'000;

    void consume_fuel(SourceSpan at) {
        if (--fuel < 0)
            throw RunError(ErrKind::FuelExhausted, "loop fuel exhausted", at);
    }
};

ClassicalValue eval_expr(EvalContext& ctx, const ClassicalStore& store, const Expr& e);
bool eval_bool(EvalContext& ctx, const ClassicalStore& store, const Expr& e);

// Evaluates an already-materialized store key for an lvalue.
StoreKey eval_lvalue(EvalContext& ctx, const ClassicalStore& store, const LValue& lv);

// Simultaneous assignment: all subscripts and right-hand sides evaluate
// against the entry store, then all writes land. Duplicate targets error.
void store_update(EvalContext& ctx, ClassicalStore& store,
                  const std::vector<LValue>& targets,
                  const std::vector<ExprPtr>& values, SourceSpan at = {});

// Writes one value, enforcing the declared kind when the name is declared:
// assigning Int to a Real variable promotes; any other mismatch errors.
void store_write(EvalContext& ctx, ClassicalStore& store, const StoreKey& key,
                 ClassicalValue v, SourceSpan at = {});

// Saved shadow of block locals, used to restore bindings on block exit.
struct SavedBindings {
    std::vector<std::pair<StoreKey, std::optional<ClassicalValue>>> entries;
};

SavedBindings bind_locals(EvalContext& ctx, ClassicalStore& store,
                          const std::vector<std::pair<std::string, ExprPtr>>& locals,
                          SourceSpan at = {});
void restore_bindings(ClassicalStore& store, const SavedBindings& saved);

// Big-step execution of the classical fragment: skip, assignment, sequencing,
// conditionals, loops, and blocks. Quantum statements and calls are rejected.
void exec_classical(EvalContext& ctx, const Stmt& s, ClassicalStore& store);

}  // namespace qrpl
