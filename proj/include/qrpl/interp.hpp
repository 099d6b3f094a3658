#pragma once

#include <functional>
#include <set>

#include "qrpl/eval.hpp"
#include "qrpl/load.hpp"
#include "qrpl/state.hpp"

namespace qrpl {

struct RunLimits {
    std::int64_t recursion_depth = 4096;
    std::int64_t loop_fuel = 1'000'000;
};

// One step of the operational small-print: rule tag, human detail, call depth.
struct TraceEvent {
    const char* tag;
    std::string detail;
    int depth = 0;
};

using TraceSink = std::function<void(const TraceEvent&)>;

struct RunResult {
    ClassicalStore store;
    StateVector state;
};

// Builds the constant ket a branch label denotes, over coin wires of the
// given dimensions (first wire most significant).
CVec ket_vector_of(const Ket& ket, const std::vector<std::int64_t>& dims,
                   SourceSpan at = {});

class Interpreter {
  public:
    explicit Interpreter(const ProgramEnv& env, RunLimits limits = {},
                         TraceSink trace = nullptr);

    RunResult run(ClassicalStore store, StateVector state);
    RunResult run_call(const std::string& proc, const std::vector<ClassicalValue>& args,
                       ClassicalStore store, StateVector state);

  private:
    void exec(const Stmt& s);
    void exec(const SkipStmt&, SourceSpan at);
    void exec(const AssignStmt& s, SourceSpan at);
    void exec(const GateStmt& s, SourceSpan at);
    void exec(const CallStmt& s, SourceSpan at);
    void exec(const SeqStmt& s, SourceSpan at);
    void exec(const IfStmt& s, SourceSpan at);
    void exec(const WhileStmt& s, SourceSpan at);
    void exec(const QifStmt& s, SourceSpan at);
    void exec(const QifForallStmt& s, SourceSpan at);
    void exec(const BlockStmt& s, SourceSpan at);

    void call_proc(const std::string& name, std::vector<ClassicalValue> args,
                   SourceSpan at);
    void check_unlocked(const std::vector<int>& wires, SourceSpan at) const;
    void run_branches(const std::vector<int>& coin,
                      const std::vector<CVec>& kets,
                      const std::function<void(std::size_t)>& body, SourceSpan at);
    void emit(const char* tag, std::string detail);

    const ProgramEnv& env_;
    RunLimits limits_;
    TraceSink trace_;
    EvalContext ctx_;
    ClassicalStore store_;
    StateVector state_;
    std::set<int> locked_;  // coin wires of enclosing quantum branches
    std::int64_t call_depth_ = 0;
};

}  // namespace qrpl
