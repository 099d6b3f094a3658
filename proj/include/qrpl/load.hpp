#pragma once

#include <map>
#include <string>

#include "qrpl/ast.hpp"
#include "qrpl/eval.hpp"
#include "qrpl/gates.hpp"
#include "qrpl/model.hpp"

namespace qrpl {

struct LoadOptions {
    // name=value overrides applied to scalar variable declarations; an
    // override replaces the declared initializer before later declarations
    // evaluate, so register bounds written in terms of it follow along.
    std::map<std::string, ClassicalValue> overrides;
    std::int64_t amplitude_cap = kDefaultAmplitudeCap;
};

struct ProgramEnv {
    Program program;
    ClassicalDecls decls;
    ClassicalStore store;  // after all declarations ran
    WireTable wires;
    GateEnv gates;
    std::map<std::string, int> procs;  // name -> index into program.procs
    std::int64_t amplitude_cap = kDefaultAmplitudeCap;

    const ProcDecl* find_proc(const std::string& name) const;
};

ProgramEnv load_program(Program program, const LoadOptions& opts = {});

// External data bindings. Scalars replace the current value; a list fills a
// declared one-dimensional array starting at its lower bound and must match
// its length.
void bind_scalar(ProgramEnv& env, const std::string& name, ClassicalValue v);
void bind_list(ProgramEnv& env, const std::string& name,
               const std::vector<ClassicalValue>& values);

}  // namespace qrpl
