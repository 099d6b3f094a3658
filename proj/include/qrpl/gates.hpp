#pragma once

#include <map>
#include <string>
#include <vector>

#include "qrpl/errors.hpp"
#include "qrpl/types.hpp"
#include "qrpl/value.hpp"

namespace qrpl {

bool is_builtin_gate(const std::string& name);
// Number of classical arguments the builtin expects, -1 if not builtin.
int builtin_arg_count(const std::string& name);
CMat builtin_gate(const std::string& name, const std::vector<ClassicalValue>& args,
                  SourceSpan at = {});

using GateEnv = std::map<std::string, CMat>;

// User gates shadow nothing (declaring one with a builtin name is rejected
// statically) and take no runtime arguments.
CMat gate_matrix(const GateEnv& user_gates, const std::string& name,
                 const std::vector<ClassicalValue>& args, SourceSpan at = {});

}  // namespace qrpl
