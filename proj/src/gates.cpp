#include "qrpl/gates.hpp"

#include <cmath>

namespace qrpl {

namespace {

const cxd kI{0.0, 1.0};

CMat mat2(cxd a, cxd b, cxd c, cxd d) {
    CMat m(2, 2);
    m << a, b, c, d;
    return m;
}

double real_arg(const std::vector<ClassicalValue>& args, std::size_t i, SourceSpan at) {
    return args[i].as_real(at);
}

struct BuiltinInfo {
    int argc;
};

const std::map<std::string, BuiltinInfo> kBuiltins = {
    {"I", {0}},  {"X", {0}},  {"Y", {0}},     {"Z", {0}},     {"H", {0}},
    {"S", {0}},  {"T", {0}},  {"SWAP", {0}},  {"Rl", {1}},    {"Rx", {1}},
    {"Ry", {1}}, {"Rz", {1}}, {"Phase", {1}}, {"Deutsch", {1}}, {"Uprep", {2}},
};

}  // namespace

bool is_builtin_gate(const std::string& name) { return kBuiltins.count(name) != 0; }

int builtin_arg_count(const std::string& name) {
    auto it = kBuiltins.find(name);
    return it == kBuiltins.end() ? -1 : it->second.argc;
}

CMat builtin_gate(const std::string& name, const std::vector<ClassicalValue>& args,
                  SourceSpan at) {
    auto it = kBuiltins.find(name);
    if (it == kBuiltins.end())
        throw RunError(ErrKind::UnknownName, "unknown gate " + name, at);
    if (static_cast<int>(args.size()) != it->second.argc)
        throw RunError(ErrKind::TypeError,
                       name + " takes " + std::to_string(it->second.argc) +
                           " argument(s), got " + std::to_string(args.size()),
                       at);
    const double s2 = 1.0 / std::sqrt(2.0);
    if (name == "I") return CMat::Identity(2, 2);
    if (name == "X") return mat2(0, 1, 1, 0);
    if (name == "Y") return mat2(0, -kI, kI, 0);
    if (name == "Z") return mat2(1, 0, 0, -1);
    if (name == "H") return mat2(s2, s2, s2, -s2);
    if (name == "S") return mat2(1, 0, 0, kI);
    if (name == "T") return mat2(1, 0, 0, std::polar(1.0, M_PI / 4.0));
    if (name == "SWAP") {
        CMat m = CMat::Zero(4, 4);
        m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
        return m;
    }
    if (name == "Rl") {
        std::int64_t l = args[0].as_int(at);
        if (l < 0)
            throw RunError(ErrKind::OutOfRange, "rotation level must be nonnegative", at);
        double angle = 2.0 * M_PI * std::ldexp(1.0, -static_cast<int>(std::min<std::int64_t>(l, 1073)));
        return mat2(1, 0, 0, std::polar(1.0, angle));
    }
    if (name == "Rx") {
        double t = real_arg(args, 0, at) / 2.0;
        return mat2(std::cos(t), -kI * std::sin(t), -kI * std::sin(t), std::cos(t));
    }
    if (name == "Ry") {
        double t = real_arg(args, 0, at) / 2.0;
        return mat2(std::cos(t), -std::sin(t), std::sin(t), std::cos(t));
    }
    if (name == "Rz") {
        double t = real_arg(args, 0, at) / 2.0;
        return mat2(std::polar(1.0, -t), 0, 0, std::polar(1.0, t));
    }
    if (name == "Phase") {
        return mat2(1, 0, 0, std::polar(1.0, real_arg(args, 0, at)));
    }
    if (name == "Deutsch") {
        double t = real_arg(args, 0, at);
        return mat2(kI * std::cos(t), std::sin(t), std::sin(t), kI * std::cos(t));
    }
    // Uprep: first column prepares (sqrt(g), e^{ib/2} sqrt(1-g)) from |0>.
    double g = real_arg(args, 0, at);
    double b = real_arg(args, 1, at);
    if (g < -1e-12 || g > 1.0 + 1e-12)
        throw RunError(ErrKind::NonUnitary,
                       "Uprep weight must lie in [0, 1], got " + std::to_string(g), at);
    g = std::min(1.0, std::max(0.0, g));
    cxd ph = std::polar(1.0, b / 2.0);
    double c = std::sqrt(g), s = std::sqrt(1.0 - g);
    return mat2(c, -s, ph * s, ph * c);
}

CMat gate_matrix(const GateEnv& user_gates, const std::string& name,
                 const std::vector<ClassicalValue>& args, SourceSpan at) {
    auto it = user_gates.find(name);
    if (it != user_gates.end()) {
        if (!args.empty())
            throw RunError(ErrKind::TypeError, name + " takes no arguments", at);
        return it->second;
    }
    return builtin_gate(name, args, at);
}

}  // namespace qrpl
