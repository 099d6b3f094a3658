#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "qrpl/check.hpp"
#include "qrpl/json_io.hpp"
#include "qrpl/oracle.hpp"
#include "qrpl/parser.hpp"
#include "qrpl/pretty.hpp"
#include "qrpl/stdlib.hpp"

namespace {

using namespace qrpl;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitStatic = 3;

struct CommonOpts {
    std::string file;
    std::string call;
    std::string data_file;
    std::vector<std::string> env_overrides;
    std::int64_t depth = 4096;
    std::int64_t fuel = 1'000'000;
    std::int64_t cap = kDefaultAmplitudeCap;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("file", o.file, "program file")->required();
    cmd->add_option("--call", o.call, "entry call, e.g. 'QFT(1, 3)' (default: main)");
    cmd->add_option("--data", o.data_file, "JSON data bindings for declared variables");
    cmd->add_option("--env", o.env_overrides, "scalar override name=value (repeatable)");
    cmd->add_option("--depth", o.depth, "recursion depth limit");
    cmd->add_option("--fuel", o.fuel, "total loop iteration budget");
    cmd->add_option("--cap", o.cap, "amplitude count cap");
}

ClassicalValue parse_value(const std::string& text) {
    if (text == "true") return ClassicalValue{true};
    if (text == "false") return ClassicalValue{false};
    char* end = nullptr;
    errno = 0;
    long long i = std::strtoll(text.c_str(), &end, 10);
    if (errno == 0 && end && *end == '\0')
        return ClassicalValue{static_cast<std::int64_t>(i)};
    end = nullptr;
    double d = std::strtod(text.c_str(), &end);
    if (end && *end == '\0' && end != text.c_str()) return ClassicalValue{d};
    throw RunError(ErrKind::BadInput, "cannot parse value '" + text + "'");
}

// Returns the loaded program or exits with a diagnostic.
ProgramEnv load_checked(const CommonOpts& o) {
    std::string src = read_text_file(o.file);
    Program p;
    try {
        p = parse(src);
    } catch (const SyntaxError& e) {
        std::cerr << o.file << ":" << e.pos().line << ":" << e.pos().col
                  << ": error: " << e.what() << "\n";
        std::exit(kExitStatic);
    }
    std::vector<Diagnostic> diags = static_check(p);
    if (!diags.empty()) {
        std::cerr << format_diagnostics(diags, o.file);
        std::exit(kExitStatic);
    }
    LoadOptions opts;
    opts.amplitude_cap = o.cap;
    for (const std::string& pair : o.env_overrides) {
        std::size_t eq = pair.find('=');
        if (eq == std::string::npos)
            throw RunError(ErrKind::BadInput, "--env expects name=value, got " + pair);
        opts.overrides[pair.substr(0, eq)] = parse_value(pair.substr(eq + 1));
    }
    ProgramEnv env = load_program(std::move(p), opts);
    if (!o.data_file.empty()) {
        DataBindings data = read_data_json(o.data_file);
        for (const auto& [name, v] : data.scalars) bind_scalar(env, name, v);
        for (const auto& [name, list] : data.lists) bind_list(env, name, list);
    }
    return env;
}

struct Entry {
    std::string proc;  // empty: main
    std::vector<ClassicalValue> args;
};

Entry resolve_entry(const ProgramEnv& env, const std::string& call) {
    Entry entry;
    if (call.empty()) return entry;
    EntryCall parsed = parse_entry(call);
    entry.proc = parsed.proc;
    EvalContext ctx;
    ctx.decls = &env.decls;
    for (const ExprPtr& e : parsed.args)
        entry.args.push_back(eval_expr(ctx, env.store, *e));
    return entry;
}

RunResult run_entry(const ProgramEnv& env, const Entry& entry, RunLimits limits,
                    ClassicalStore store, StateVector state, TraceSink trace = nullptr) {
    Interpreter interp(env, limits, std::move(trace));
    if (entry.proc.empty()) return interp.run(std::move(store), std::move(state));
    return interp.run_call(entry.proc, entry.args, std::move(store), std::move(state));
}

double tolerance_default() {
    if (const char* t = std::getenv("QRPL_TOLERANCE")) {
        char* end = nullptr;
        double v = std::strtod(t, &end);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1e-9;
}

void print_store(const ClassicalStore& store) {
    for (const auto& [key, value] : store.bindings())
        std::cout << to_string(key) << " = " << to_string(value) << "\n";
}

int cmd_check(const CommonOpts& o) {
    load_checked(o);
    std::cout << "ok\n";
    return kExitPass;
}

int cmd_run(const CommonOpts& o, const std::string& in_file, std::int64_t basis,
            const std::string& out_file, bool trace) {
    ProgramEnv env = load_checked(o);
    Layout layout = full_layout(env.wires);
    StateVector state;
    if (!in_file.empty()) {
        state = read_state_json(in_file, env.wires);
    } else {
        if (basis < 0 || basis >= layout.dim)
            throw RunError(ErrKind::OutOfRange,
                           "basis index " + std::to_string(basis) +
                               " outside the state space");
        state = basis_state(layout, basis);
    }
    TraceSink sink;
    if (trace)
        sink = [](const TraceEvent& e) {
            std::cout << std::string(2 * static_cast<std::size_t>(e.depth), ' ')
                      << e.tag;
            if (!e.detail.empty()) std::cout << " " << e.detail;
            std::cout << "\n";
        };
    RunLimits limits{o.depth, o.fuel};
    RunResult result = run_entry(env, resolve_entry(env, o.call), limits, env.store,
                                 std::move(state), std::move(sink));
    print_store(result.store);
    if (result.state.layout.dim <= 64) {
        for (std::int64_t i = 0; i < result.state.layout.dim; ++i) {
            cxd a = result.state.amps(i);
            if (std::abs(a) < 1e-12) continue;
            std::vector<std::int64_t> digits = digits_of_index(result.state.layout, i);
            std::cout << "|";
            for (std::int64_t d : digits) std::cout << d;
            std::cout << "> " << a.real() << (a.imag() < 0 ? " - " : " + ")
                      << std::abs(a.imag()) << "i\n";
        }
    } else {
        std::cout << "dim " << result.state.layout.dim << ", norm "
                  << result.state.amps.norm() << "\n";
    }
    if (!out_file.empty())
        write_state_json(out_file, env.wires, result.state, &result.store);
    return kExitPass;
}

int cmd_matrix(const CommonOpts& o, const std::string& out_file) {
    ProgramEnv env = load_checked(o);
    Entry entry = resolve_entry(env, o.call);
    RunLimits limits{o.depth, o.fuel};
    CMat m = matrix_of(env, entry.proc, entry.args, limits);
    if (!out_file.empty()) write_matrix_json(out_file, env.wires, m);
    if (m.rows() <= 16) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                cxd v = m(r, c);
                std::cout << (c ? "  " : "") << v.real()
                          << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
            }
            std::cout << "\n";
        }
    } else {
        std::cout << "dim " << m.rows() << (out_file.empty() ? " (use --out)" : "")
                  << "\n";
    }
    return kExitPass;
}

int verdict(const char* what, double diff, double tol) {
    bool pass = diff <= tol;
    std::cout << what << ": max diff " << diff << " vs tolerance " << tol << " -> "
              << (pass ? "pass" : "FAIL") << "\n";
    return pass ? kExitPass : kExitVerifyFail;
}

int verify_qraqm(const ProgramEnv& env, std::int64_t n, RunLimits limits, double tol) {
    std::int64_t slots = 1LL << n;
    Layout layout = full_layout(env.wires);
    if (layout.size() != static_cast<int>(n + slots))
        throw RunError(ErrKind::LayoutMismatch,
                       "program has " + std::to_string(layout.size()) +
                           " wires, oracle expects " + std::to_string(n + slots));
    bool all_pass = true;
    for (std::int64_t j = 0; j < slots; ++j) {
        std::vector<std::int64_t> source(slots, 0);
        for (std::int64_t plane = 0; plane < n; ++plane) {
            std::vector<std::int64_t> digits(layout.size(), 0);
            for (std::int64_t b = 0; b < n; ++b) digits[b] = (j >> (n - 1 - b)) & 1;
            for (std::int64_t s = 0; s < slots; ++s)
                digits[n + s] = (s >> plane) & 1;
            StateVector state = basis_state(layout, index_of_digits(layout, digits));
            Interpreter interp(env, limits);
            RunResult out = interp.run_call(
                "U", {ClassicalValue{std::int64_t{0}}, ClassicalValue{slots - 1},
                      ClassicalValue{std::int64_t{1}}},
                env.store, std::move(state));
            Eigen::Index top = 0;
            out.state.amps.cwiseAbs().maxCoeff(&top);
            if (std::abs(std::abs(out.state.amps(top)) - 1.0) > tol)
                throw RunError(ErrKind::BadInput,
                               "run did not map a basis state to a basis state");
            std::vector<std::int64_t> final_digits =
                digits_of_index(layout, static_cast<std::int64_t>(top));
            for (std::int64_t s = 0; s < slots; ++s)
                source[s] |= final_digits[n + s] << plane;
        }
        SlotPermutation expected = qraqm_expected(n, j);
        bool match = source == expected.source;
        all_pass = all_pass && match;
        std::cout << "address " << j << ": slot permutation "
                  << (match ? "pass" : "FAIL") << ", front layout "
                  << (expected.matches_literal ? "matches" : "differs from")
                  << " the flat form\n";
    }
    return all_pass ? kExitPass : kExitVerifyFail;
}

int cmd_verify(const CommonOpts& o, const std::vector<std::string>& oracle,
               bool up_to_phase, double tol) {
    ProgramEnv env = load_checked(o);
    RunLimits limits{o.depth, o.fuel};
    if (oracle.empty()) throw RunError(ErrKind::BadInput, "--oracle is required");
    const std::string& kind = oracle[0];
    auto oracle_arg = [&](std::size_t i) -> const std::string& {
        if (i >= oracle.size())
            throw RunError(ErrKind::BadInput, "--oracle " + kind + " needs an argument");
        return oracle[i];
    };
    if (kind == "qsp") {
        std::vector<cxd> a = read_amplitude_json(oracle_arg(1));
        std::vector<ClassicalValue> amod, aarg;
        for (const cxd& v : a) {
            amod.push_back(ClassicalValue{std::abs(v)});
            aarg.push_back(ClassicalValue{std::abs(v) > 0.0 ? std::arg(v) : 0.0});
        }
        bind_list(env, "amod", amod);
        bind_list(env, "aarg", aarg);
        Layout layout = full_layout(env.wires);
        CVec target = qsp_target(a);
        if (target.size() != layout.dim)
            throw RunError(ErrKind::DimensionMismatch,
                           "amplitude file length does not match the register");
        RunResult out = run_entry(env, resolve_entry(env, o.call), limits, env.store,
                                  basis_state(layout, 0));
        CVec got = out.state.amps;
        if (up_to_phase) {
            Eigen::Index m = 0;
            target.cwiseAbs().maxCoeff(&m);
            cxd phase = got(m) / target(m);
            double mag = std::abs(phase);
            if (mag > 1e-300) target = (phase / mag) * target.eval();
        }
        return verdict("state", max_abs_diff(got, target), tol);
    }
    if (kind == "qraqm") {
        std::int64_t n = parse_value(oracle_arg(1)).as_int();
        return verify_qraqm(env, n, limits, tol);
    }
    CMat expected;
    if (kind == "dft") {
        expected = dft_matrix(parse_value(oracle_arg(1)).as_int());
    } else if (kind == "cu") {
        std::int64_t n = parse_value(oracle_arg(1)).as_int();
        EntryCall g = parse_entry(oracle_arg(2));
        EvalContext ctx;
        ctx.decls = &env.decls;
        std::vector<ClassicalValue> gate_args;
        for (const ExprPtr& e : g.args)
            gate_args.push_back(eval_expr(ctx, env.store, *e));
        expected = controlled_u_matrix(n, gate_matrix(env.gates, g.proc, gate_args));
    } else if (kind == "matrix") {
        expected = read_matrix_json(oracle_arg(1));
    } else {
        throw RunError(ErrKind::BadInput, "unknown oracle " + kind);
    }
    Entry entry = resolve_entry(env, o.call);
    CMat got = matrix_of(env, entry.proc, entry.args, limits);
    CompareReport report = compare(got, expected, tol, up_to_phase);
    std::cout << "matrix: max diff " << report.max_diff << " at (" << report.worst_row
              << ", " << report.worst_col << ") vs tolerance " << tol << " -> "
              << (report.pass ? "pass" : "FAIL") << "\n";
    return report.pass ? kExitPass : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum recursive program toolkit"};
    app.require_subcommand(1);

    CommonOpts check_opts;
    CLI::App* check = app.add_subcommand("check", "parse and validate a program");
    add_common(check, check_opts);

    CommonOpts run_opts;
    std::string in_file, run_out;
    std::int64_t basis = 0;
    bool trace = false;
    CLI::App* run = app.add_subcommand("run", "execute and print the final state");
    add_common(run, run_opts);
    run->add_option("--in", in_file, "initial state JSON");
    run->add_option("--basis", basis, "initial computational basis index");
    run->add_option("--out", run_out, "write the final state JSON here");
    run->add_flag("--trace", trace, "print each executed step");

    CommonOpts matrix_opts;
    std::string matrix_out;
    CLI::App* matrix = app.add_subcommand("matrix", "extract the denotational matrix");
    add_common(matrix, matrix_opts);
    matrix->add_option("--out", matrix_out, "write the matrix JSON here");

    CommonOpts verify_opts;
    std::vector<std::string> oracle;
    bool up_to_phase = false;
    double tol = tolerance_default();
    CLI::App* verify = app.add_subcommand("verify", "compare against an oracle");
    add_common(verify, verify_opts);
    verify->add_option("--oracle", oracle,
                       "dft N | cu N GATE | qsp FILE | qraqm N | matrix FILE")
        ->expected(1, 3);
    verify->add_flag("--up-to-phase", up_to_phase, "ignore a global phase");
    verify->add_option("--tol", tol, "comparison tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(check_opts);
        if (run->parsed()) return cmd_run(run_opts, in_file, basis, run_out, trace);
        if (matrix->parsed()) return cmd_matrix(matrix_opts, matrix_out);
        return cmd_verify(verify_opts, oracle, up_to_phase, tol);
    } catch (const RunError& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what();
        if (e.span().begin.line > 0)
            std::cerr << " (line " << e.span().begin.line << ")";
        std::cerr << "\n";
        return kExitRuntime;
    } catch (const SyntaxError& e) {
        std::cerr << "error: syntax: " << e.what() << "\n";
        return kExitStatic;
    }
}
