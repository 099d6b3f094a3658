#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>

#include "qrpl/interp.hpp"
#include "qrpl/oracle.hpp"
#include "qrpl/parser.hpp"
#include "qrpl/stdlib.hpp"

using namespace qrpl;

namespace {

const std::string kDir = std::string(QRPL_SOURCE_DIR) + "/stdlib";

ClassicalValue iv(std::int64_t i) { return ClassicalValue(i); }

ProgramEnv load_asset(const std::string& file, LoadOptions opts = {}) {
    return load_program(parse(read_text_file(kDir + "/" + file)), opts);
}

ProgramEnv load_sized(const std::string& file, std::int64_t n,
                      const std::string& size_var = "n") {
    LoadOptions opts;
    opts.overrides[size_var] = iv(n);
    return load_asset(file, opts);
}

double mat_diff(const CMat& a, const CMat& b) {
    REQUIRE(a.rows() == b.rows());
    return (a - b).cwiseAbs().maxCoeff();
}

ErrKind run_error(const ProgramEnv& env, const std::string& proc = "",
                  std::vector<ClassicalValue> args = {}) {
    Interpreter in(env);
    try {
        if (proc.empty())
            in.run(env.store, initial_state(env.wires));
        else
            in.run_call(proc, args, env.store, initial_state(env.wires));
        FAIL("run finished without an error");
    } catch (const RunError& e) {
        return e.kind();
    }
    return ErrKind::BadInput;
}

}  // namespace

TEST_CASE("manifest loads and every asset passes the static checks") {
    std::vector<StdlibEntry> entries = load_stdlib(kDir);
    CHECK(entries.size() == 17);
    std::set<std::string> names;
    for (const auto& e : entries) names.insert(e.name);
    for (const char* want :
         {"cnot", "toffoli", "deutsch", "fredkin", "basis_change", "cstar_local",
          "cstar_param", "qft", "qft_verbatim", "qsp", "qraqm", "euclid"})
        CHECK(names.count(want) == 1);
}

TEST_CASE("gate programs match their permutation matrices") {
    CMat x = builtin_gate("X", {});
    CHECK(mat_diff(matrix_of(load_asset("cnot.qrp"), "", {}),
                   controlled_u_matrix(1, x)) < 1e-12);

    CMat toffoli = matrix_of(load_asset("toffoli.qrp"), "", {});
    CHECK(mat_diff(toffoli, controlled_u_matrix(2, x)) < 1e-12);

    CHECK(mat_diff(matrix_of(load_asset("deutsch.qrp"), "", {}), toffoli) < 1e-12);

    LoadOptions bent;
    bent.overrides["theta"] = ClassicalValue(0.7);
    CHECK(mat_diff(matrix_of(load_asset("deutsch.qrp", bent), "", {}),
                   controlled_u_matrix(2, builtin_gate("Deutsch", {0.7}))) < 1e-12);

    CMat cswap = CMat::Identity(8, 8);
    cswap.col(5).swap(cswap.col(6));
    CHECK(mat_diff(matrix_of(load_asset("fredkin.qrp"), "", {}), cswap) < 1e-12);
}

TEST_CASE("the two coin bases of basis_change define the same gate") {
    ProgramEnv env = load_asset("basis_change.qrp");
    CMat phase = matrix_of(env, "PhaseForm", {});
    CMat flip = matrix_of(env, "FlipForm", {});
    CHECK(mat_diff(phase, flip) < 1e-12);

    CMat cnot_lsb(4, 4);
    cnot_lsb.setZero();
    cnot_lsb(0, 0) = cnot_lsb(2, 2) = 1;
    cnot_lsb(3, 1) = cnot_lsb(1, 3) = 1;
    CHECK(mat_diff(flip, cnot_lsb) < 1e-12);

    CHECK(run_error(load_asset("basis_change_verbatim.qrp")) == ErrKind::CoinViolation);
}

TEST_CASE("both controlled-section forms equal the controlled gate, exactly alike") {
    for (std::int64_t n : {2, 3, 4}) {
        for (const char* gname : {"X", "H"}) {
            CMat g = builtin_gate(gname, {});
            ProgramEnv local = load_sized("cstar_local.qrp", n);
            local.gates["G"] = g;
            ProgramEnv param = load_sized("cstar_param.qrp", n);
            param.gates["G"] = g;
            CMat a = matrix_of(local, "", {});
            CMat b = matrix_of(param, "Cstar", {iv(1), iv(n)});
            CHECK(mat_diff(a, controlled_u_matrix(n - 1, g)) < 1e-9);
            CHECK(mat_diff(a, b) == 0.0);
        }
    }
}

TEST_CASE("the repaired fourier program matches the transform") {
    for (std::int64_t n = 1; n <= 4; ++n) {
        ProgramEnv env = load_sized("qft.qrp", n);
        CHECK(mat_diff(matrix_of(env, "QFT", {iv(1), iv(n)}), dft_matrix(n)) < 1e-9);
    }
    CHECK(mat_diff(matrix_of(load_sized("qft.qrp", 2), "", {}), dft_matrix(2)) < 1e-9);
}

TEST_CASE("the unguarded rotation recursion exhausts the call depth") {
    CHECK(mat_diff(matrix_of(load_sized("qft_verbatim.qrp", 1), "", {}),
                   dft_matrix(1)) < 1e-12);
    CHECK(run_error(load_sized("qft_verbatim.qrp", 2)) == ErrKind::RecursionLimit);
}

TEST_CASE("per-level reversal splits from the transform at three wires") {
    CHECK(mat_diff(matrix_of(load_sized("qft_reverse_defect.qrp", 2), "", {}),
                   dft_matrix(2)) < 1e-9);
    CompareReport r = compare(matrix_of(load_sized("qft_reverse_defect.qrp", 3), "", {}),
                              dft_matrix(3), 1e-9, false);
    CHECK_FALSE(r.pass);
    CHECK(r.max_diff > 0.1);
}

TEST_CASE("state preparation hits its target up to a global phase") {
    auto prepare = [](std::int64_t n, const std::vector<cxd>& a) {
        LoadOptions opts;
        opts.overrides["nn"] = iv(n);
        ProgramEnv env = load_asset("qsp.qrp", opts);
        std::vector<ClassicalValue> amod, aarg;
        for (cxd c : a) {
            amod.push_back(ClassicalValue(std::abs(c)));
            aarg.push_back(ClassicalValue(std::abs(c) > 0 ? std::arg(c) : 0.0));
        }
        bind_list(env, "amod", amod);
        bind_list(env, "aarg", aarg);
        Interpreter in(env);
        RunResult out = in.run(env.store, initial_state(env.wires));
        StateVector want{out.state.layout, qsp_target(a)};
        CHECK(state_close_up_to_phase(out.state, want, 1e-9));
    };
    const cxd i(0, 1);
    prepare(1, {1.0 + 0.0 * i, i});
    prepare(2, {0.3 + 0.4 * i, 0.0, -2.0, 0.01 * i});
    prepare(2, {0.0, 0.0, 1.0, 0.0});
    prepare(3, {1.0, -1.0, i, -i, 0.5, 0.0, 0.25 * i, 2.0});
}

TEST_CASE("the printed preparation recursion trips the coin lock") {
    LoadOptions opts;
    opts.overrides["nn"] = iv(3);
    CHECK(run_error(load_asset("qsp_verbatim.qrp", opts), "QSP", {iv(1), iv(3)}) ==
          ErrKind::CoinViolation);

    // From k = 0 it terminates early instead: one rotation, nothing onward.
    ProgramEnv env = load_asset("qsp_verbatim.qrp", opts);
    Interpreter in(env);
    RunResult out = in.run(env.store, initial_state(env.wires));
    CHECK(out.state.amps.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("memory fetch permutes slots as the label recursion predicts") {
    for (std::int64_t n : {1, 2}) {
        ProgramEnv env = load_sized("qraqm.qrp", n);
        Layout layout = full_layout(env.wires);
        std::int64_t cells = std::int64_t{1} << n;
        for (std::int64_t j = 0; j < cells; ++j) {
            SlotPermutation expect = qraqm_expected(n, j);
            if (n == 1) CHECK(expect.matches_literal);
            for (std::int64_t s = 0; s < cells; ++s) {
                std::vector<std::int64_t> digits(layout.size(), 0);
                for (std::int64_t b = 0; b < n; ++b)
                    digits[b] = (j >> (n - 1 - b)) & 1;
                digits[n + s] = 1;
                Interpreter in(env);
                RunResult out = in.run(
                    env.store, basis_state(layout, index_of_digits(layout, digits)));
                std::vector<std::int64_t> want(layout.size(), 0);
                for (std::int64_t b = 0; b < n; ++b)
                    want[b] = (j >> (n - 1 - b)) & 1;
                for (std::int64_t p = 0; p < cells; ++p)
                    if (expect.source[p] == s) want[n + p] = 1;
                CVec target = CVec::Zero(layout.dim);
                target(index_of_digits(layout, want)) = 1.0;
                CHECK(max_abs_diff(out.state.amps, target) < 1e-12);
            }
        }
    }
}

TEST_CASE("the subtraction loop computes the gcd") {
    auto gcd_run = [](std::int64_t x, std::int64_t y) {
        LoadOptions opts;
        opts.overrides["x"] = iv(x);
        opts.overrides["y"] = iv(y);
        ProgramEnv env = load_asset("euclid.qrp", opts);
        Interpreter in(env);
        RunResult out = in.run(env.store, initial_state(env.wires));
        return out.store.find(StoreKey{"x", {}})->as_int();
    };
    CHECK(gcd_run(252, 105) == 21);
    CHECK(gcd_run(35, 49) == 7);
    CHECK(gcd_run(1, 977) == 1);
    CHECK(gcd_run(64, 64) == 64);
}

TEST_CASE("the demo programs fail with their advertised error kinds") {
    CHECK(run_error(load_asset("divergence_demo.qrp")) == ErrKind::ClassicalDivergence);
    CHECK(run_error(load_asset("coin_clash_demo.qrp")) == ErrKind::CoinViolation);
}
