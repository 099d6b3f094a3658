#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <string>

#include "qrpl/interp.hpp"
#include "qrpl/parser.hpp"

using namespace qrpl;

namespace {

ClassicalStore run_store(const std::string& src, LoadOptions opts = {},
                         RunLimits limits = {}) {
    ProgramEnv env = load_program(parse(src), opts);
    Interpreter in(env, limits);
    return in.run(env.store, initial_state(env.wires)).store;
}

ClassicalValue val(const ClassicalStore& store, const std::string& name,
                   std::vector<std::int64_t> idx = {}) {
    const ClassicalValue* v = store.find(StoreKey{name, std::move(idx)});
    REQUIRE(v != nullptr);
    return *v;
}

ErrKind fails_with(const std::string& src, LoadOptions opts = {},
                   RunLimits limits = {}) {
    try {
        run_store(src, opts, limits);
        FAIL("program ran to completion");
    } catch (const RunError& e) {
        return e.kind();
    }
    return ErrKind::BadInput;
}

}  // namespace

TEST_CASE("integer and real operators") {
    ClassicalStore s = run_store(
        "var a : int := 7 div 2;\n"
        "var b : int := -7 div 2;\n"
        "var c : int := -7 mod 2;\n"
        "var d : int := 7 mod -2;\n"
        "var e2 : int := 2 ^ 10;\n"
        "var f : int := -2 ^ 2;\n"
        "var g : real := 3 / 2;\n"
        "var h : real := 2.0 ^ -1;\n"
        "var k : real := 1 + 0.5;\n"
        "var t : real := pi / pi;\n"
        "main { skip }\n");
    CHECK(val(s, "a") == ClassicalValue(std::int64_t{3}));
    CHECK(val(s, "b") == ClassicalValue(std::int64_t{-4}));
    CHECK(val(s, "c") == ClassicalValue(std::int64_t{1}));
    CHECK(val(s, "d") == ClassicalValue(std::int64_t{-1}));
    CHECK(val(s, "e2") == ClassicalValue(std::int64_t{1024}));
    CHECK(val(s, "f") == ClassicalValue(std::int64_t{-4}));
    CHECK(val(s, "g") == ClassicalValue(1.5));
    CHECK(val(s, "h") == ClassicalValue(0.5));
    CHECK(val(s, "k") == ClassicalValue(1.5));
    CHECK(val(s, "t") == ClassicalValue(1.0));
}

TEST_CASE("comparisons and boolean connectives") {
    ClassicalStore s = run_store(
        "var a : bool := 1 < 1.5;\n"
        "var b : bool := not (true and false) or false;\n"
        "var c : bool := 2 = 2.0;\n"
        "var d : bool := true != false;\n"
        "main { skip }\n");
    CHECK(val(s, "a") == ClassicalValue(true));
    CHECK(val(s, "b") == ClassicalValue(true));
    CHECK(val(s, "c") == ClassicalValue(true));
    CHECK(val(s, "d") == ClassicalValue(true));

    // and/or do not evaluate their right side when the left decides.
    ClassicalStore sc = run_store(
        "var x : int := 0;\n"
        "var a : bool := false;\n"
        "main { a := x != 0 and 1 div x > 0; a := x = 0 or 1 div x > 0 }\n");
    CHECK(val(sc, "a") == ClassicalValue(true));
}

TEST_CASE("arithmetic faults carry their kinds") {
    CHECK(fails_with("var x : int := 0;\nmain { x := 9223372036854775807 + 1 }\n") ==
          ErrKind::Overflow);
    CHECK(fails_with("var x : int := 0;\nmain { x := 2 ^ 64 }\n") == ErrKind::Overflow);
    CHECK(fails_with("var x : int := 0;\nmain { x := 1 div 0 }\n") ==
          ErrKind::DivisionByZero);
    CHECK(fails_with("var x : real := 0.0;\nmain { x := 1.0 / 0.0 }\n") ==
          ErrKind::DivisionByZero);
    CHECK(fails_with("var x : int := 0;\nmain { x := 1 div 1.5 }\n") ==
          ErrKind::TypeError);
    CHECK(fails_with("var x : int := 0;\nmain { x := true + 1 }\n") ==
          ErrKind::TypeError);
    CHECK(fails_with("var x : int := 0;\nmain { x := y }\n") == ErrKind::Unbound);
}

TEST_CASE("declared kinds are enforced, ints promote into real slots") {
    ClassicalStore s = run_store("var r : real := 3;\nmain { r := r + 1 }\n");
    CHECK(val(s, "r").is_real());
    CHECK(val(s, "r").as_real() == 4.0);

    CHECK(fails_with("var x : int := 0;\nmain { x := 1.5 }\n") == ErrKind::TypeError);
    CHECK(fails_with("var b : bool := 1;\nmain { skip }\n") == ErrKind::TypeError);
    CHECK(fails_with("var b : bool := true;\nmain { b := 0 }\n") == ErrKind::TypeError);
}

TEST_CASE("simultaneous assignment reads before it writes") {
    ClassicalStore s = run_store(
        "var x : int := 1;\nvar y : int := 1;\n"
        "var i : int := 0;\n"
        "main { while i < 10 do (x, y) := (y, x + y); i := i + 1 od }\n");
    CHECK(val(s, "x").as_int() == 89);
    CHECK(val(s, "y").as_int() == 144);

    CHECK(fails_with("var x : int := 0;\nmain { (x, x) := (1, 2) }\n") ==
          ErrKind::DuplicateTarget);
}

TEST_CASE("arrays: init lists, cell writes, bounds") {
    ClassicalStore s = run_store(
        "var a[1:3] : int := [10, 20, 30];\n"
        "var i : int := 2;\n"
        "main { a[i] := a[i] + a[1] }\n");
    CHECK(val(s, "a", {1}).as_int() == 10);
    CHECK(val(s, "a", {2}).as_int() == 30);
    CHECK(val(s, "a", {3}).as_int() == 30);

    CHECK(fails_with("var a[1:3] : int;\nvar x : int := 0;\nmain { x := a[0] }\n") ==
          ErrKind::OutOfRange);
    CHECK(fails_with("var a[1:3] : int;\nmain { a[4] := 1 }\n") == ErrKind::OutOfRange);
    CHECK(fails_with("var a[1:3] : int := [1, 2];\nmain { skip }\n") ==
          ErrKind::BadInput);
    CHECK(fails_with("var a[1:3] : int;\nvar x : int := 0;\nmain { x := a }\n") ==
          ErrKind::TypeError);
}

TEST_CASE("blocks bind simultaneously and restore absence") {
    ClassicalStore s = run_store(
        "var g : int := 1;\n"
        "var seen_h : int := 0;\n"
        "var seen_g : int := 0;\n"
        "main {\n"
        "  begin local g := 5, h := g + 1;\n"
        "    seen_g := g; seen_h := h\n"
        "  end\n"
        "}\n");
    CHECK(val(s, "seen_g").as_int() == 5);
    CHECK(val(s, "seen_h").as_int() == 2);  // init saw the outer g
    CHECK(val(s, "g").as_int() == 1);
    CHECK(s.find(StoreKey{"h", {}}) == nullptr);
}

TEST_CASE("control flow and the loop fuel limit") {
    ClassicalStore s = run_store(
        "var n : int := 100;\nvar sum : int := 0;\nvar i : int := 1;\n"
        "main { while i <= n do sum := sum + i; i := i + 1 od;\n"
        "       if sum = 5050 then sum := -sum else sum := 0 fi }\n");
    CHECK(val(s, "sum").as_int() == -5050);

    RunLimits tight;
    tight.loop_fuel = 50;
    CHECK(fails_with("main { while true do skip od }\n", {}, tight) ==
          ErrKind::FuelExhausted);
}

TEST_CASE("scalar overrides rebind before later declarations evaluate") {
    LoadOptions opts;
    opts.overrides["n"] = ClassicalValue(std::int64_t{5});
    ClassicalStore s = run_store(
        "var n : int := 2;\nvar sq : int := n * n;\nmain { skip }\n", opts);
    CHECK(val(s, "sq").as_int() == 25);

    LoadOptions typo;
    typo.overrides["m"] = ClassicalValue(std::int64_t{1});
    CHECK(fails_with("var n : int := 2;\nmain { skip }\n", typo) == ErrKind::BadInput);

    LoadOptions arr;
    arr.overrides["a"] = ClassicalValue(std::int64_t{1});
    CHECK(fails_with("var a[0:2] : int;\nmain { skip }\n", arr) == ErrKind::BadInput);
}

TEST_CASE("procedures see and mutate globals, parameters restore on return") {
    ClassicalStore s = run_store(
        "var acc : int := 0;\nvar k : int := 7;\n"
        "proc Add(k) { acc := acc + k }\n"
        "main { Add(5); Add(k) }\n");
    CHECK(val(s, "acc").as_int() == 12);
    CHECK(val(s, "k").as_int() == 7);

    // Recursion bottoms out against the depth limit, not the stack.
    RunLimits shallow;
    shallow.recursion_depth = 32;
    CHECK(fails_with("proc Loop() { Loop() }\nmain { Loop() }\n", {}, shallow) ==
          ErrKind::RecursionLimit);
}
