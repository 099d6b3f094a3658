#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "qrpl/check.hpp"
#include "qrpl/parser.hpp"
#include "qrpl/pretty.hpp"
#include "qrpl/stdlib.hpp"

using namespace qrpl;

namespace {

Program parse_ok(const std::string& src) {
    Program p;
    REQUIRE_NOTHROW(p = parse(src));
    return p;
}

SourcePos parse_pos(const std::string& src) {
    try {
        parse(src);
    } catch (const SyntaxError& e) {
        return e.pos();
    }
    FAIL("expected a syntax error");
    return {};
}

std::vector<std::string> check_codes(const std::string& src) {
    std::vector<std::string> codes;
    for (const Diagnostic& d : static_check(parse(src))) codes.push_back(d.code);
    return codes;
}

bool has_code(const std::vector<std::string>& codes, const std::string& want) {
    return std::find(codes.begin(), codes.end(), want) != codes.end();
}

const std::string kPrologue = "qubit q[1:2];\n";

}  // namespace

TEST_CASE("pretty printing round-trips every shipped program") {
    std::string dir = std::string(QRPL_SOURCE_DIR) + "/stdlib";
    std::vector<StdlibEntry> entries = load_stdlib(dir);
    REQUIRE(!entries.empty());
    for (const StdlibEntry& e : entries) {
        CAPTURE(e.file);
        Program once = parse(read_text_file(dir + "/" + e.file));
        Program twice = parse(pretty(once));
        CHECK(equals(once, twice));
    }
}

TEST_CASE("operator precedence and associativity") {
    auto same = [](const std::string& a, const std::string& b) {
        return equals(parse_ok("main { x := " + a + " }"),
                      parse_ok("main { x := " + b + " }"));
    };
    CHECK(same("-2 ^ 2", "-(2 ^ 2)"));
    CHECK_FALSE(same("-2 ^ 2", "(-2) ^ 2"));
    CHECK(same("2 ^ 3 ^ 2", "2 ^ (3 ^ 2)"));
    CHECK(same("a - b div c", "a - (b div c)"));
    CHECK(same("a mod b * c", "(a mod b) * c"));
    CHECK(same("a + b < c and d", "((a + b) < c) and d"));
    CHECK(same("not a or b", "(not a) or b"));
    CHECK_FALSE(same("a - b - c", "a - (b - c)"));
}

TEST_CASE("ket literals lex into their four shapes") {
    Program p = parse_ok(kPrologue +
                         "main {\n"
                         "  qif[q[1]]\n"
                         "    case |0> -> skip\n"
                         "    case |1> -> skip\n"
                         "  fiq;\n"
                         "  qif[q[1]]\n"
                         "    case |+> -> skip\n"
                         "    case |-> -> skip\n"
                         "  fiq;\n"
                         "  qif[q[1]]\n"
                         "    case |(0.6, 0.8i)> -> skip\n"
                         "    case |(-0.8, 0.6i)> -> skip\n"
                         "  fiq\n"
                         "}\n");
    CHECK(static_check(p).empty());

    // A bound label is only meaningful under forall.
    SourcePos pos = parse_pos(kPrologue + "main { qif[q[1]] case |x> -> skip fiq }");
    CHECK(pos.line == 2);
}

TEST_CASE("vector ket entries accept complex sums") {
    Program p = parse_ok(kPrologue +
                         "main { qif[q[1]] case |(0.6+0.8i, 0)> -> skip "
                         "case |(0.8-0.6i, 0)> -> skip fiq }");
    const auto* main_qif = std::get_if<QifStmt>(&p.main->node);
    REQUIRE(main_qif != nullptr);
    const Ket& k = main_qif->branches[0].ket;
    REQUIRE(k.kind == Ket::Kind::Vector);
    CHECK(k.amplitudes[0] == cxd(0.6, 0.8));
    CHECK(k.amplitudes[1] == cxd(0.0, 0.0));
}

TEST_CASE("syntax errors carry positions") {
    CHECK(parse_pos("main { qif[q[1]] case |0> -> skip }").line == 1);  // missing fiq
    CHECK(parse_pos("main { x := }").line == 1);
    CHECK(parse_pos("qubit q[1:2];\nmain { }\n").line == 2);  // empty body
    CHECK(parse_pos("main { skip }\nmain { skip }").line == 2);
    CHECK(parse_pos("gate G := [1, 0];\n").line == 1);
}

TEST_CASE("entry specs parse as a call template") {
    EntryCall c = parse_entry("QFT(1, n)");
    CHECK(c.proc == "QFT");
    CHECK(c.args.size() == 2);
    EntryCall bare = parse_entry("Run");
    CHECK(bare.proc == "Run");
    CHECK(bare.args.empty());
    CHECK_THROWS_AS(parse_entry("QFT(1,"), SyntaxError);
}

TEST_CASE("static checks flag unknown names and arity faults") {
    CHECK(has_code(check_codes("main { X[r[1]] }"), "unknown-wire"));
    CHECK(has_code(check_codes(kPrologue + "main { Bogus[q[1]] }"), "unknown-gate"));
    CHECK(has_code(check_codes(kPrologue + "main { H(3)[q[1]] }"), "arity"));
    CHECK(has_code(check_codes(kPrologue + "main { Rl[q[1]] }"), "arity"));
    CHECK(has_code(check_codes(kPrologue + "main { P(1) }"), "unknown-proc"));
    CHECK(has_code(check_codes(kPrologue + "proc P(a) { skip }\nmain { P(1, 2) }"),
                   "arity"));
    CHECK(has_code(check_codes("var v : int := 1;\nmain { v[2] := 0 }"), "subscript"));
    CHECK(has_code(check_codes("var v[0:3] : int;\nmain { x := v }"), "subscript"));
}

TEST_CASE("static checks on declarations") {
    CHECK(has_code(check_codes("qubit q[1:2];\nqubit q[1:3];\nmain { skip }"),
                   "dup-name"));
    CHECK(has_code(check_codes("gate H := [[1, 0], [0, 1]];\nmain { skip }"),
                   "dup-name"));
    CHECK(has_code(check_codes("gate G := [[1, 0, 0], [0, 1, 0]];\nmain { skip }"),
                   "dimension"));
    CHECK(has_code(check_codes("gate G := [[1, 1], [0, 1]];\nmain { skip }"),
                   "non-unitary"));
    CHECK(has_code(check_codes("qudit(1) r[0:1];\nmain { skip }"), "dimension"));
    CHECK(check_codes("qudit(3) r[0:1];\nmain { I[r[0]] }").empty());
}

TEST_CASE("static checks on case statements") {
    // Branch count must match the coin dimension when it is known statically.
    CHECK(has_code(check_codes(kPrologue +
                               "main { qif[q[1]] case |0> -> skip fiq }"),
                   "branch-count"));
    CHECK(has_code(check_codes(kPrologue +
                               "main { qif[q[1]] case |00> -> skip "
                               "case |01> -> skip fiq }"),
                   "ket-shape"));
    CHECK(has_code(check_codes(kPrologue +
                               "main { qif[q[1]] case |0> -> skip "
                               "case |(0.6, 0.8i)> -> skip fiq }"),
                   "orthonormal"));
    CHECK(has_code(check_codes(kPrologue +
                               "main { qif[q[1:2]] case |00> -> skip "
                               "case |01> -> skip case |10> -> skip "
                               "case |11> -> skip fiq }"),
                   "coin-range"));
    CHECK(has_code(check_codes(kPrologue +
                               "main { qif[q[1], q[2]] forall x { |x> -> skip } }"),
                   "coin-range"));
    CHECK(has_code(check_codes(kPrologue +
                               "main { qif[q[1:1]] forall x { |x> -> x := 2 } }"),
                   "binder-assign"));
    CHECK(check_codes(kPrologue +
                      "main { qif[q[1:2]] forall x { |x> -> skip } }")
              .empty());
}

TEST_CASE("diagnostics come out sorted and formatted") {
    std::vector<Diagnostic> ds =
        static_check(parse("main {\n  Bogus[w[1]];\n  P(1)\n}\n"));
    REQUIRE(ds.size() >= 2);
    for (std::size_t i = 1; i < ds.size(); ++i) {
        CHECK(ds[i - 1].pos.line <= ds[i].pos.line);
    }
    std::string report = format_diagnostics(ds, "demo.qrp");
    CHECK(report.find("demo.qrp:2:") != std::string::npos);
    CHECK(report.find("error:") != std::string::npos);
}
