#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qrpl/gates.hpp"
#include "qrpl/load.hpp"
#include "qrpl/oracle.hpp"
#include "qrpl/parser.hpp"

using namespace qrpl;

namespace {

constexpr double kPi = 3.14159265358979323846;
const cxd kI(0.0, 1.0);

double mat_diff(const CMat& a, const CMat& b) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    return (a - b).cwiseAbs().maxCoeff();
}

CMat random_unitary(std::mt19937& rng, std::int64_t dim) {
    std::normal_distribution<double> g;
    CMat m(dim, dim);
    for (std::int64_t r = 0; r < dim; ++r)
        for (std::int64_t c = 0; c < dim; ++c) m(r, c) = cxd(g(rng), g(rng));
    return Eigen::HouseholderQR<CMat>(m).householderQ();
}

std::vector<CVec> random_basis(std::mt19937& rng, std::int64_t dim) {
    CMat u = random_unitary(rng, dim);
    std::vector<CVec> kets;
    for (std::int64_t c = 0; c < dim; ++c) kets.push_back(u.col(c));
    return kets;
}

// Phase-blind vector comparison, aligned on the largest reference amplitude.
bool close_up_to_phase(const CVec& a, const CVec& b, double eps) {
    REQUIRE(a.size() == b.size());
    Eigen::Index at = 0;
    b.cwiseAbs().maxCoeff(&at);
    cxd phase = a(at) * std::conj(b(at));
    if (std::abs(phase) < 1e-15) return false;
    phase /= std::abs(phase);
    return (a - phase * b).cwiseAbs().maxCoeff() < eps;
}

ProgramEnv env_of(const std::string& src) { return load_program(parse(src)); }

}  // namespace

TEST_CASE("kron places blocks by the left factor's entries") {
    CMat x = builtin_gate("X", {});
    CMat id = CMat::Identity(2, 2);

    CMat xi = kron(x, id);
    REQUIRE(xi.rows() == 4);
    CMat want = CMat::Zero(4, 4);
    want(0, 2) = want(1, 3) = want(2, 0) = want(3, 1) = 1.0;
    CHECK(mat_diff(xi, want) == 0.0);

    std::mt19937 rng(77);
    CMat a = random_unitary(rng, 2), b = random_unitary(rng, 3);
    CMat c = random_unitary(rng, 2), d = random_unitary(rng, 3);
    CHECK(mat_diff(kron(a, b) * kron(c, d), kron(CMat(a * c), CMat(b * d))) < 1e-12);
}

TEST_CASE("transform matrix entries and unitarity") {
    CHECK(mat_diff(dft_matrix(1), builtin_gate("H", {})) < 1e-15);

    CMat f2 = dft_matrix(2);
    CVec col1(4);
    col1 << 0.5, 0.5 * kI, -0.5, -0.5 * kI;
    CHECK((f2.col(1) - col1).cwiseAbs().maxCoeff() < 1e-15);

    CMat f3 = dft_matrix(3);
    double uniform = 1.0 / std::sqrt(8.0);
    for (int r = 0; r < 8; ++r) CHECK(std::abs(f3(r, 0) - uniform) < 1e-15);

    for (std::int64_t n = 1; n <= 6; ++n) {
        CMat f = dft_matrix(n);
        CHECK(mat_diff(CMat(f.adjoint() * f), CMat::Identity(f.rows(), f.cols())) < 1e-10);
    }
}

TEST_CASE("transform size is capped") {
    for (std::int64_t n : {std::int64_t(0), std::int64_t(-2), std::int64_t(13)}) {
        try {
            dft_matrix(n);
            FAIL("size ", n, " accepted");
        } catch (const RunError& e) {
            CHECK(e.kind() == ErrKind::SizeCap);
        }
    }
}

TEST_CASE("multiplexor in the computational basis is block diagonal") {
    CVec zero(2), one(2);
    zero << 1, 0;
    one << 0, 1;

    CMat x = builtin_gate("X", {});
    CMat cnot = multiplexor_matrix({zero, one}, {CMat::Identity(2, 2), x});
    CHECK(mat_diff(cnot, controlled_u_matrix(1, x)) == 0.0);

    std::mt19937 rng(101);
    CMat a = random_unitary(rng, 4), b = random_unitary(rng, 4);
    CMat m = multiplexor_matrix({zero, one}, {a, b});
    CHECK(mat_diff(CMat(m.block(0, 0, 4, 4)), a) == 0.0);
    CHECK(mat_diff(CMat(m.block(4, 4, 4, 4)), b) == 0.0);
    // Off-diagonal blocks are exactly zero, not merely small.
    CHECK(m.block(0, 4, 4, 4).cwiseAbs().maxCoeff() == 0.0);
    CHECK(m.block(4, 0, 4, 4).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("multiplexor in the sign basis swaps control roles") {
    double s = 1.0 / std::sqrt(2.0);
    CVec plus(2), minus(2);
    plus << s, s;
    minus << s, -s;

    CMat m = multiplexor_matrix({plus, minus},
                                {CMat::Identity(2, 2), builtin_gate("Z", {})});
    CMat want = CMat::Zero(4, 4);
    want(0, 0) = want(1, 3) = want(2, 2) = want(3, 1) = 1.0;
    CHECK(mat_diff(m, want) < 1e-12);
}

TEST_CASE("multiplexor with identity blocks resolves any orthonormal basis") {
    std::mt19937 rng(202);
    for (std::int64_t dim : {2, 3, 4}) {
        std::vector<CVec> kets = random_basis(rng, dim);
        std::vector<CMat> blocks(dim, CMat::Identity(3, 3));
        CMat m = multiplexor_matrix(kets, blocks);
        CHECK(mat_diff(m, CMat::Identity(3 * dim, 3 * dim)) < 1e-12);
    }
}

TEST_CASE("multiplexor rejects mismatched inputs") {
    CVec zero(2), one(2);
    zero << 1, 0;
    one << 0, 1;
    CMat id2 = CMat::Identity(2, 2);

    try {
        multiplexor_matrix({zero, one}, {id2});
        FAIL("block count mismatch accepted");
    } catch (const RunError& e) {
        CHECK(e.kind() == ErrKind::DimensionMismatch);
    }
    try {
        multiplexor_matrix({zero, one}, {id2, CMat::Identity(3, 3)});
        FAIL("ragged blocks accepted");
    } catch (const RunError& e) {
        CHECK(e.kind() == ErrKind::DimensionMismatch);
    }
    CVec three(3);
    three << 1, 0, 0;
    try {
        multiplexor_matrix({zero, three}, {id2, id2});
        FAIL("ragged kets accepted");
    } catch (const RunError& e) {
        CHECK(e.kind() == ErrKind::DimensionMismatch);
    }
}

TEST_CASE("controlled gate fills only the final block") {
    CMat x = builtin_gate("X", {});

    CMat cnot = controlled_u_matrix(1, x);
    CMat want = CMat::Identity(4, 4);
    want(2, 2) = want(3, 3) = 0.0;
    want(2, 3) = want(3, 2) = 1.0;
    CHECK(mat_diff(cnot, want) == 0.0);

    CMat toffoli = controlled_u_matrix(2, x);
    CHECK(mat_diff(CMat(toffoli.block(0, 0, 6, 6)), CMat::Identity(6, 6)) == 0.0);
    CHECK(mat_diff(CMat(toffoli.block(6, 6, 2, 2)), x) == 0.0);

    // The angle pi/2 specializes the phased flip to a plain flip.
    CMat half_turn = builtin_gate("Deutsch", {ClassicalValue(kPi / 2.0)});
    CHECK(mat_diff(controlled_u_matrix(2, half_turn), toffoli) < 1e-12);
}

TEST_CASE("controlled gate rejects bad targets") {
    try {
        controlled_u_matrix(1, CMat::Identity(3, 3));
        FAIL("3x3 target accepted");
    } catch (const RunError& e) {
        CHECK(e.kind() == ErrKind::DimensionMismatch);
    }
    CMat shrink = CMat::Identity(2, 2) * 0.5;
    try {
        controlled_u_matrix(1, shrink);
        FAIL("non-unitary target accepted");
    } catch (const RunError& e) {
        CHECK(e.kind() == ErrKind::NonUnitary);
    }
}

TEST_CASE("preparation target uses moduli and half the phase") {
    CVec uniform = qsp_target({1, 1, 1, 1});
    for (int j = 0; j < 4; ++j) CHECK(std::abs(uniform(j) - 0.5) < 1e-15);

    CVec left = qsp_target({1, 0});
    CHECK(std::abs(left(0) - 1.0) < 1e-15);
    CHECK(std::abs(left(1)) == 0.0);

    CVec right = qsp_target({cxd(0, 0), cxd(-1, 0)});
    CHECK(std::abs(right(0)) == 0.0);
    CHECK(std::abs(right(1) - kI) < 1e-15);  // arg(-1) = pi, halved

    cxd a0(0.6, 0.8);
    CVec phased = qsp_target({a0, 1.0});
    double theta = std::arg(a0);
    CHECK(std::abs(phased(0) - std::polar(std::sqrt(0.5), theta / 2.0)) < 1e-15);
    CHECK(std::abs(phased(1) - std::sqrt(0.5)) < 1e-15);

    try {
        qsp_target({0, 0, 0, 0});
        FAIL("zero vector accepted");
    } catch (const RunError& e) {
        CHECK(e.kind() == ErrKind::ZeroVector);
    }

    std::mt19937 rng(303);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<cxd> a(8);
        for (auto& c : a) c = cxd(g(rng), g(rng));
        CHECK(std::abs(qsp_target(a).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("preparation angles match hand-computed splits") {
    auto [g0, b0] = qsp_angles({1, 1, 1, 1}, 0, 0);
    CHECK(g0 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(b0 == 0.0);

    auto [g1, b1] = qsp_angles({1, 0, 0, 0}, 0, 0);
    CHECK(g1 == 1.0);
    CHECK(b1 == 0.0);

    // Zero total weight in the subtree falls back to the identity rotation.
    auto [g2, b2] = qsp_angles({0, 0, 1, 0}, 1, 0);
    CHECK(g2 == 1.0);
    CHECK(b2 == 0.0);

    // Right subtree of (0, 0, i, 0): all weight left of the midpoint, and the
    // midpoint carries no weight so its angle reads as zero.
    auto [g3, b3] = qsp_angles({cxd(0, 0), cxd(0, 0), kI, cxd(0, 0)}, 1, 1);
    CHECK(g3 == 1.0);
    CHECK(b3 == doctest::Approx(-kPi / 2.0).epsilon(1e-15));
}

TEST_CASE("angle products rebuild the target state up to a global phase") {
    std::mt19937 rng(404);
    std::normal_distribution<double> g;
    auto check_vector = [&](const std::vector<cxd>& a) {
        std::int64_t n = 0;
        while ((1LL << n) < static_cast<std::int64_t>(a.size())) ++n;
        std::int64_t dim = 1LL << n;
        CVec built(dim);
        for (std::int64_t j = 0; j < dim; ++j) {
            cxd amp = 1.0;
            for (std::int64_t k = 0; k < n; ++k) {
                auto [gamma, beta] = qsp_angles(a, k, j >> (n - k));
                bool bit = (j >> (n - k - 1)) & 1;
                amp *= bit ? std::polar(std::sqrt(1.0 - gamma), beta / 2.0)
                           : cxd(std::sqrt(gamma), 0.0);
            }
            built(j) = amp;
        }
        CHECK(close_up_to_phase(built, qsp_target(a), 1e-12));
    };

    check_vector({1, 1, 1, 1});
    check_vector({cxd(0, 0), cxd(0.6, 0.8), cxd(0, 0), cxd(0, -2)});
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<cxd> a(8);
        for (auto& c : a) c = cxd(g(rng), g(rng));
        check_vector(a);
    }
}

TEST_CASE("memory unfolding traces agree with hand runs") {
    SlotPermutation p10 = qraqm_expected(1, 0);
    CHECK(p10.source == std::vector<std::int64_t>{0, 1});
    CHECK(p10.matches_literal);

    SlotPermutation p11 = qraqm_expected(1, 1);
    CHECK(p11.source == std::vector<std::int64_t>{1, 0});
    CHECK(p11.matches_literal);

    CHECK(qraqm_expected(2, 0).source == std::vector<std::int64_t>{0, 1, 2, 3});
    CHECK(qraqm_expected(2, 1).source == std::vector<std::int64_t>{1, 0, 2, 3});

    // Cell 2 lands up front but the displaced cells settle in swapped order.
    SlotPermutation p22 = qraqm_expected(2, 2);
    CHECK(p22.source == std::vector<std::int64_t>{2, 1, 0, 3});
    CHECK_FALSE(p22.matches_literal);

    SlotPermutation p23 = qraqm_expected(2, 3);
    CHECK(p23.source == std::vector<std::int64_t>{3, 1, 0, 2});
    CHECK_FALSE(p23.matches_literal);
}

TEST_CASE("memory unfolding always parks the addressed cell first") {
    for (std::int64_t n = 1; n <= 4; ++n) {
        std::int64_t count = 1LL << n;
        for (std::int64_t j = 0; j < count; ++j) {
            SlotPermutation p = qraqm_expected(n, j);
            REQUIRE(static_cast<std::int64_t>(p.source.size()) == count);
            CHECK(p.source[0] == j);
            std::vector<std::int64_t> sorted = p.source;
            std::sort(sorted.begin(), sorted.end());
            for (std::int64_t s = 0; s < count; ++s) CHECK(sorted[s] == s);
        }
    }
}

TEST_CASE("comparison reports the worst entry and tolerates a phase") {
    std::mt19937 rng(505);
    CMat a = random_unitary(rng, 4);

    CompareReport same = compare(a, a, 1e-12, false);
    CHECK(same.pass);
    CHECK(same.max_diff == 0.0);

    CMat rotated = std::polar(1.0, 0.7) * a;
    CHECK_FALSE(compare(a, rotated, 1e-9, false).pass);
    CHECK(compare(a, rotated, 1e-9, true).pass);

    CMat bent = a;
    bent(2, 1) += cxd(3e-4, 0);
    CompareReport r = compare(a, bent, 1e-9, false);
    CHECK_FALSE(r.pass);
    CHECK(r.worst_row == 2);
    CHECK(r.worst_col == 1);
    CHECK(r.max_diff == doctest::Approx(3e-4).epsilon(1e-9));

    try {
        compare(a, CMat::Identity(2, 2), 1e-9, false);
        FAIL("dimension mismatch accepted");
    } catch (const RunError& e) {
        CHECK(e.kind() == ErrKind::DimensionMismatch);
    }
}

TEST_CASE("program matrices come from column-by-column runs") {
    CHECK(mat_diff(matrix_of(env_of("qubit q[1:2]; main { skip }"), "", {}),
                   CMat::Identity(4, 4)) == 0.0);

    CHECK(mat_diff(matrix_of(env_of("qubit q[1:1]; main { H[q[1]] }"), "", {}),
                   builtin_gate("H", {})) < 1e-15);

    ProgramEnv rot = env_of(
        "qubit q[1:1];\n"
        "proc Rot(t) { Deutsch(t)[q[1]] }\n"
        "main { skip }\n");
    CHECK(mat_diff(matrix_of(rot, "Rot", {ClassicalValue(kPi / 2.0)}),
                   builtin_gate("X", {})) < 1e-12);

    ProgramEnv bad = env_of("qubit q[1:1]; var x : int := 0; main { x := 1 div x }");
    try {
        matrix_of(bad, "", {});
        FAIL("division by zero not propagated");
    } catch (const RunError& e) {
        CHECK(e.kind() == ErrKind::DivisionByZero);
    }
}
