#pragma once

#include "qrpl/interp.hpp"

namespace qrpl {

CMat kron(const CMat& a, const CMat& b);

// Denotational matrix of a program: column k is the final state of a run
// started in basis state k. Every column must leave the same classical store,
// and the assembled matrix must come out unitary.
CMat matrix_of(const ProgramEnv& env, const std::string& entry_proc,
               const std::vector<ClassicalValue>& args, RunLimits limits = {});

// sum_i |ket_i><ket_i| (x) block_i, coin most significant.
CMat multiplexor_matrix(const std::vector<CVec>& kets, const std::vector<CMat>& blocks);

// Discrete Fourier transform on n qubits: entry (k, j) = e^{2 pi i jk/2^n}/sqrt(2^n).
CMat dft_matrix(std::int64_t n);

// Identity on 2^(n+1) dimensions except the last 2x2 block, which is u.
CMat controlled_u_matrix(std::int64_t n_controls, const CMat& u);

// The state preparation target (1/sqrt(a)) sum_j sqrt(a_j)|j>, principal
// square roots: amplitude j is e^{i theta_j/2} sqrt(|a_j|/a), a = sum |a_j|.
CVec qsp_target(const std::vector<cxd>& a);

// Rotation parameters of the preparation tree at level k, branch x.
// Degenerate subtrees (zero total weight) give (1, 0).
std::pair<double, double> qsp_angles(const std::vector<cxd>& a, std::int64_t k,
                                     std::int64_t x);

// Ground truth for the memory example: classical unfolding of the recursion
// on slot labels. source[s] is the original slot whose datum ends in slot s.
struct SlotPermutation {
    std::vector<std::int64_t> source;
    bool matches_literal = false;  // (D[j], D[0:j-1], D[j+1:N]) exactly
};
SlotPermutation qraqm_expected(std::int64_t n, std::int64_t j);

struct CompareReport {
    double max_diff = 0.0;
    bool pass = false;
    std::int64_t worst_row = 0, worst_col = 0;
};
CompareReport compare(const CMat& a, const CMat& b, double eps, bool up_to_phase);

}  // namespace qrpl
