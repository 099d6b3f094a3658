#include "qrpl/oracle.hpp"

#include <cmath>

namespace qrpl {

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMat matrix_of(const ProgramEnv& env, const std::string& entry_proc,
               const std::vector<ClassicalValue>& args, RunLimits limits) {
    Layout layout = full_layout(env.wires);
    std::int64_t dim = layout.dim;
    CMat m(dim, dim);
    ClassicalStore first_store;
    for (std::int64_t col = 0; col < dim; ++col) {
        Interpreter interp(env, limits);
        StateVector in = basis_state(layout, col);
        RunResult out = entry_proc.empty()
                            ? interp.run(env.store, std::move(in))
                            : interp.run_call(entry_proc, args, env.store, std::move(in));
        if (col == 0)
            first_store = std::move(out.store);
        else if (out.store != first_store)
            throw RunError(ErrKind::ClassicalStoreMismatch,
                           "final classical store depends on the quantum input");
        m.col(col) = out.state.amps;
    }
    CMat gram = m.adjoint() * m;
    gram -= CMat::Identity(dim, dim);
    if (gram.cwiseAbs().maxCoeff() > kEpsUnitary)
        throw RunError(ErrKind::NonUnitaryResult, "extracted matrix is not unitary");
    return m;
}

CMat multiplexor_matrix(const std::vector<CVec>& kets, const std::vector<CMat>& blocks) {
    if (kets.empty() || kets.size() != blocks.size())
        throw RunError(ErrKind::DimensionMismatch, "one block per coin ket required");
    Eigen::Index coin_dim = kets[0].size();
    Eigen::Index block_dim = blocks[0].rows();
    for (const CVec& k : kets)
        if (k.size() != coin_dim)
            throw RunError(ErrKind::DimensionMismatch, "coin kets differ in dimension");
    for (const CMat& b : blocks)
        if (b.rows() != block_dim || b.cols() != block_dim)
            throw RunError(ErrKind::DimensionMismatch, "blocks differ in dimension");
    CMat out = CMat::Zero(coin_dim * block_dim, coin_dim * block_dim);
    for (std::size_t i = 0; i < kets.size(); ++i) {
        CMat proj = kets[i] * kets[i].adjoint();
        out += kron(proj, blocks[i]);
    }
    return out;
}

CMat dft_matrix(std::int64_t n) {
    if (n < 1 || n > 12)
        throw RunError(ErrKind::SizeCap,
                       "transform size " + std::to_string(n) + " outside 1..12");
    std::int64_t dim = 1LL << n;
    CMat m(dim, dim);
    double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::int64_t k = 0; k < dim; ++k)
        for (std::int64_t j = 0; j < dim; ++j) {
            // j*k mod dim keeps the angle argument small for exactness.
            std::int64_t e = (j * k) % dim;
            m(k, j) = norm * std::polar(1.0, 2.0 * M_PI * static_cast<double>(e) /
                                                 static_cast<double>(dim));
        }
    return m;
}

CMat controlled_u_matrix(std::int64_t n_controls, const CMat& u) {
    if (u.rows() != 2 || u.cols() != 2)
        throw RunError(ErrKind::DimensionMismatch, "target gate must be 2x2");
    CMat gram = u.adjoint() * u;
    gram -= CMat::Identity(2, 2);
    if (gram.cwiseAbs().maxCoeff() > kEpsUnitary)
        throw RunError(ErrKind::NonUnitary, "target gate is not unitary");
    std::int64_t dim = 1LL << (n_controls + 1);
    CMat m = CMat::Identity(dim, dim);
    m.block(dim - 2, dim - 2, 2, 2) = u;
    return m;
}

CVec qsp_target(const std::vector<cxd>& a) {
    double total = 0.0;
    for (const cxd& v : a) total += std::abs(v);
    if (total <= 0.0)
        throw RunError(ErrKind::ZeroVector, "amplitude vector has no weight");
    CVec out(static_cast<Eigen::Index>(a.size()));
    for (std::size_t j = 0; j < a.size(); ++j) {
        double mod = std::abs(a[j]);
        double theta = mod > 0.0 ? std::arg(a[j]) : 0.0;
        out(static_cast<Eigen::Index>(j)) =
            std::polar(std::sqrt(mod / total), theta / 2.0);
    }
    return out;
}

std::pair<double, double> qsp_angles(const std::vector<cxd>& a, std::int64_t k,
                                     std::int64_t x) {
    std::int64_t n = 0;
    while ((1LL << n) < static_cast<std::int64_t>(a.size())) ++n;
    std::int64_t u = (1LL << (n - k)) * x;
    std::int64_t v = u + (1LL << (n - k));
    std::int64_t w = (u + v) / 2;
    auto weight = [&](std::int64_t l, std::int64_t r) {
        double s = 0.0;
        for (std::int64_t j = l; j < r; ++j) s += std::abs(a[static_cast<std::size_t>(j)]);
        return s;
    };
    double stotal = weight(u, v);
    if (stotal <= 0.0) return {1.0, 0.0};
    auto theta = [&](std::int64_t j) {
        const cxd& c = a[static_cast<std::size_t>(j)];
        return std::abs(c) > 0.0 ? std::arg(c) : 0.0;
    };
    return {weight(u, w) / stotal, theta(w) - theta(u)};
}

namespace {

void unfold_memory(std::vector<std::int64_t>& slots, std::int64_t n, std::int64_t j,
                   std::int64_t l, std::int64_t r, std::int64_t k) {
    if (k > n) return;
    std::int64_t m = (l + r) / 2;  // l, r nonnegative; floor matches div
    bool bit = (j >> (n - k)) & 1;
    if (!bit) {
        unfold_memory(slots, n, j, l, m, k + 1);
    } else {
        unfold_memory(slots, n, j, m + 1, r, k + 1);
        std::swap(slots[l], slots[m + 1]);
    }
}

}  // namespace

SlotPermutation qraqm_expected(std::int64_t n, std::int64_t j) {
    std::int64_t count = 1LL << n;
    SlotPermutation p;
    p.source.resize(count);
    for (std::int64_t s = 0; s < count; ++s) p.source[s] = s;
    unfold_memory(p.source, n, j, 0, count - 1, 1);
    std::vector<std::int64_t> literal;
    literal.push_back(j);
    for (std::int64_t s = 0; s < j; ++s) literal.push_back(s);
    for (std::int64_t s = j + 1; s < count; ++s) literal.push_back(s);
    p.matches_literal = p.source == literal;
    return p;
}

CompareReport compare(const CMat& a, const CMat& b, double eps, bool up_to_phase) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw RunError(ErrKind::DimensionMismatch, "matrices differ in dimension");
    CMat rhs = b;
    if (up_to_phase) {
        Eigen::Index r = 0, c = 0;
        b.cwiseAbs().maxCoeff(&r, &c);
        if (std::abs(b(r, c)) > 1e-300) {
            cxd phase = a(r, c) / b(r, c);
            double mag = std::abs(phase);
            if (mag > 1e-300) rhs = (phase / mag) * b;
        }
    }
    CompareReport report;
    Eigen::Index r = 0, c = 0;
    report.max_diff =
        a.size() == 0 ? 0.0 : (a - rhs).cwiseAbs().maxCoeff(&r, &c);
    report.worst_row = r;
    report.worst_col = c;
    report.pass = report.max_diff <= eps;
    return report;
}

}  // namespace qrpl
