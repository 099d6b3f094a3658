#include "qrpl/state.hpp"

#include <algorithm>
#include <set>

namespace qrpl {

int Layout::position_of(int wire) const {
    auto it = std::lower_bound(wires.begin(), wires.end(), wire);
    if (it == wires.end() || *it != wire) return -1;
    return static_cast<int>(it - wires.begin());
}

void Layout::finalize() {
    strides.assign(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
        strides[i] = strides[i + 1] * dims[i + 1];
    dim = dims.empty() ? 1 : strides[0] * dims[0];
}

Layout full_layout(const WireTable& table) {
    Layout layout;
    for (int w = 0; w < table.total(); ++w) {
        layout.wires.push_back(w);
        layout.dims.push_back(table.dims[w]);
    }
    layout.finalize();
    return layout;
}

Layout layout_without(const Layout& layout, const std::vector<int>& removed) {
    std::set<int> gone(removed.begin(), removed.end());
    Layout sub;
    for (int i = 0; i < layout.size(); ++i) {
        if (gone.count(layout.wires[i])) continue;
        sub.wires.push_back(layout.wires[i]);
        sub.dims.push_back(layout.dims[i]);
    }
    sub.finalize();
    return sub;
}

bool same_layout(const Layout& a, const Layout& b) {
    return a.wires == b.wires && a.dims == b.dims;
}

std::int64_t index_of_digits(const Layout& layout, const std::vector<std::int64_t>& digits) {
    std::int64_t index = 0;
    for (int i = 0; i < layout.size(); ++i) index += digits[i] * layout.strides[i];
    return index;
}

std::vector<std::int64_t> digits_of_index(const Layout& layout, std::int64_t index) {
    std::vector<std::int64_t> digits(layout.size());
    for (int i = 0; i < layout.size(); ++i) {
        digits[i] = index / layout.strides[i];
        index %= layout.strides[i];
    }
    return digits;
}

StateVector initial_state(const WireTable& table) {
    return basis_state(full_layout(table), 0);
}

StateVector basis_state(const Layout& layout, std::int64_t index) {
    StateVector s;
    s.layout = layout;
    s.amps = CVec::Zero(layout.dim);
    s.amps(index) = cxd{1.0, 0.0};
    return s;
}

namespace {

// Splits a layout into the targeted positions (in the order given) and the
// rest. target_offsets[t] is the full-layout offset of target digit pattern t,
// most significant digit first.
struct Subspace {
    std::vector<std::int64_t> rest_dims;
    std::vector<std::int64_t> rest_strides;
    std::int64_t rest_dim = 1;
    std::vector<std::int64_t> target_offsets;
    std::int64_t target_dim = 1;
};

Subspace split(const Layout& layout, const std::vector<int>& target_positions) {
    Subspace s;
    std::set<int> targeted(target_positions.begin(), target_positions.end());
    for (int i = 0; i < layout.size(); ++i) {
        if (targeted.count(i)) continue;
        s.rest_dims.push_back(layout.dims[i]);
        s.rest_strides.push_back(layout.strides[i]);
        s.rest_dim *= layout.dims[i];
    }
    for (int p : target_positions) s.target_dim *= layout.dims[p];
    s.target_offsets.assign(s.target_dim, 0);
    for (std::int64_t t = 0; t < s.target_dim; ++t) {
        std::int64_t v = t, offset = 0;
        for (int j = static_cast<int>(target_positions.size()) - 1; j >= 0; --j) {
            int p = target_positions[j];
            offset += (v % layout.dims[p]) * layout.strides[p];
            v /= layout.dims[p];
        }
        s.target_offsets[t] = offset;
    }
    return s;
}

// Enumerating r in [0, rest_dim) this way walks the remaining wires in their
// canonical order, so r doubles as the sub-layout index.
std::int64_t rest_base(const Subspace& s, std::int64_t r) {
    std::int64_t base = 0;
    for (int i = static_cast<int>(s.rest_dims.size()) - 1; i >= 0; --i) {
        base += (r % s.rest_dims[i]) * s.rest_strides[i];
        r /= s.rest_dims[i];
    }
    return base;
}

std::vector<int> positions_of(const Layout& layout, const std::vector<int>& wires) {
    std::vector<int> pos;
    std::set<int> seen;
    for (int w : wires) {
        int p = layout.position_of(w);
        if (p < 0)
            throw RunError(ErrKind::LayoutMismatch,
                           "wire " + std::to_string(w) + " not present in this state");
        if (!seen.insert(p).second)
            throw RunError(ErrKind::DuplicateWire, "wire targeted twice");
        pos.push_back(p);
    }
    return pos;
}

}  // namespace

void apply_unitary(StateVector& state, const CMat& u, const std::vector<int>& wires) {
    Subspace s = split(state.layout, positions_of(state.layout, wires));
    if (u.rows() != s.target_dim || u.cols() != s.target_dim)
        throw RunError(ErrKind::DimensionMismatch,
                       "gate is " + std::to_string(u.rows()) + "x" +
                           std::to_string(u.cols()) + " but the register has dimension " +
                           std::to_string(s.target_dim));
    CMat gram = u.adjoint() * u;
    gram -= CMat::Identity(s.target_dim, s.target_dim);
    if (gram.cwiseAbs().maxCoeff() > kEpsUnitary)
        throw RunError(ErrKind::NonUnitary, "gate matrix is not unitary");
    CVec in(s.target_dim), out(s.target_dim);
    for (std::int64_t r = 0; r < s.rest_dim; ++r) {
        std::int64_t base = rest_base(s, r);
        for (std::int64_t t = 0; t < s.target_dim; ++t)
            in(t) = state.amps(base + s.target_offsets[t]);
        out.noalias() = u * in;
        for (std::int64_t t = 0; t < s.target_dim; ++t)
            state.amps(base + s.target_offsets[t]) = out(t);
    }
}

std::vector<StateVector> extract_components(const StateVector& state,
                                            const std::vector<int>& coin_wires,
                                            const std::vector<CVec>& kets) {
    Subspace s = split(state.layout, positions_of(state.layout, coin_wires));
    Layout sub = layout_without(state.layout, coin_wires);
    for (const CVec& ket : kets)
        if (ket.size() != s.target_dim)
            throw RunError(ErrKind::DimensionMismatch, "coin ket has the wrong dimension");
    std::vector<StateVector> components(kets.size());
    for (auto& c : components) {
        c.layout = sub;
        c.amps = CVec::Zero(sub.dim);
    }
    CVec in(s.target_dim);
    for (std::int64_t r = 0; r < s.rest_dim; ++r) {
        std::int64_t base = rest_base(s, r);
        for (std::int64_t t = 0; t < s.target_dim; ++t)
            in(t) = state.amps(base + s.target_offsets[t]);
        for (std::size_t b = 0; b < kets.size(); ++b)
            components[b].amps(r) = kets[b].dot(in);
    }
    return components;
}

StateVector recombine_components(const Layout& layout,
                                 const std::vector<int>& coin_wires,
                                 const std::vector<CVec>& kets,
                                 const std::vector<StateVector>& components) {
    Subspace s = split(layout, positions_of(layout, coin_wires));
    Layout sub = layout_without(layout, coin_wires);
    if (components.size() != kets.size())
        throw RunError(ErrKind::DimensionMismatch, "one component per coin ket required");
    for (const StateVector& c : components)
        if (!same_layout(c.layout, sub))
            throw RunError(ErrKind::LayoutMismatch, "component layout mismatch");
    StateVector out;
    out.layout = layout;
    out.amps = CVec::Zero(layout.dim);
    for (std::int64_t r = 0; r < s.rest_dim; ++r) {
        std::int64_t base = rest_base(s, r);
        for (std::int64_t t = 0; t < s.target_dim; ++t) {
            cxd acc{0.0, 0.0};
            for (std::size_t b = 0; b < kets.size(); ++b)
                acc += kets[b](t) * components[b].amps(r);
            out.amps(base + s.target_offsets[t]) = acc;
        }
    }
    return out;
}

double max_abs_diff(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

bool state_close(const StateVector& a, const StateVector& b, double eps) {
    return same_layout(a.layout, b.layout) && max_abs_diff(a.amps, b.amps) <= eps;
}

bool state_close_up_to_phase(const StateVector& a, const StateVector& b, double eps) {
    if (!same_layout(a.layout, b.layout)) return false;
    Eigen::Index m = 0;
    b.amps.cwiseAbs().maxCoeff(&m);
    cxd ref = b.amps(m);
    if (std::abs(ref) < 1e-300) return max_abs_diff(a.amps, b.amps) <= eps;
    cxd phase = a.amps(m) / ref;
    double mag = std::abs(phase);
    if (mag < 1e-300) return max_abs_diff(a.amps, b.amps) <= eps;
    phase /= mag;
    return max_abs_diff(a.amps, (phase * b.amps).eval()) <= eps;
}

}  // namespace qrpl
