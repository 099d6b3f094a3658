#pragma once

#include <cstdint>
#include <vector>

#include "qrpl/errors.hpp"
#include "qrpl/model.hpp"
#include "qrpl/types.hpp"

namespace qrpl {

// Ordered list of wires carrying a joint state. Wires are kept in canonical
// order (ascending global id) and the first wire is the most significant
// digit of a basis index.
struct Layout {
    std::vector<int> wires;
    std::vector<std::int64_t> dims;
    std::vector<std::int64_t> strides;
    std::int64_t dim = 1;

    int size() const { return static_cast<int>(wires.size()); }
    int position_of(int wire) const;
    void finalize();
};

Layout full_layout(const WireTable& table);
Layout layout_without(const Layout& layout, const std::vector<int>& removed);

bool same_layout(const Layout& a, const Layout& b);

std::int64_t index_of_digits(const Layout& layout, const std::vector<std::int64_t>& digits);
std::vector<std::int64_t> digits_of_index(const Layout& layout, std::int64_t index);

struct StateVector {
    Layout layout;
    CVec amps;
};

// |0...0> over the full wire table.
StateVector initial_state(const WireTable& table);
StateVector basis_state(const Layout& layout, std::int64_t index);

// Applies u to the listed wires, first wire most significant in u's indexing.
// u must be unitary within kEpsUnitary and match the joint target dimension.
void apply_unitary(StateVector& state, const CMat& u, const std::vector<int>& wires);

// Projects onto each coin ket: component b holds (<ket_b| (x) I)|state> over the
// layout with the coin wires removed. Components are not normalized and may be
// zero. Coin wires are indexed in the given register order.
std::vector<StateVector> extract_components(const StateVector& state,
                                            const std::vector<int>& coin_wires,
                                            const std::vector<CVec>& kets);

// Inverse of extract_components for an orthonormal ket family:
// sum_b |ket_b> (x) component_b, reinterleaved into `layout`.
StateVector recombine_components(const Layout& layout,
                                 const std::vector<int>& coin_wires,
                                 const std::vector<CVec>& kets,
                                 const std::vector<StateVector>& components);

double max_abs_diff(const CVec& a, const CVec& b);
bool state_close(const StateVector& a, const StateVector& b, double eps);
// Ignores a global phase, fixed from the largest amplitude of b.
bool state_close_up_to_phase(const StateVector& a, const StateVector& b, double eps);

}  // namespace qrpl
