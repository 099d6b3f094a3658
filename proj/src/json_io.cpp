#include "qrpl/json_io.hpp"

#include <fstream>

#include <json.hpp>

namespace qrpl {

namespace {

using nlohmann::json;

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RunError(ErrKind::BadInput, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw RunError(ErrKind::BadInput, path + ": " + e.what());
    }
}

void save_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw RunError(ErrKind::BadInput, "cannot write " + path);
    out << j.dump(2) << '\n';
}

json layout_json(const WireTable& wires) {
    json layout = json::array();
    for (int w = 0; w < wires.total(); ++w) {
        const WireDesc& d = wires.wires[w];
        layout.push_back({{"var", wires.decls[d.decl].name},
                          {"indices", d.indices},
                          {"dim", wires.dims[w]}});
    }
    return layout;
}

void check_layout(const json& layout, const WireTable& wires, const std::string& path) {
    if (!layout.is_array() || static_cast<int>(layout.size()) != wires.total())
        throw RunError(ErrKind::LayoutMismatch,
                       path + ": layout does not match the program's wires");
    for (int w = 0; w < wires.total(); ++w) {
        const json& entry = layout[w];
        const WireDesc& d = wires.wires[w];
        if (entry.value("var", std::string{}) != wires.decls[d.decl].name ||
            entry.value("dim", std::int64_t{0}) != wires.dims[w] ||
            entry.value("indices", std::vector<std::int64_t>{}) != d.indices)
            throw RunError(ErrKind::LayoutMismatch,
                           path + ": layout entry " + std::to_string(w) +
                               " does not match the program's wires");
    }
}

json complex_json(const cxd& v) { return json::array({v.real(), v.imag()}); }

cxd parse_complex(const json& j, const std::string& path) {
    if (j.is_number()) return cxd{j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cxd{j[0].get<double>(), j[1].get<double>()};
    throw RunError(ErrKind::BadInput, path + ": expected [re, im]");
}

ClassicalValue parse_scalar(const json& j, const std::string& path) {
    if (j.is_boolean()) return ClassicalValue{j.get<bool>()};
    if (j.is_number_integer()) return ClassicalValue{j.get<std::int64_t>()};
    if (j.is_number()) return ClassicalValue{j.get<double>()};
    throw RunError(ErrKind::BadInput, path + ": expected a number or boolean");
}

json store_json(const ClassicalStore& store) {
    json out = json::object();
    for (const auto& [key, value] : store.bindings()) {
        json v;
        if (value.is_int())
            v = value.as_int();
        else if (value.is_real())
            v = value.as_real();
        else
            v = value.as_bool();
        out[to_string(key)] = v;
    }
    return out;
}

}  // namespace

void write_state_json(const std::string& path, const WireTable& wires,
                      const StateVector& state, const ClassicalStore* store) {
    json j;
    j["layout"] = layout_json(wires);
    json amps = json::array();
    for (Eigen::Index i = 0; i < state.amps.size(); ++i)
        amps.push_back(complex_json(state.amps(i)));
    j["amplitudes"] = std::move(amps);
    if (store) j["store"] = store_json(*store);
    save_file(path, j);
}

StateVector read_state_json(const std::string& path, const WireTable& wires) {
    json j = load_file(path);
    check_layout(j.value("layout", json::array()), wires, path);
    const json& amps = j["amplitudes"];
    StateVector s;
    s.layout = full_layout(wires);
    if (!amps.is_array() || static_cast<std::int64_t>(amps.size()) != s.layout.dim)
        throw RunError(ErrKind::DimensionMismatch,
                       path + ": expected " + std::to_string(s.layout.dim) +
                           " amplitudes");
    s.amps.resize(s.layout.dim);
    for (std::int64_t i = 0; i < s.layout.dim; ++i)
        s.amps(i) = parse_complex(amps[static_cast<std::size_t>(i)], path);
    return s;
}

void write_matrix_json(const std::string& path, const WireTable& wires, const CMat& m) {
    json j;
    j["dim"] = m.rows();
    j["layout"] = layout_json(wires);
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    save_file(path, j);
}

CMat read_matrix_json(const std::string& path) {
    json j = load_file(path);
    std::int64_t dim = j.value("dim", std::int64_t{-1});
    const json& entries = j["entries"];
    if (dim < 0 || !entries.is_array() ||
        static_cast<std::int64_t>(entries.size()) != dim)
        throw RunError(ErrKind::BadInput, path + ": malformed matrix file");
    CMat m(dim, dim);
    for (std::int64_t r = 0; r < dim; ++r) {
        const json& row = entries[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<std::int64_t>(row.size()) != dim)
            throw RunError(ErrKind::BadInput, path + ": malformed matrix row");
        for (std::int64_t c = 0; c < dim; ++c)
            m(r, c) = parse_complex(row[static_cast<std::size_t>(c)], path);
    }
    return m;
}

DataBindings read_data_json(const std::string& path) {
    json j = load_file(path);
    const json& bindings = j.value("bindings", json::object());
    if (!bindings.is_object())
        throw RunError(ErrKind::BadInput, path + ": \"bindings\" must be an object");
    DataBindings out;
    for (const auto& [name, value] : bindings.items()) {
        if (value.is_array()) {
            std::vector<ClassicalValue> list;
            for (const json& v : value) list.push_back(parse_scalar(v, path));
            out.lists[name] = std::move(list);
        } else {
            out.scalars[name] = parse_scalar(value, path);
        }
    }
    return out;
}

std::vector<cxd> read_amplitude_json(const std::string& path) {
    json j = load_file(path);
    const json& amps = j.value("amplitudes", json::array());
    if (!amps.is_array() || amps.empty())
        throw RunError(ErrKind::BadInput, path + ": \"amplitudes\" must be a nonempty list");
    std::vector<cxd> out;
    for (const json& v : amps) out.push_back(parse_complex(v, path));
    return out;
}

}  // namespace qrpl
