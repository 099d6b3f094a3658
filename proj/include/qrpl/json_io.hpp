#pragma once

#include <map>
#include <string>
#include <vector>

#include "qrpl/model.hpp"
#include "qrpl/state.hpp"
#include "qrpl/value.hpp"

namespace qrpl {

// State files: {"layout":[{"var":...,"indices":[...],"dim":...},...],
// "amplitudes":[[re,im],...]}, wires in canonical order. Writers may add a
// "store" object mapping variable names to final classical values; readers
// ignore it.
void write_state_json(const std::string& path, const WireTable& wires,
                      const StateVector& state, const ClassicalStore* store = nullptr);
StateVector read_state_json(const std::string& path, const WireTable& wires);

// Matrix files: {"dim":d,"layout":...,"entries":[[[re,im],...],...]} row-major.
void write_matrix_json(const std::string& path, const WireTable& wires, const CMat& m);
CMat read_matrix_json(const std::string& path);

// Data files: {"bindings":{name: scalar-or-list}}.
struct DataBindings {
    std::map<std::string, ClassicalValue> scalars;
    std::map<std::string, std::vector<ClassicalValue>> lists;
};
DataBindings read_data_json(const std::string& path);

// Amplitude files: {"amplitudes":[[re,im],...]}; bare reals allowed.
std::vector<cxd> read_amplitude_json(const std::string& path);

}  // namespace qrpl
