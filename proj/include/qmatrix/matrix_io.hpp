#pragma once

#include <filesystem>
#include <string>

#include "qmatrix/tensor.hpp"

namespace qmatrix {

/// JSON matrix document:
///   {"n": 2, "legs": 2, "entries": [{"row": [1, 2], "col": [2, 1], "value": "1"}]}
/// Indices are 1-based, values use the Scalar text grammar, omitted entries
/// are zero. Entries are written in row-major order so output is stable.
std::string to_json(const TensorOperator& op);
TensorOperator from_json(const std::string& text);

TensorOperator read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const TensorOperator& op);

/// Human-readable rendering: one line per nonzero entry.
std::string render(const TensorOperator& op);

}  // namespace qmatrix
