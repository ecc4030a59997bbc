#pragma once

#include <string>
#include <vector>

#include "nonfloquet/models.hpp"

namespace nonfloquet {

/// Parses a model file. Top-level keys:
///   model     "bipartite_chain" | "step_quench" | "stark_chain"
///   variant   chain variant name (bipartite_chain only)
///   boundary  "open" | "periodic" | "momentum"
///   L         cell count (bipartite_chain), N site count (stark_chain)
///   k         momentum: a number for the chain, [kx, ky] for the quench
///   omega, phase
///   params    model parameters, see README
///   steps     quench steps [{duration, j1, j2, bond}]; complex values are
///             numbers or [re, im] pairs
/// Unknown keys at any level are an InvalidInputError.
ModelSpec parse_model_spec(const std::string& json_text);
ModelSpec load_model_spec(const std::string& path);

/// Rectangular table of doubles with named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Values in fixed 17-significant-digit scientific notation, so reading the
/// text back reproduces every double exactly.
std::string format_csv(const Table& table);
Table parse_csv(const std::string& text);

/// Shortest decimal text that reads back to the same double.
std::string format_double_shortest(double value);

/// Writes to a temporary file next to `path`, then renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace nonfloquet
