#pragma once

#include <string>

#include "imc/observations.hpp"
#include "imc/side_info.hpp"

namespace imc {

/// Matrix CSV: first line "<rows>,<cols>", then one comma-separated data row
/// per matrix row, floats at full precision (%.17g).
void write_matrix_csv(const std::string& path, const Matrix& M);
Matrix read_matrix_csv(const std::string& path);

/// Observation CSV: header "i,j,value" with 0-based indices.
void write_observations_csv(const std::string& path, const ObservationSet& obs);
ObservationSet read_observations_csv(const std::string& path, int m, int n);

/// Full-precision float formatting used in all CSV output.
std::string format_double(double v);

}  // namespace imc
