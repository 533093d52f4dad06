#include "imc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace imc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_csv(const std::string& path, const Matrix& M) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << M.rows() << "," << M.cols() << "\n";
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j) out << ",";
      out << format_double(M(i, j));
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
  Eigen::Index rows = 0, cols = 0;
  {
    std::istringstream hdr(line);
    char comma;
    if (!(hdr >> rows >> comma >> cols) || comma != ',' || rows < 0 ||
        cols < 0) {
      throw std::runtime_error("bad matrix header in " + path);
    }
  }
  Matrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("truncated matrix in " + path);
    }
    std::istringstream row(line);
    std::string cell;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!std::getline(row, cell, ',')) {
        throw std::runtime_error("short row in " + path);
      }
      M(i, j) = std::stod(cell);
    }
  }
  return M;
}

void write_observations_csv(const std::string& path,
                            const ObservationSet& obs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "i,j,value\n";
  for (const auto& s : obs.samples) {
    out << s.i << "," << s.j << "," << format_double(s.value) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

ObservationSet read_observations_csv(const std::string& path, int m, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("i,j,value", 0) != 0) {
    throw std::runtime_error("bad observation header in " + path);
  }
  std::vector<Observation> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    Observation s{};
    if (!std::getline(row, cell, ',')) break;
    s.i = std::stoi(cell);
    if (!std::getline(row, cell, ',')) {
      throw std::runtime_error("short observation row in " + path);
    }
    s.j = std::stoi(cell);
    if (!std::getline(row, cell, ',')) {
      throw std::runtime_error("short observation row in " + path);
    }
    s.value = std::stod(cell);
    if (s.i < 0 || s.i >= m || s.j < 0 || s.j >= n) {
      throw std::runtime_error("observation index out of range in " + path);
    }
    samples.push_back(s);
  }
  return ObservationSet::from_samples(m, n, std::move(samples));
}

}  // namespace imc
