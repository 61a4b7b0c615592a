#pragma once

#include <string>

#include "effham/cqed.hpp"
#include "effham/matrix.hpp"

namespace effham {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrix wire schema: {"dim": n, "entries": [[re, im], ...]} row-major with
// n^2 entries; Hermiticity validated on load.
SquareMatrix<cplx> load_matrix_json(const std::string& path);
SquareMatrix<cplx> parse_matrix_json(const std::string& text);
std::string matrix_to_json(const SquareMatrix<cplx>& m);

// Config keys: omega1, omega2, alpha1, alpha2, g1, g2, omega_r, Omega,
// omega_d, levels (int or list), freq_convention.  JSON or flat TOML,
// decided by the file extension (.toml) or content.
CqedParams load_params(const std::string& path);
CqedParams parse_params_json(const std::string& text);
CqedParams parse_params_toml(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace effham
