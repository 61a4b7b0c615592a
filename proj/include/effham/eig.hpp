#pragma once

#include <vector>

#include "effham/matrix.hpp"

namespace effham {

// U H U^dagger = diag(eigenvalues), eigenvalues ascending.  The eigenvector
// for eigenvalues[i] is row i of `unitary` conjugated (column i of U^dagger).
struct EigResult {
  std::vector<double> eigenvalues;
  SquareMatrix<cplx> unitary;

  // |<basis b|eigvec i>|^2
  double overlap_sq(std::size_t i, std::size_t b) const {
    return std::norm(unitary.at(i, b));
  }
};

// Machine-precision brute-force oracle: classical cyclic Jacobi sweeps over
// every off-diagonal entry.  Deliberately a separate code path from the
// truncated iteration it is used to check.
EigResult eig_oracle(const SquareMatrix<cplx>& h, double rel_tol = 1e-13,
                     int max_sweeps = 100);

// sqrt of the largest eigenvalue of M^dagger M.
double spectral_norm(const SquareMatrix<cplx>& m);

// exp(S) for anti-Hermitian S, via the eigensystem of the Hermitian iS.
SquareMatrix<cplx> exp_antihermitian(const SquareMatrix<cplx>& s);

}  // namespace effham
