#pragma once

#include <utility>
#include <vector>

#include "effham/givens.hpp"

namespace effham {

enum class PivotStrategy { Largest, Cyclic };

struct NpadConfig {
  // Compared against sqrt(offdiag_norm_sq of the targeted entries), in the
  // same energy units as the matrix.
  double tolerance = 1e-12;
  long max_rotations = 10000;
  PivotStrategy strategy = PivotStrategy::Largest;
};

struct NpadResult {
  SquareMatrix<cplx> matrix;
  std::vector<GivensRotation<cplx>> rotations;
  // offdiag_norm_sq over all pairs; entry 0 is the initial value, one entry
  // per applied rotation after that.
  std::vector<double> norm_history;
  // block mode only: the inter-block part, which need not be monotonous
  std::vector<double> inter_norm_history;
  bool converged = false;
};

// Algorithm: loop select-pivot -> make_givens -> apply_givens until the
// off-diagonal norm passes the tolerance or the rotation budget runs out.
NpadResult npad_diagonalize(const SquareMatrix<cplx>& h, const NpadConfig& cfg);

// Pivots restricted to inter-block pairs of `partition` (disjoint cover of
// the indices); terminates on the inter-block norm.  The all-pairs norm
// still decreases per rotation and both histories are recorded.
NpadResult npad_block(const SquareMatrix<cplx>& h,
                      const std::vector<std::vector<std::size_t>>& partition,
                      const NpadConfig& cfg);

// Fixed-recipe mode, scalar-generic.  Non-grouped: every rotation is built
// from the current matrix and zeroes its entry exactly.  Grouped: all
// rotations are built from the starting matrix and applied sequentially as
// separate unitaries, so targeted entries keep (small) residuals, returned
// per target.
template <class S>
struct TargetedResult {
  SquareMatrix<S> matrix;
  std::vector<GivensRotation<S>> rotations;
  std::vector<S> residuals;  // value of each targeted entry at the end
};

template <class S>
TargetedResult<S> npad_targeted(
    const SquareMatrix<S>& h,
    const std::vector<std::pair<std::size_t, std::size_t>>& targets,
    bool grouped) {
  TargetedResult<S> out{h, {}, {}};
  if (grouped) {
    for (const auto& [j, k] : targets)
      out.rotations.push_back(make_givens(out.matrix, j, k));
    for (const auto& r : out.rotations)
      out.matrix = apply_givens_unitary(out.matrix, r);
  } else {
    for (const auto& [j, k] : targets) {
      GivensRotation<S> r = make_givens(out.matrix, j, k);
      out.matrix = apply_givens(out.matrix, r);
      out.rotations.push_back(std::move(r));
    }
  }
  for (const auto& [j, k] : targets) out.residuals.push_back(out.matrix.at(j, k));
  return out;
}

std::string npad_result_to_json(const NpadResult& r);

}  // namespace effham
