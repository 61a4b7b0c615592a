#include "effham/npad.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace effham {

namespace {

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double inter_norm_sq(const SquareMatrix<cplx>& h,
                     const std::vector<int>& block_of) {
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < h.dim(); ++j)
    for (std::size_t k = j + 1; k < h.dim(); ++k)
      if (block_of[j] != block_of[k]) s += 2.0 * std::norm(h.at(j, k));
  return s;
}

}  // namespace

NpadResult npad_diagonalize(const SquareMatrix<cplx>& h,
                            const NpadConfig& cfg) {
  NpadResult r;
  r.matrix = make_hermitian(h);
  r.norm_history.push_back(offdiag_norm_sq(r.matrix));
  const double tol_sq = cfg.tolerance * cfg.tolerance;

  PivotCycler cycler;
  long applied = 0;
  while (r.norm_history.back() > tol_sq) {
    if (applied >= cfg.max_rotations) {
      r.converged = false;
      return r;
    }
    std::pair<std::size_t, std::size_t> pivot;
    if (cfg.strategy == PivotStrategy::Largest) {
      auto p = select_pivot_largest(r.matrix);
      if (!p) break;  // numerically diagonal already
      pivot = *p;
    } else {
      // walk until a nonzero entry comes up; one full cycle of zeros means
      // the matrix is diagonal
      bool found = false;
      const std::size_t pairs = r.matrix.dim() * (r.matrix.dim() - 1) / 2;
      for (std::size_t i = 0; i < pairs; ++i) {
        pivot = cycler.next(r.matrix.dim());
        if (std::abs(r.matrix.at(pivot.first, pivot.second)) != 0.0) {
          found = true;
          break;
        }
      }
      if (!found) break;
    }
    GivensRotation<cplx> rot =
        make_givens(r.matrix, pivot.first, pivot.second);
    r.matrix = apply_givens(r.matrix, rot);
    r.rotations.push_back(std::move(rot));
    r.norm_history.push_back(offdiag_norm_sq(r.matrix));
    ++applied;
  }
  r.converged = (r.norm_history.back() <= tol_sq);
  return r;
}

NpadResult npad_block(const SquareMatrix<cplx>& h,
                      const std::vector<std::vector<std::size_t>>& partition,
                      const NpadConfig& cfg) {
  const std::size_t n = h.dim();
  std::vector<int> block_of(n, -1);
  for (std::size_t b = 0; b < partition.size(); ++b)
    for (std::size_t idx : partition[b]) {
      if (idx >= n) throw std::invalid_argument("npad_block: index out of range");
      if (block_of[idx] != -1)
        throw std::invalid_argument("npad_block: partition not disjoint");
      block_of[idx] = static_cast<int>(b);
    }
  for (std::size_t i = 0; i < n; ++i)
    if (block_of[i] == -1)
      throw std::invalid_argument("npad_block: partition does not cover index " +
                                  std::to_string(i));

  NpadResult r;
  r.matrix = make_hermitian(h);
  r.norm_history.push_back(offdiag_norm_sq(r.matrix));
  r.inter_norm_history.push_back(inter_norm_sq(r.matrix, block_of));
  const double tol_sq = cfg.tolerance * cfg.tolerance;

  long applied = 0;
  while (r.inter_norm_history.back() > tol_sq) {
    if (applied >= cfg.max_rotations) {
      r.converged = false;
      return r;
    }
    double best = 0.0;
    std::size_t bj = 0, bk = 0;
    for (std::size_t j = 0; j + 1 < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        if (block_of[j] == block_of[k]) continue;
        const double a = std::abs(r.matrix.at(j, k));
        if (a > best) {
          best = a;
          bj = j;
          bk = k;
        }
      }
    if (best == 0.0) break;
    GivensRotation<cplx> rot = make_givens(r.matrix, bj, bk);
    r.matrix = apply_givens(r.matrix, rot);
    r.rotations.push_back(std::move(rot));
    r.norm_history.push_back(offdiag_norm_sq(r.matrix));
    r.inter_norm_history.push_back(inter_norm_sq(r.matrix, block_of));
    ++applied;
  }
  r.converged = (r.inter_norm_history.back() <= tol_sq);
  return r;
}

std::string npad_result_to_json(const NpadResult& r) {
  std::string out = "{\"dim\":" + std::to_string(r.matrix.dim()) +
                    ",\"converged\":" + (r.converged ? "true" : "false") +
                    ",\"final\":[";
  for (std::size_t i = 0; i < r.matrix.dim(); ++i)
    for (std::size_t j = 0; j < r.matrix.dim(); ++j) {
      if (i || j) out += ',';
      out += '[' + fmt(r.matrix.at(i, j).real()) + ',' +
             fmt(r.matrix.at(i, j).imag()) + ']';
    }
  out += "],\"rotations\":[";
  for (std::size_t i = 0; i < r.rotations.size(); ++i) {
    const auto& g = r.rotations[i];
    if (i) out += ',';
    out += "{\"j\":" + std::to_string(g.j) + ",\"k\":" + std::to_string(g.k) +
           ",\"c\":" + fmt(g.c.real()) + ",\"s\":" + fmt(g.s.real()) +
           ",\"phi\":" + fmt(g.phi) + "}";
  }
  out += "],\"norm_history\":[";
  for (std::size_t i = 0; i < r.norm_history.size(); ++i) {
    if (i) out += ',';
    out += fmt(r.norm_history[i]);
  }
  out += ']';
  if (!r.inter_norm_history.empty()) {
    out += ",\"inter_norm_history\":[";
    for (std::size_t i = 0; i < r.inter_norm_history.size(); ++i) {
      if (i) out += ',';
      out += fmt(r.inter_norm_history[i]);
    }
    out += ']';
  }
  out += '}';
  return out;
}

}  // namespace effham
