#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "effham/matrix.hpp"

namespace effham {

// Two-level rotation U_jk with c = cos(theta/2), s = sin(theta/2) and the
// angle bounded by |theta| <= pi/2 (smaller-root convention, so diagonal
// ordering is never flipped).  The complex backend carries the coupling
// phase phi explicitly (H[j][k] = g e^{-i phi}, g >= 0); real backends fold
// the coupling sign into t and s instead, with phi identically 0.
template <class S>
struct GivensRotation {
  std::size_t j = 0, k = 0;
  S c{}, s{}, t{};
  double phi = 0.0;
  S diag_shift{};  // t*g; exact renormalization of the two diagonal entries
  bool identity = false;
  // construction-time values used by the staleness check (numeric backends)
  double built_delta = 0.0, built_g = 0.0;
};

// Builds the rotation eliminating H[j][k], j < k, from the current entries.
// Numeric backends use the stable root form t = sgn(kappa)/(|1/kappa| +
// sqrt(1/kappa^2 + 1)) with theta = pi/2 exactly on resonance (delta = 0);
// the symbolic backend emits the branch-free algebraic route
//   t = (sqrt(kappa^2 + 1) - 1)/kappa,  c = 1/sqrt(1 + t^2),  s = t c
// whose evaluation faults on resonant parameter points by design.
template <class S>
GivensRotation<S> make_givens(const SquareMatrix<S>& h, std::size_t j,
                              std::size_t k) {
  using T = field_traits<S>;
  if (j == k) throw std::invalid_argument("make_givens: j == k");
  if (j > k) throw std::invalid_argument("make_givens: requires j < k");
  if (k >= h.dim()) throw std::invalid_argument("make_givens: index out of range");

  GivensRotation<S> r;
  r.j = j;
  r.k = k;

  if constexpr (T::is_symbolic) {
    const S v = h.at(j, k);
    if (T::is_zero(v)) {
      r.identity = true;
      r.c = T::one();
      r.s = T::zero();
      r.t = T::zero();
      r.diag_shift = T::zero();
      return r;
    }
    const S half = T::from_real(0.5);
    const S delta = (h.at(j, j) - h.at(k, k)) * half;
    const S kappa = v / delta;
    const S one = T::one();
    r.t = (T::sqrt(kappa * kappa + one) - one) / kappa;
    r.c = one / T::sqrt(one + r.t * r.t);
    r.s = r.t * r.c;
    r.diag_shift = r.t * v;
    return r;
  } else if constexpr (T::is_complex) {
    const cplx v = h.at(j, k);
    const double g = std::abs(v);
    const double delta = (h.at(j, j).real() - h.at(k, k).real()) / 2.0;
    r.built_delta = delta;
    r.built_g = g;
    if (g == 0.0) {
      r.identity = true;
      r.c = T::one();
      r.s = T::zero();
      r.t = T::zero();
      r.diag_shift = T::zero();
      return r;
    }
    r.phi = -std::arg(v);  // v = g e^{-i phi}
    double t;
    if (delta == 0.0) {
      t = 1.0;  // theta = pi/2, resonant coupling removed exactly
    } else {
      t = (delta > 0.0 ? 1.0 : -1.0) * g / (std::abs(delta) + std::hypot(delta, g));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    r.c = cplx(c, 0.0);
    r.s = cplx(t * c, 0.0);
    r.t = cplx(t, 0.0);
    r.diag_shift = cplx(t * g, 0.0);
    return r;
  } else {
    const S v = h.at(j, k);
    const S delta = (h.at(j, j) - h.at(k, k)) / S(2);
    r.built_delta = double(delta);
    r.built_g = double(scalar_abs(v));
    if (v == S(0)) {
      r.identity = true;
      r.c = T::one();
      r.s = T::zero();
      r.t = T::zero();
      r.diag_shift = T::zero();
      return r;
    }
    S t;
    if (delta == S(0)) {
      t = (v > S(0)) ? S(1) : S(-1);
    } else {
      const S sgn_delta = (delta > S(0)) ? S(1) : S(-1);
      t = sgn_delta * v / (scalar_abs(delta) + T::sqrt(delta * delta + v * v));
    }
    const S c = T::one() / T::sqrt(T::one() + t * t);
    r.c = c;
    r.s = t * c;
    r.t = t;
    r.diag_shift = t * v;
    return r;
  }
}

namespace detail {

// Unitary 2x2 entries of U_jk for the stored rotation.
template <class S>
void rotation_block(const GivensRotation<S>& r, S& u11, S& u12, S& u21,
                    S& u22) {
  using T = field_traits<S>;
  if constexpr (T::is_complex) {
    const cplx em(std::cos(r.phi), -std::sin(r.phi));  // e^{-i phi}
    u11 = r.c;
    u12 = em * r.s;
    u21 = -std::conj(em) * r.s;
    u22 = r.c;
  } else {
    u11 = r.c;
    u12 = r.s;
    u21 = -r.s;
    u22 = r.c;
  }
}

}  // namespace detail

struct StaleRotationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// H' = U H U^dagger through the closed-form elementwise updates: the target
// entry is set to the exact zero scalar, the two diagonals shift by +-t*g
// (trace preserved identically), rows/columns h != j,k mix with c and s.
// A rotation built from a different matrix state is rejected (numeric
// backends, tolerance 1e-10 on delta and g) unless `check_stale` is false.
template <class S>
SquareMatrix<S> apply_givens(const SquareMatrix<S>& h,
                             const GivensRotation<S>& r,
                             bool check_stale = true) {
  using T = field_traits<S>;
  const std::size_t j = r.j, k = r.k, n = h.dim();
  if (k >= n) throw std::invalid_argument("apply_givens: rotation out of range");
  if (r.identity) return h;

  if constexpr (!T::is_symbolic) {
    if (check_stale) {
      double delta, g;
      if constexpr (T::is_complex) {
        delta = (h.at(j, j).real() - h.at(k, k).real()) / 2.0;
        g = std::abs(h.at(j, k));
      } else {
        delta = double((h.at(j, j) - h.at(k, k)) / S(2));
        g = double(scalar_abs(h.at(j, k)));
      }
      if (std::abs(delta - r.built_delta) > 1e-10 ||
          std::abs(g - r.built_g) > 1e-10)
        throw StaleRotationError(
            "apply_givens: rotation is stale (matrix entries moved since "
            "construction)");
    }
  }

  S u11, u12, u21, u22;
  detail::rotation_block(r, u11, u12, u21, u22);

  SquareMatrix<S> out = h;
  for (std::size_t x = 0; x < n; ++x) {
    if (x == j || x == k) continue;
    const S hxj = h.at(x, j);
    const S hxk = h.at(x, k);
    const S nj = hxj * T::conj(u11) + hxk * T::conj(u12);
    const S nk = hxj * T::conj(u21) + hxk * T::conj(u22);
    out.at(x, j) = nj;
    out.at(x, k) = nk;
    out.at(j, x) = T::conj(nj);
    out.at(k, x) = T::conj(nk);
  }
  out.at(j, j) = h.at(j, j) + r.diag_shift;
  out.at(k, k) = h.at(k, k) - r.diag_shift;
  out.at(j, k) = T::zero();
  out.at(k, j) = T::zero();
  return out;
}

// Full conjugation by the rotation without assuming it matches the current
// matrix: the 2x2 block is computed, not zeroed.  Used in grouped mode,
// where rotations in one group are built from the group's starting matrix.
template <class S>
SquareMatrix<S> apply_givens_unitary(const SquareMatrix<S>& h,
                                     const GivensRotation<S>& r) {
  using T = field_traits<S>;
  const std::size_t j = r.j, k = r.k, n = h.dim();
  if (k >= n)
    throw std::invalid_argument("apply_givens_unitary: rotation out of range");
  if (r.identity) return h;

  S u11, u12, u21, u22;
  detail::rotation_block(r, u11, u12, u21, u22);

  SquareMatrix<S> out = h;
  // rows j,k
  for (std::size_t x = 0; x < n; ++x) {
    const S hjx = h.at(j, x);
    const S hkx = h.at(k, x);
    out.at(j, x) = u11 * hjx + u12 * hkx;
    out.at(k, x) = u21 * hjx + u22 * hkx;
  }
  // columns j,k of the row-updated matrix
  for (std::size_t x = 0; x < n; ++x) {
    const S hxj = out.at(x, j);
    const S hxk = out.at(x, k);
    out.at(x, j) = hxj * T::conj(u11) + hxk * T::conj(u12);
    out.at(x, k) = hxj * T::conj(u21) + hxk * T::conj(u22);
  }
  return out;
}

// argmax |H[j][k]| over j < k; ties resolved to the smallest j, then k.
// Returns nothing once the largest magnitude is <= `threshold`.
template <class S>
std::optional<std::pair<std::size_t, std::size_t>> select_pivot_largest(
    const SquareMatrix<S>& h, double threshold = 0.0) {
  static_assert(!field_traits<S>::is_symbolic,
                "largest-pivot selection needs numeric magnitudes");
  double best = threshold;
  std::optional<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j + 1 < h.dim(); ++j)
    for (std::size_t k = j + 1; k < h.dim(); ++k) {
      const double a = double(scalar_abs(h.at(j, k)));
      if (a > best) {
        best = a;
        out = {j, k};
      }
    }
  return out;
}

// Row-major walk over j < k, wrapping.
class PivotCycler {
 public:
  std::pair<std::size_t, std::size_t> next(std::size_t dim) {
    auto cur = std::make_pair(j_, k_);
    if (++k_ >= dim) {
      if (++j_ + 1 >= dim) j_ = 0;
      k_ = j_ + 1;
    }
    return cur;
  }

 private:
  std::size_t j_ = 0, k_ = 1;
};

// Product of the rotations applied in order (later rotations act last):
// U = U_m ... U_2 U_1.
template <class S>
SquareMatrix<S> accumulate_unitary(
    std::size_t dim, const std::vector<GivensRotation<S>>& rotations) {
  SquareMatrix<S> u = SquareMatrix<S>::identity(dim);
  for (const auto& r : rotations) {
    if (r.identity) continue;
    S u11, u12, u21, u22;
    detail::rotation_block(r, u11, u12, u21, u22);
    for (std::size_t x = 0; x < dim; ++x) {
      const S a = u.at(r.j, x);
      const S b = u.at(r.k, x);
      u.at(r.j, x) = u11 * a + u12 * b;
      u.at(r.k, x) = u21 * a + u22 * b;
    }
  }
  return u;
}

}  // namespace effham
