#include "effham/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace effham {

namespace {

// Textbook two-sided rotation zeroing h[p][q], p < q, for a complex
// Hermitian matrix, with the eigenvector rows of `u` updated in place.
void jacobi_rotate(SquareMatrix<cplx>& h, SquareMatrix<cplx>& u, std::size_t p,
                   std::size_t q) {
  const cplx hpq = h.at(p, q);
  const double apq = std::abs(hpq);
  if (apq == 0.0) return;
  const cplx phase = hpq / apq;  // h[p][q] = apq * phase
  const double dpp = h.at(p, p).real();
  const double dqq = h.at(q, q).real();

  // tan(2 theta) = 2|hpq| / (dpp - dqq); stable smaller-root choice.
  double t;
  const double diff = (dpp - dqq) / 2.0;
  if (diff == 0.0) {
    t = 1.0;
  } else {
    const double zeta = diff / apq;
    t = ((zeta >= 0.0) ? 1.0 : -1.0) /
        (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cplx sp = s * phase;          // rotates the p column
  const cplx spc = s * std::conj(phase);

  const std::size_t n = h.dim();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const cplx hkp = h.at(k, p);
    const cplx hkq = h.at(k, q);
    h.at(k, p) = c * hkp + spc * hkq;
    h.at(k, q) = c * hkq - sp * hkp;
    h.at(p, k) = std::conj(h.at(k, p));
    h.at(q, k) = std::conj(h.at(k, q));
  }
  const double shift = t * apq;
  h.at(p, p) = cplx(dpp + shift, 0.0);
  h.at(q, q) = cplx(dqq - shift, 0.0);
  h.at(p, q) = cplx(0.0, 0.0);
  h.at(q, p) = cplx(0.0, 0.0);

  for (std::size_t k = 0; k < n; ++k) {
    const cplx upk = u.at(p, k);
    const cplx uqk = u.at(q, k);
    u.at(p, k) = c * upk + spc * uqk;
    u.at(q, k) = c * uqk - sp * upk;
  }
}

}  // namespace

EigResult eig_oracle(const SquareMatrix<cplx>& h_in, double rel_tol,
                     int max_sweeps) {
  const std::size_t n = h_in.dim();
  if (n == 0) throw std::invalid_argument("eig_oracle: empty matrix");
  if (n > 4096) throw std::invalid_argument("eig_oracle: dim > 4096");

  SquareMatrix<cplx> h = make_hermitian(h_in);
  SquareMatrix<cplx> u = SquareMatrix<cplx>::identity(n);

  const double scale = std::max(1e-300, max_abs_entry(h));
  const double stop = rel_tol * rel_tol * scale * scale;

  bool converged = (offdiag_norm_sq(h) <= stop);
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(h, u, p, q);
    converged = (offdiag_norm_sq(h) <= stop);
  }
  if (!converged)
    throw std::runtime_error("eig_oracle: no convergence after sweep limit");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return h.at(a, a).real() < h.at(b, b).real();
  });

  EigResult r;
  r.eigenvalues.resize(n);
  r.unitary = SquareMatrix<cplx>(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.eigenvalues[i] = h.at(order[i], order[i]).real();
    for (std::size_t k = 0; k < n; ++k) r.unitary.at(i, k) = u.at(order[i], k);
  }
  return r;
}

double spectral_norm(const SquareMatrix<cplx>& m) {
  SquareMatrix<cplx> gram = m.conj_transpose() * m;
  EigResult r = eig_oracle(gram);
  double lam = r.eigenvalues.back();
  return std::sqrt(std::max(0.0, lam));
}

SquareMatrix<cplx> exp_antihermitian(const SquareMatrix<cplx>& s) {
  const std::size_t n = s.dim();
  // a = i s is Hermitian; exp(s) = exp(-i a) = U^dagger diag(e^{-i lambda}) U
  SquareMatrix<cplx> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a.at(i, j) = cplx(0.0, 1.0) * s.at(i, j);
  EigResult r = eig_oracle(a);
  SquareMatrix<cplx> d(n);
  for (std::size_t i = 0; i < n; ++i)
    d.at(i, i) = std::exp(cplx(0.0, -r.eigenvalues[i]));
  return r.unitary.conj_transpose() * d * r.unitary;
}

}  // namespace effham
