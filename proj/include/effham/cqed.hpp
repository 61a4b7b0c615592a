#pragma once

#include <string>
#include <vector>

#include "effham/expr.hpp"
#include "effham/matrix.hpp"

namespace effham {

// Physical parameters in GHz with hbar = 1.  Whether values are nu or
// omega = 2 pi nu is the caller's bookkeeping; `freq_convention` records it
// for report labels only.
struct CqedParams {
  double omega1 = 5.0;
  double omega2 = 5.0;
  double alpha1 = -0.3;
  double alpha2 = -0.3;
  double g1 = 0.0;  // also the direct qubit-qubit coupling of the two-qubit models
  double g2 = 0.0;
  double omega_r = 0.0;
  double Omega = 0.0;
  double omega_d = 0.0;
  std::vector<int> levels{4};  // per-subsystem truncation; single entry broadcasts
  std::string freq_convention = "nu";

  int level(std::size_t subsystem) const {
    if (levels.empty()) return 4;
    if (subsystem < levels.size()) return levels[subsystem];
    return levels.back();
  }
};

template <class S>
struct CqedValues {
  S omega1, omega2, alpha1, alpha2, g1, g2, omega_r, Omega, omega_d;
};

template <class S>
CqedValues<S> lift_params(const CqedParams& p) {
  using T = field_traits<S>;
  return {T::from_real(p.omega1),  T::from_real(p.omega2),
          T::from_real(p.alpha1),  T::from_real(p.alpha2),
          T::from_real(p.g1),      T::from_real(p.g2),
          T::from_real(p.omega_r), T::from_real(p.Omega),
          T::from_real(p.omega_d)};
}

inline CqedValues<Expr> symbolic_cqed_values() {
  return {Expr::parameter("omega1"),  Expr::parameter("omega2"),
          Expr::parameter("alpha1"),  Expr::parameter("alpha2"),
          Expr::parameter("g1"),      Expr::parameter("g2"),
          Expr::parameter("omega_r"), Expr::parameter("Omega"),
          Expr::parameter("omega_d")};
}

inline ParamEnv env_of(const CqedParams& p) {
  return {{"omega1", p.omega1},   {"omega2", p.omega2}, {"alpha1", p.alpha1},
          {"alpha2", p.alpha2},   {"g1", p.g1},         {"g2", p.g2},
          {"omega_r", p.omega_r}, {"Omega", p.Omega},   {"omega_d", p.omega_d}};
}

namespace detail {
template <class S>
S int_sqrt(double x) {  // sqrt of a small ladder integer, as a field constant
  return field_traits<S>::from_real(std::sqrt(x));
}
}  // namespace detail

// Two directly coupled Duffing qubits, basis (p, q) lexicographic:
//   H = sum_q omega_q n_q + (alpha_q/2) n_q(n_q - 1) + g (b1 b2^+ + b1^+ b2)
// with g = g1.
template <class S>
SquareMatrix<S> duffing_two_qubit(const CqedValues<S>& v, int lv1, int lv2) {
  using T = field_traits<S>;
  const std::vector<int> dims{lv1, lv2};
  SquareMatrix<S> h(static_cast<std::size_t>(lv1) * lv2);
  const S half = T::from_real(0.5);
  for (int p = 0; p < lv1; ++p)
    for (int q = 0; q < lv2; ++q) {
      const std::size_t i = basis_index({p, q}, dims);
      h.at(i, i) = v.omega1 * T::from_real(p) +
                   v.alpha1 * half * T::from_real(p * (p - 1)) +
                   v.omega2 * T::from_real(q) +
                   v.alpha2 * half * T::from_real(q * (q - 1));
      // b1 b2^+ : (p,q) -> (p-1, q+1)
      if (p >= 1 && q + 1 < lv2) {
        const std::size_t j = basis_index({p - 1, q + 1}, dims);
        const S amp = v.g1 * detail::int_sqrt<S>(double(p) * (q + 1));
        h.at(j, i) = h.at(j, i) + amp;
        h.at(i, j) = h.at(i, j) + amp;
      }
    }
  return h;
}

// The two-excitation subspace model in the basis (|20>, |11>, |02>):
//   [[ delta, g1, 0 ], [ g1, -delta, g2 ], [ 0, g2, -Delta ]]
template <class S>
SquareMatrix<S> three_level_cz(const S& delta, const S& Delta, const S& g1,
                               const S& g2) {
  SquareMatrix<S> h(3);
  h.at(0, 0) = delta;
  h.at(1, 1) = -delta;
  h.at(2, 2) = -Delta;
  h.at(0, 1) = g1;
  h.at(1, 0) = g1;
  h.at(1, 2) = g2;
  h.at(2, 1) = g2;
  return h;
}

// Qubit-resonator-qubit, basis (l, p, q) lexicographic, resonator first:
//   H = sum_q [omega_q n_q + (alpha_q/2) n_q(n_q-1) + g_q (b_q a^+ + b_q^+ a)]
//       + omega_r a^+ a
template <class S>
SquareMatrix<S> qubit_resonator_qubit(const CqedValues<S>& v, int lr, int l1,
                                      int l2) {
  using T = field_traits<S>;
  const std::vector<int> dims{lr, l1, l2};
  SquareMatrix<S> h(static_cast<std::size_t>(lr) * l1 * l2);
  const S half = T::from_real(0.5);
  for (int l = 0; l < lr; ++l)
    for (int p = 0; p < l1; ++p)
      for (int q = 0; q < l2; ++q) {
        const std::size_t i = basis_index({l, p, q}, dims);
        h.at(i, i) = v.omega1 * T::from_real(p) +
                     v.alpha1 * half * T::from_real(p * (p - 1)) +
                     v.omega2 * T::from_real(q) +
                     v.alpha2 * half * T::from_real(q * (q - 1)) +
                     v.omega_r * T::from_real(l);
        // b1 a^+ : (l,p,q) -> (l+1, p-1, q)
        if (l + 1 < lr && p >= 1) {
          const std::size_t j = basis_index({l + 1, p - 1, q}, dims);
          const S amp = v.g1 * detail::int_sqrt<S>(double(l + 1) * p);
          h.at(j, i) = h.at(j, i) + amp;
          h.at(i, j) = h.at(i, j) + amp;
        }
        // b2 a^+ : (l,p,q) -> (l+1, p, q-1)
        if (l + 1 < lr && q >= 1) {
          const std::size_t j = basis_index({l + 1, p, q - 1}, dims);
          const S amp = v.g2 * detail::int_sqrt<S>(double(l + 1) * q);
          h.at(j, i) = h.at(j, i) + amp;
          h.at(i, j) = h.at(i, j) + amp;
        }
      }
  return h;
}

// Cross-resonance driven frame on the two-qubit space:
//   H_static + (Omega/2)(b1 + b1^+) - omega_d (n1 + n2)
template <class S>
SquareMatrix<S> cr_driven_frame(const CqedValues<S>& v, int lv1, int lv2) {
  using T = field_traits<S>;
  if (lv1 < 3)
    throw std::invalid_argument(
        "cr_driven_frame: control qubit needs at least 3 levels");
  const std::vector<int> dims{lv1, lv2};
  SquareMatrix<S> h = duffing_two_qubit(v, lv1, lv2);
  const S half = T::from_real(0.5);
  for (int p = 0; p < lv1; ++p)
    for (int q = 0; q < lv2; ++q) {
      const std::size_t i = basis_index({p, q}, dims);
      h.at(i, i) = h.at(i, i) - v.omega_d * T::from_real(p + q);
      if (p + 1 < lv1) {
        const std::size_t j = basis_index({p + 1, q}, dims);
        const S amp = v.Omega * half * detail::int_sqrt<S>(double(p + 1));
        h.at(j, i) = h.at(j, i) + amp;
        h.at(i, j) = h.at(i, j) + amp;
      }
    }
  return h;
}

// Numeric conveniences.
SquareMatrix<cplx> duffing_two_qubit(const CqedParams& p);
SquareMatrix<cplx> qubit_resonator_qubit(const CqedParams& p);
SquareMatrix<cplx> cr_driven_frame(const CqedParams& p);
SquareMatrix<cplx> three_level_cz(double delta, double Delta, double g1,
                                  double g2);

}  // namespace effham
