#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "effham/cqed.hpp"
#include "effham/eig.hpp"
#include "effham/npad.hpp"
#include "effham/rswt.hpp"

namespace effham {

enum class ZzMethod {
  TwoLevel,
  TwoRotation,
  ThreeRotation,
  KerrApprox,
  LeadingPerturbation,
  Zeta4,
  Zeta6,
  ZetaDisp,
  Npad8,
  Numeric,
};

const char* zz_method_name(ZzMethod m);

struct ZzEstimate {
  double value = 0.0;  // GHz
  ZzMethod method = ZzMethod::Numeric;
  std::optional<double> eps1, eps2;  // analytic error estimates where defined
  bool ambiguous = false;            // numeric assignment near a level crossing
  std::optional<double> alt_value;   // the competing branch when ambiguous
};

struct ResonanceError : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

// c = cos(theta/2), s = sin(theta/2) for theta = arctan(kappa), through the
// algebraic half-angle route.  The symbolic form is branch-free and faults
// at kappa = 0 resonances on evaluation.
template <class S>
void half_angle_cs(const S& kappa, S& c, S& s) {
  using T = field_traits<S>;
  const S one = T::one();
  S t;
  if constexpr (T::is_symbolic) {
    t = (T::sqrt(kappa * kappa + one) - one) / kappa;
  } else {
    if (T::is_zero(kappa)) {
      t = T::zero();
    } else {
      t = kappa / (one + T::sqrt(one + kappa * kappa));
    }
  }
  c = one / T::sqrt(one + t * t);
  s = t * c;
}

// E_2 = delta sqrt(1 + g^2/delta^2): the |11>/|20> avoided-crossing branch
// that keeps the level ordering (delta = 0 resolves to the +g branch).
template <class S>
S two_level_energy(const S& delta, const S& g1) {
  using T = field_traits<S>;
  if constexpr (T::is_symbolic) {
    return delta * T::sqrt(T::one() + (g1 * g1) / (delta * delta));
  } else {
    const double sgn = double(T::real_part(delta)) >= 0.0 ? 1.0 : -1.0;
    return T::from_real(sgn) * T::sqrt(delta * delta + g1 * g1);
  }
}

}  // namespace detail

// zeta = delta - delta sqrt(1 + g1^2/delta^2); -g1 in the resonant limit.
template <class S>
S zeta_two_level_t(const S& delta, const S& g1) {
  return delta - detail::two_level_energy(delta, g1);
}

// The two-Givens pipeline on the three-level model, literally: rotations on
// (0,1) then (1,2), zeta = H''[1][1] + delta.  `rotations` = 3 adds the
// third rotation on (0,1) again.
template <class S>
S zeta_two_rotation_t(const S& delta, const S& Delta, const S& g1, const S& g2,
                      int rotations = 2) {
  SquareMatrix<S> h = three_level_cz(delta, Delta, g1, g2);
  std::vector<std::pair<std::size_t, std::size_t>> targets = {{0, 1}, {1, 2}};
  if (rotations >= 3) targets.emplace_back(0, 1);
  auto res = npad_targeted(h, targets, /*grouped=*/false);
  return res.matrix.at(1, 1) + delta;
}

// Closed form of the two-rotation energy:
//   H''_11 = -E2 + (Delta-E2)/2 (sqrt(1 + (2 c01 g2/(Delta-E2))^2) - 1)
double zeta_two_rotation_closed_form(double delta, double Delta, double g1,
                                     double g2);

// Kerr-limit approximation with its error estimates:
//   H''_11 ~ -E2 + c01^2 g2^2/(Delta - E2)
//   eps1 = c01^4 g2^4/(Delta-E2)^3,  eps2 <= g2^4 s01^2/(g1 (Delta-E2)^2)
ZzEstimate zeta_kerr_approx(double delta, double Delta, double g1, double g2);

ZzEstimate zeta_two_level(double delta, double g1);
ZzEstimate zeta_two_rotation(double delta, double Delta, double g1, double g2,
                             int rotations = 2);

// Reference reconstruction of the leading-order comparison curve: one
// leading-order transformation of the 3x3 model, zeta = H'[1][1] + delta.
ZzEstimate zeta_leading_perturbation(double delta, double Delta, double g1,
                                     double g2);

// --- quasi-dispersive closed forms (qubit-resonator-qubit) ----------------
//
// Detunings Delta_q = omega_q - omega_r.  The lambda^4 coefficient is
//   zeta4 = 2 g1^2 g2^2 [ 1/(D1^2(Dm - a2)) - 1/(D2^2(Dm + a1))
//                         + (D1 + D2)/(D1^2 D2^2) ]
// which is exactly the sum of the virtual-transmon and virtual-resonator
// contributions below (zeta4 == zeta_t + zeta_r identically).

template <class S>
S zeta4_t(const S& d1, const S& d2, const S& a1, const S& a2, const S& g1,
          const S& g2) {
  using T = field_traits<S>;
  const S two = T::from_real(2.0);
  const S gg = g1 * g1 * g2 * g2;
  const S dm = d1 - d2;
  return two * gg *
         (T::one() / (d1 * d1 * (dm - a2)) - T::one() / (d2 * d2 * (dm + a1)) +
          (d1 + d2) / (d1 * d1 * d2 * d2));
}

// Effective couplings to the doubly excited qubit states (leading order):
//   V_{011,020} = sqrt2/2 g1 g2 (1/(a1+D1) + 1/D2)   and the 1<->2 swap.
template <class S>
S coupling_v20_t(const S& d1, const S& d2, const S& a1, const S& g1,
                 const S& g2) {
  using T = field_traits<S>;
  const S s2 = T::from_real(std::sqrt(2.0) / 2.0);
  return s2 * g1 * g2 * (T::one() / (a1 + d1) + T::one() / d2);
}

// Strong-dispersive estimate: the shifts of |011> from |020> and |002> with
// bare gaps -(Dm + a1) and +(Dm - a2).
template <class S>
S zeta_disp_t(const S& d1, const S& d2, const S& a1, const S& a2, const S& g1,
              const S& g2) {
  const S v20 = coupling_v20_t(d1, d2, a1, g1, g2);
  const S v02 = coupling_v20_t(d2, d1, a2, g2, g1);
  const S dm = d1 - d2;
  return v02 * v02 / (dm - a2) - v20 * v20 / (dm + a1);
}

template <class S>
S zeta_t_contribution_t(const S& d1, const S& d2, const S& a1, const S& a2,
                        const S& g1, const S& g2) {
  using T = field_traits<S>;
  const S gg = g1 * g1 * g2 * g2;
  const S half = T::from_real(0.5);
  const S three_half = T::from_real(1.5);
  return zeta_disp_t(d1, d2, a1, a2, g1, g2) -
         half * gg / (d2 * (d1 + a1) * (d1 + a1)) -
         three_half * gg / (d2 * d2 * (d1 + a1)) -
         half * gg / (d1 * (d2 + a2) * (d2 + a2)) -
         three_half * gg / (d1 * d1 * (d2 + a2));
}

template <class S>
S zeta_r_contribution_t(const S& d1, const S& d2, const S& g1, const S& g2) {
  using T = field_traits<S>;
  const S two = T::from_real(2.0);
  const S gg = g1 * g1 * g2 * g2;
  return two * gg / (d1 * d2 * d2) + two * gg / (d1 * d1 * d2);
}

// lambda^6-complete estimate: the doubly-excited-state quotients with
// next-order couplings and gaps, plus the remaining pure lambda^4 and
// lambda^6 rational terms.
template <class S>
S zeta6_t(const S& d1, const S& d2, const S& a1, const S& a2, const S& g1,
          const S& g2) {
  using T = field_traits<S>;
  auto C = [](double x) { return T::from_real(x); };
  const S s2 = C(std::sqrt(2.0));

  auto v4_02 = [&](const S& D1, const S& D2, const S& A2, const S& G1,
                   const S& G2) {
    // V^{(1,4)}_{011,002}; the 020 partner is the 1<->2 swap
    const S e = A2 + D2;
    return -s2 * G1 * G2 * G2 * G2 / (C(4) * e * e * e) +
           s2 * G1 * G2 * G2 * G2 / (C(8) * D2 * D2 * e) -
           C(7.0 / 4.0) * s2 * G1 * G2 * G2 * G2 / (D1 * e * e) +
           C(1.5) * s2 * G1 * G2 * G2 * G2 / (D1 * D2 * e) -
           C(5.0 / 8.0) * s2 * G1 * G2 * G2 * G2 / (D1 * D2 * D2) -
           C(7.0 / 8.0) * s2 * G1 * G1 * G1 * G2 / (D1 * D1 * e) -
           s2 * G1 * G1 * G1 * G2 / (C(8) * D1 * D1 * D1);
  };
  auto gap_20 = [&](const S& D1, const S& D2, const S& A1, const S& G1,
                    const S& G2) {
    // Delta E^{(2,0)} + Delta E^{(2,2)} between |011> and |020>
    return -A1 - D1 + D2 - C(2) * G1 * G1 / (A1 + D1) + G2 * G2 / D2 +
           G1 * G1 / D1;
  };
  const S v20 = coupling_v20_t(d1, d2, a1, g1, g2) + v4_02(d2, d1, a1, g2, g1);
  const S v02 = coupling_v20_t(d2, d1, a2, g2, g1) + v4_02(d1, d2, a2, g1, g2);
  const S quot = v20 * v20 / gap_20(d1, d2, a1, g1, g2) +
                 v02 * v02 / gap_20(d2, d1, a2, g2, g1);

  const S gg = g1 * g1 * g2 * g2;
  const S corr = -C(0.5) * gg / (d2 * (d1 + a1) * (d1 + a1)) -
                 C(1.5) * gg / (d2 * d2 * (d1 + a1)) -
                 C(0.5) * gg / (d1 * (d2 + a2) * (d2 + a2)) -
                 C(1.5) * gg / (d1 * d1 * (d2 + a2));

  auto rest = [&](const S& G1, const S& G2, const S& D1, const S& D2,
                  const S& A1, const S& A2) {
    // zeta^{(6)}_{rest, g1^2 g2^4}; the swapped call gives the g1^4 g2^2 half
    const S e1 = D1 + A1;
    const S e2 = D2 + A2;
    const S m = G1 * G1 * G2 * G2 * G2 * G2;
    return C(9.0 / 4.0) * m / (D2 * D2 * D2 * e1 * e1) +
           C(23.0 / 4.0) * m / (D2 * D2 * D2 * D2 * e1) +
           C(0.5) * m / (D1 * e2 * e2 * e2 * e2) -
           C(0.25) * m / (D1 * D2 * D2 * e2 * e2) -
           C(4) * m / (D1 * D1 * D1 * D2 * e2) +
           C(3.5) * m / (D1 * D1 * e2 * e2 * e2) -
           C(2.5) * m / (D1 * D1 * D2 * e2 * e2) +
           C(0.75) * m / (D1 * D1 * D2 * D2 * e2) -
           C(4) * m / (D1 * D1 * D2 * D2 * D2) +
           C(4) * m / (D1 * D1 * D1 * e2 * e2) -
           C(6) * m / (D1 * D2 * D2 * D2 * D2);
  };
  return quot + corr + zeta_r_contribution_t(d1, d2, g1, g2) +
         rest(g1, g2, d1, d2, a1, a2) + rest(g2, g1, d2, d1, a2, a1);
}

ZzEstimate zeta4(double d1, double d2, double a1, double a2, double g1,
                 double g2);
// (zeta_t, zeta_r); sums to zeta4 identically
std::pair<double, double> zeta4_contributions(double d1, double d2, double a1,
                                              double a2, double g1, double g2);
ZzEstimate zeta_disp(double d1, double d2, double a1, double a2, double g1,
                     double g2);
ZzEstimate zeta6(double d1, double d2, double a1, double a2, double g1,
                 double g2);

// LHS of the zero-point circle (Dp - a)^2 + Dm^2 - a^2.
double zero_circle_residual(double delta_plus, double delta_minus,
                            double alpha);

// --- numeric ZZ from the eigensolver ---------------------------------------

// Eigenvalue index for each requested bare label, by maximum overlap.
struct StateAssignment {
  std::map<std::vector<int>, std::size_t> index_of;
  std::map<std::vector<int>, double> overlap_sq;
  bool ambiguous = false;  // some overlap^2 <= 0.5 or a collision
};

StateAssignment assign_states(const EigResult& eig,
                              const std::vector<int>& dims,
                              const std::vector<std::vector<int>>& labels);

// zeta~ = E11 - E10 - E01 + E00 from the assigned eigenvalues of `h`.
// `labels` are the four computational labels in the order 00, 01, 10, 11.
ZzEstimate zeta_numeric(const SquareMatrix<cplx>& h,
                        const std::vector<int>& dims,
                        const std::vector<std::vector<int>>& labels);

// The qubit-resonator-qubit zeta from detunings (resonator-first labels).
ZzEstimate zeta_numeric_qrq(const CqedParams& p);

// Two grouped steps of four rotations on the static Hamiltonian:
//   step 1: 010-100, 001-100, 011-101, 011-110
//   step 2: 011-200, 001-010, 011-002, 011-020
// then zeta from the rotated diagonal.
template <class S>
S zeta_npad8_t(const CqedValues<S>& v, int lr, int l1, int l2) {
  const std::vector<int> dims{lr, l1, l2};
  auto ix = [&](int l, int p, int q) { return basis_index({l, p, q}, dims); };
  auto pair_of = [&](std::size_t a, std::size_t b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  const std::vector<std::pair<std::size_t, std::size_t>> step1 = {
      pair_of(ix(0, 1, 0), ix(1, 0, 0)),
      pair_of(ix(0, 0, 1), ix(1, 0, 0)),
      pair_of(ix(0, 1, 1), ix(1, 0, 1)),
      pair_of(ix(0, 1, 1), ix(1, 1, 0)),
  };
  const std::vector<std::pair<std::size_t, std::size_t>> step2 = {
      pair_of(ix(0, 1, 1), ix(2, 0, 0)),
      pair_of(ix(0, 0, 1), ix(0, 1, 0)),
      pair_of(ix(0, 1, 1), ix(0, 0, 2)),
      pair_of(ix(0, 1, 1), ix(0, 2, 0)),
  };
  SquareMatrix<S> h = qubit_resonator_qubit(v, lr, l1, l2);
  h = npad_targeted(h, step1, /*grouped=*/true).matrix;
  h = npad_targeted(h, step2, /*grouped=*/true).matrix;
  const std::size_t i11 = ix(0, 1, 1), i10 = ix(0, 1, 0), i01 = ix(0, 0, 1),
                    i00 = ix(0, 0, 0);
  return h.at(i11, i11) - h.at(i10, i10) - h.at(i01, i01) + h.at(i00, i00);
}

ZzEstimate zeta_npad8(const CqedParams& p);

// --- cross resonance --------------------------------------------------------

// Closed-form ZX Pauli coefficient from the four-rotation dressed-frame
// analysis, normalized as tr(H_eff Z(x)X)/4:
//   theta_1 = arctan(Omega/Dm),  theta_2 = arctan(sqrt2 Omega/(2 Dm + a1))
template <class S>
S omega_zx_analytical_t(const S& g, const S& Omega, const S& dm, const S& a1) {
  using T = field_traits<S>;
  auto C = [](double x) { return T::from_real(x); };
  S c1, s1, c2, s2;
  detail::half_angle_cs(Omega / dm, c1, s1);
  detail::half_angle_cs(C(std::sqrt(2.0)) * Omega / (C(2) * dm + a1), c2, s2);
  const S two = C(2);
  const S core =
      (s1 * s1 * c2 * c2 - c1 * c1) / (two * dm) -
      s2 * s2 / (dm + a1) +
      ((s1 * s1 - c1 * c1 * c2 * c2) * (a1 - dm) -
       C(std::sqrt(2.0)) * a1 * s1 * s2 * c2) /
          (two * dm * (dm + a1));
  return g * Omega * core / two;
}

double omega_zx_analytical(double g, double Omega, double delta_minus,
                           double alpha1);

// Numeric baseline: rotate away the inter-block couplings of the driven
// frame, with the computational space split by the control state
// ({00,01} | {10,11} | leakage), then read tr(H_block ZX)/4.
double omega_zx_numeric(const CqedParams& p, double tol = 1e-12);

// --- small utilities --------------------------------------------------------

// Roots of f on [lo, hi] located by sign change over `samples` points and
// refined by bisection.  NaN samples are skipped.
std::vector<double> find_roots(const std::function<double(double)>& f,
                               double lo, double hi, int samples = 200,
                               double tol = 1e-12);

// Sign changes of the discrete slope of `values` (local extrema count).
int slope_sign_changes(const std::vector<double>& values);

}  // namespace effham
