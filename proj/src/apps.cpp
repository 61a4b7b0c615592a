#include "effham/apps.hpp"

#include <algorithm>
#include <cmath>

namespace effham {

const char* zz_method_name(ZzMethod m) {
  switch (m) {
    case ZzMethod::TwoLevel: return "two_level";
    case ZzMethod::TwoRotation: return "two_rotation";
    case ZzMethod::ThreeRotation: return "three_rotation";
    case ZzMethod::KerrApprox: return "kerr_approx";
    case ZzMethod::LeadingPerturbation: return "leading_perturbation";
    case ZzMethod::Zeta4: return "zeta4";
    case ZzMethod::Zeta6: return "zeta6";
    case ZzMethod::ZetaDisp: return "zeta_disp";
    case ZzMethod::Npad8: return "npad8";
    case ZzMethod::Numeric: return "numeric";
  }
  return "?";
}

namespace {

double two_level_energy_d(double delta, double g1) {
  const double sgn = delta >= 0.0 ? 1.0 : -1.0;
  return sgn * std::hypot(delta, g1);
}

double c01_of(double delta, double g1) {
  if (g1 == 0.0) return 1.0;
  const double t01 = (two_level_energy_d(delta, g1) - delta) / g1;
  return 1.0 / std::sqrt(t01 * t01 + 1.0);
}

}  // namespace

ZzEstimate zeta_two_level(double delta, double g1) {
  return {zeta_two_level_t<double>(delta, g1), ZzMethod::TwoLevel, {}, {}};
}

ZzEstimate zeta_two_rotation(double delta, double Delta, double g1, double g2,
                             int rotations) {
  return {zeta_two_rotation_t<double>(delta, Delta, g1, g2, rotations),
          rotations >= 3 ? ZzMethod::ThreeRotation : ZzMethod::TwoRotation,
          {},
          {}};
}

double zeta_two_rotation_closed_form(double delta, double Delta, double g1,
                                     double g2) {
  const double e2 = two_level_energy_d(delta, g1);
  const double c01 = c01_of(delta, g1);
  const double g12 = std::abs(c01 * g2);
  const double d12 = (Delta - e2) / 2.0;
  double correction;  // t_{12} g_{12}
  if (g12 == 0.0) {
    correction = 0.0;
  } else if (d12 == 0.0) {
    correction = g12;  // theta = pi/2
  } else {
    const double kappa = g12 / d12;
    correction = d12 * (std::sqrt(1.0 + kappa * kappa) - 1.0);
  }
  return -e2 + correction + delta;
}

ZzEstimate zeta_kerr_approx(double delta, double Delta, double g1, double g2) {
  const double e2 = two_level_energy_d(delta, g1);
  if (Delta <= e2)
    throw ResonanceError(
        "zeta_kerr_approx: requires Delta > E2 (far-detuned third level)");
  const double c01 = c01_of(delta, g1);
  const double gap = Delta - e2;
  ZzEstimate z;
  z.method = ZzMethod::KerrApprox;
  z.value = -e2 + c01 * c01 * g2 * g2 / gap + delta;
  z.eps1 = std::pow(c01, 4) * std::pow(g2, 4) / std::pow(gap, 3);
  const double s01_sq = 1.0 - c01 * c01;
  z.eps2 = (g1 > 0.0)
               ? std::optional<double>(std::pow(g2, 4) * s01_sq /
                                       (g1 * gap * gap))
               : std::nullopt;
  return z;
}

ZzEstimate zeta_leading_perturbation(double delta, double Delta, double g1,
                                     double g2) {
  SquareMatrix<cplx> h = three_level_cz(delta, Delta, g1, g2);
  SquareMatrix<cplx> hp = swt_leading_order(h);
  return {hp.at(1, 1).real() + delta, ZzMethod::LeadingPerturbation, {}, {}};
}

namespace {

void require_nonresonant(double v, const char* name) {
  if (std::abs(v) <= kDegenerateGapFloor)
    throw ResonanceError(std::string("resonant denominator: ") + name);
}

}  // namespace

ZzEstimate zeta4(double d1, double d2, double a1, double a2, double g1,
                 double g2) {
  require_nonresonant(d1, "Delta1");
  require_nonresonant(d2, "Delta2");
  require_nonresonant(d1 - d2 - a2, "Delta- - alpha2");
  require_nonresonant(d1 - d2 + a1, "Delta- + alpha1");
  return {zeta4_t<double>(d1, d2, a1, a2, g1, g2), ZzMethod::Zeta4, {}, {}};
}

std::pair<double, double> zeta4_contributions(double d1, double d2, double a1,
                                              double a2, double g1,
                                              double g2) {
  require_nonresonant(d1, "Delta1");
  require_nonresonant(d2, "Delta2");
  require_nonresonant(d1 - d2 - a2, "Delta- - alpha2");
  require_nonresonant(d1 - d2 + a1, "Delta- + alpha1");
  require_nonresonant(d1 + a1, "Delta1 + alpha1");
  require_nonresonant(d2 + a2, "Delta2 + alpha2");
  return {zeta_t_contribution_t<double>(d1, d2, a1, a2, g1, g2),
          zeta_r_contribution_t<double>(d1, d2, g1, g2)};
}

ZzEstimate zeta_disp(double d1, double d2, double a1, double a2, double g1,
                     double g2) {
  require_nonresonant(d1 - d2 - a2, "Delta- - alpha2");
  require_nonresonant(d1 - d2 + a1, "Delta- + alpha1");
  require_nonresonant(d1 + a1, "Delta1 + alpha1");
  require_nonresonant(d2 + a2, "Delta2 + alpha2");
  require_nonresonant(d1, "Delta1");
  require_nonresonant(d2, "Delta2");
  return {zeta_disp_t<double>(d1, d2, a1, a2, g1, g2), ZzMethod::ZetaDisp,
          {}, {}};
}

ZzEstimate zeta6(double d1, double d2, double a1, double a2, double g1,
                 double g2) {
  require_nonresonant(d1, "Delta1");
  require_nonresonant(d2, "Delta2");
  require_nonresonant(d1 + a1, "Delta1 + alpha1");
  require_nonresonant(d2 + a2, "Delta2 + alpha2");
  return {zeta6_t<double>(d1, d2, a1, a2, g1, g2), ZzMethod::Zeta6, {}, {}};
}

double zero_circle_residual(double delta_plus, double delta_minus,
                            double alpha) {
  return (delta_plus - alpha) * (delta_plus - alpha) +
         delta_minus * delta_minus - alpha * alpha;
}

StateAssignment assign_states(const EigResult& eig,
                              const std::vector<int>& dims,
                              const std::vector<std::vector<int>>& labels) {
  StateAssignment a;
  std::vector<std::size_t> used;
  for (const auto& label : labels) {
    const std::size_t b = basis_index(label, dims);
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
      const double ov = eig.overlap_sq(i, b);
      if (ov > best) {
        best = ov;
        best_i = i;
      }
    }
    if (best <= 0.5) a.ambiguous = true;
    if (std::find(used.begin(), used.end(), best_i) != used.end())
      a.ambiguous = true;
    used.push_back(best_i);
    a.index_of[label] = best_i;
    a.overlap_sq[label] = best;
  }
  return a;
}

ZzEstimate zeta_numeric(const SquareMatrix<cplx>& h,
                        const std::vector<int>& dims,
                        const std::vector<std::vector<int>>& labels) {
  if (labels.size() != 4)
    throw std::invalid_argument("zeta_numeric: need the four computational labels");
  const EigResult eig = eig_oracle(h);
  const StateAssignment a = assign_states(eig, dims, labels);
  auto e = [&](int i) { return eig.eigenvalues[a.index_of.at(labels[i])]; };
  ZzEstimate z;
  z.method = ZzMethod::Numeric;
  z.value = e(3) - e(2) - e(1) + e(0);
  z.ambiguous = a.ambiguous;
  if (a.ambiguous) {
    // competing branch: swap the worst-overlap label to its runner-up
    std::vector<int> worst;
    double worst_ov = 2.0;
    for (const auto& [label, ov] : a.overlap_sq)
      if (ov < worst_ov) {
        worst_ov = ov;
        worst = label;
      }
    const std::size_t b = basis_index(worst, dims);
    const std::size_t best_i = a.index_of.at(worst);
    double second = -1.0;
    std::size_t second_i = best_i;
    for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
      if (i == best_i) continue;
      const double ov = eig.overlap_sq(i, b);
      if (ov > second) {
        second = ov;
        second_i = i;
      }
    }
    const double sign =
        (worst == labels[3] || worst == labels[0]) ? 1.0 : -1.0;
    z.alt_value = z.value + sign * (eig.eigenvalues[second_i] -
                                    eig.eigenvalues[best_i]);
  }
  return z;
}

ZzEstimate zeta_numeric_qrq(const CqedParams& p) {
  const std::vector<int> dims{p.level(0), p.level(1), p.level(2)};
  return zeta_numeric(qubit_resonator_qubit(p), dims,
                      {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}});
}

ZzEstimate zeta_npad8(const CqedParams& p) {
  const double v = zeta_npad8_t<double>(lift_params<double>(p), p.level(0),
                                        p.level(1), p.level(2));
  return {v, ZzMethod::Npad8, {}, {}};
}

double omega_zx_analytical(double g, double Omega, double delta_minus,
                           double alpha1) {
  require_nonresonant(delta_minus, "Delta-");
  require_nonresonant(2.0 * delta_minus + alpha1, "2 Delta- + alpha1");
  return omega_zx_analytical_t<double>(g, Omega, delta_minus, alpha1);
}

double omega_zx_numeric(const CqedParams& p, double tol) {
  const int lv1 = p.level(0), lv2 = p.level(1);
  const std::vector<int> dims{lv1, lv2};
  auto ix = [&](int a, int b) { return basis_index({a, b}, dims); };
  SquareMatrix<cplx> h = cr_driven_frame(p);

  std::vector<std::vector<std::size_t>> partition;
  partition.push_back({ix(0, 0), ix(0, 1)});
  partition.push_back({ix(1, 0), ix(1, 1)});
  std::vector<std::size_t> leakage;
  for (std::size_t i = 0; i < h.dim(); ++i) {
    if (i == ix(0, 0) || i == ix(0, 1) || i == ix(1, 0) || i == ix(1, 1))
      continue;
    leakage.push_back(i);
  }
  partition.push_back(leakage);

  NpadConfig cfg;
  cfg.tolerance = tol;
  cfg.max_rotations = 100000;
  NpadResult r = npad_block(h, partition, cfg);
  if (!r.converged)
    throw std::runtime_error("omega_zx_numeric: block iteration did not converge");
  // tr(B ZX)/4 over the ordered computational block (00, 01, 10, 11)
  const double zx = (r.matrix.at(ix(0, 0), ix(0, 1)).real() -
                     r.matrix.at(ix(1, 0), ix(1, 1)).real()) /
                    2.0;
  return zx;
}

std::vector<double> find_roots(const std::function<double(double)>& f,
                               double lo, double hi, int samples, double tol) {
  std::vector<double> roots;
  double prev_x = lo, prev_v = f(lo);
  for (int i = 1; i <= samples; ++i) {
    const double x = lo + (hi - lo) * i / samples;
    const double v = f(x);
    if (std::isfinite(prev_v) && std::isfinite(v) && prev_v * v < 0.0) {
      double a = prev_x, b = x, fa = prev_v;
      while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fa * fm <= 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_v = v;
  }
  return roots;
}

int slope_sign_changes(const std::vector<double>& values) {
  int changes = 0;
  double prev = 0.0;
  bool have_prev = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || !std::isfinite(values[i - 1])) {
      have_prev = false;
      continue;
    }
    const double d = values[i] - values[i - 1];
    if (d == 0.0) continue;
    if (have_prev && prev * d < 0.0) ++changes;
    prev = d;
    have_prev = true;
  }
  return changes;
}

}  // namespace effham
