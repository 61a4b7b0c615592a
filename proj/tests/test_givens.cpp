#include <doctest.h>

#include <random>

#include "effham/eig.hpp"
#include "effham/expr.hpp"
#include "effham/givens.hpp"

using namespace effham;

namespace {

SquareMatrix<cplx> random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SquareMatrix<cplx> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h.at(i, i) = cplx(u(rng), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      h.at(i, j) = cplx(u(rng), u(rng));
      h.at(j, i) = std::conj(h.at(i, j));
    }
  }
  return h;
}

}  // namespace

TEST_CASE("make_givens conventions") {
  SquareMatrix<cplx> h(2);

  // zero coupling -> identity rotation
  h.at(0, 0) = 1.0;
  h.at(1, 1) = -1.0;
  auto r0 = make_givens(h, 0, 1);
  CHECK(r0.identity);
  CHECK(r0.c.real() == 1.0);
  CHECK(r0.s.real() == 0.0);

  // kappa = 1: t = sqrt(2) - 1 (theta = pi/4)
  const double d = 0.4;
  h.at(0, 0) = d;
  h.at(1, 1) = -d;
  h.at(0, 1) = d;
  h.at(1, 0) = d;
  auto r1 = make_givens(h, 0, 1);
  CHECK(r1.t.real() == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));

  // resonant: theta = pi/2 exactly
  h.at(0, 0) = 0.0;
  h.at(1, 1) = 0.0;
  auto r2 = make_givens(h, 0, 1);
  CHECK(r2.c.real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(r2.s.real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  CHECK_THROWS_AS(make_givens(h, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_givens(h, 1, 0), std::invalid_argument);

  // c^2 + s^2 = 1 and |s| <= c over random matrices
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    auto m = random_hermitian(5, rng);
    auto r = make_givens(m, 1, 3);
    const double c = r.c.real(), s = r.s.real();
    CHECK(c * c + s * s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(s) <= c + 1e-12);
  }
}

TEST_CASE("apply_givens zeroes the target and keeps the ledger") {
  // 2x2 [[d, g], [g, -d]] -> diag(+-sqrt(d^2+g^2))
  const double d = 0.25, g = 0.6;
  SquareMatrix<cplx> h(2);
  h.at(0, 0) = d;
  h.at(1, 1) = -d;
  h.at(0, 1) = g;
  h.at(1, 0) = g;
  auto hp = apply_givens(h, make_givens(h, 0, 1));
  const double rad = std::hypot(d, g);
  CHECK(hp.at(0, 1) == cplx(0, 0));  // exact zero, set not computed
  CHECK(hp.at(0, 0).real() == doctest::Approx(rad).epsilon(1e-14));
  CHECK(hp.at(1, 1).real() == doctest::Approx(-rad).epsilon(1e-14));

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_hermitian(6, rng);
    std::uniform_int_distribution<std::size_t> pick(0, 5);
    std::size_t j = pick(rng), k = pick(rng);
    if (j == k) continue;
    if (j > k) std::swap(j, k);
    const double before = offdiag_norm_sq(m);
    const double pivot_sq = std::norm(m.at(j, k));
    auto rot = make_givens(m, j, k);
    auto mp = apply_givens(m, rot);

    // norm ledger: ||H'|| = ||H|| - 2|H_jk|^2
    CHECK(offdiag_norm_sq(mp) ==
          doctest::Approx(before - 2 * pivot_sq).epsilon(0).scale(1).epsilon(1e-12));
    // trace preserved
    CHECK(mp.trace().real() == doctest::Approx(m.trace().real()).epsilon(1e-12));
    // eigenvalues preserved vs oracle
    auto e0 = eig_oracle(m).eigenvalues;
    auto e1 = eig_oracle(mp).eigenvalues;
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(e1[i] == doctest::Approx(e0[i]).epsilon(1e-10));
    // level ordering: for delta > 0 the (j,j) entry does not decrease
    const double delta = (m.at(j, j).real() - m.at(k, k).real()) / 2;
    if (delta > 0) {
      CHECK(mp.at(j, j).real() >= m.at(j, j).real() - 1e-12);
      CHECK(mp.at(k, k).real() <= m.at(k, k).real() + 1e-12);
    }
  }
}

TEST_CASE("apply_givens matches the three-level worked example") {
  // rotation on (0,1) reduces the (1,2) coupling to c01 g2 and moves
  // g2 s01 into (0,2)
  const double delta = 0.05, Delta = 0.9, g1 = 0.14, g2 = 0.11;
  SquareMatrix<cplx> h(3);
  h.at(0, 0) = delta;
  h.at(1, 1) = -delta;
  h.at(2, 2) = -Delta;
  h.at(0, 1) = g1;
  h.at(1, 0) = g1;
  h.at(1, 2) = g2;
  h.at(2, 1) = g2;
  auto rot = make_givens(h, 0, 1);
  auto hp = apply_givens(h, rot);
  const double c01 = rot.c.real(), s01 = rot.s.real();
  CHECK(hp.at(1, 2).real() == doctest::Approx(c01 * g2).epsilon(1e-14));
  CHECK(hp.at(0, 2).real() == doctest::Approx(s01 * g2).epsilon(1e-14));
  const double e2 = std::hypot(delta, g1);
  CHECK(hp.at(0, 0).real() == doctest::Approx(e2).epsilon(1e-14));
  CHECK(hp.at(1, 1).real() == doctest::Approx(-e2).epsilon(1e-14));
}

TEST_CASE("stale rotations are rejected") {
  std::mt19937_64 rng(4);
  auto h = random_hermitian(4, rng);
  auto rot = make_givens(h, 0, 1);
  auto moved = h;
  moved.at(0, 0) += 1e-3;
  CHECK_THROWS_AS(apply_givens(moved, rot), StaleRotationError);
  CHECK_NOTHROW(apply_givens_unitary(moved, rot));  // grouped path: no check
}

TEST_CASE("grouped application equals explicit unitary conjugation") {
  std::mt19937_64 rng(31);
  auto h = random_hermitian(5, rng);
  auto rot = make_givens(h, 1, 3);
  // build U explicitly and conjugate
  std::vector<GivensRotation<cplx>> rots{rot};
  auto u = accumulate_unitary(5, rots);
  auto direct = u * h * u.conj_transpose();
  auto fast = apply_givens_unitary(h, rot);
  CHECK(max_abs_entry(direct - fast) < 1e-13);
  // and the exact path agrees where it applies
  auto exact = apply_givens(h, rot);
  CHECK(max_abs_entry(exact - fast) < 1e-13);
}

TEST_CASE("accumulated unitary stays unitary over many rotations") {
  std::mt19937_64 rng(77);
  auto h = random_hermitian(8, rng);
  std::vector<GivensRotation<cplx>> rots;
  auto cur = h;
  for (int i = 0; i < 1000; ++i) {
    auto pivot = select_pivot_largest(cur);
    if (!pivot) break;
    auto r = make_givens(cur, pivot->first, pivot->second);
    cur = apply_givens(cur, r);
    rots.push_back(r);
  }
  auto u = accumulate_unitary(8, rots);
  auto uu = u * u.conj_transpose();
  for (std::size_t i = 0; i < 8; ++i) uu.at(i, i) -= 1.0;
  CHECK(max_abs_entry(uu) < 1e-11);
  // and U H U^dagger equals the iterated result
  CHECK(max_abs_entry(u * h * u.conj_transpose() - cur) < 1e-11);
}

TEST_CASE("pivot selection") {
  SquareMatrix<cplx> d(3);
  d.at(0, 0) = 1.0;
  CHECK(!select_pivot_largest(d).has_value());

  SquareMatrix<cplx> h(4);
  h.at(1, 3) = 0.9;
  h.at(3, 1) = 0.9;
  h.at(0, 1) = 0.2;
  h.at(1, 0) = 0.2;
  auto p = select_pivot_largest(h);
  CHECK(p->first == 1);
  CHECK(p->second == 3);

  // tie-break: smallest j then k
  SquareMatrix<cplx> t(3);
  t.at(0, 1) = 0.5;
  t.at(1, 0) = 0.5;
  t.at(0, 2) = 0.5;
  t.at(2, 0) = 0.5;
  auto q = select_pivot_largest(t);
  CHECK(q->first == 0);
  CHECK(q->second == 1);

  PivotCycler cyc;
  CHECK(cyc.next(3) == std::make_pair<std::size_t, std::size_t>(0, 1));
  CHECK(cyc.next(3) == std::make_pair<std::size_t, std::size_t>(0, 2));
  CHECK(cyc.next(3) == std::make_pair<std::size_t, std::size_t>(1, 2));
  CHECK(cyc.next(3) == std::make_pair<std::size_t, std::size_t>(0, 1));
}

TEST_CASE("symbolic rotation evaluates to the numeric one") {
  // real-symmetric 3x3 under both backends
  const double delta = 0.07, Delta = 0.8, g1 = 0.12, g2 = 0.1;
  SquareMatrix<cplx> hn(3);
  hn.at(0, 0) = delta;
  hn.at(1, 1) = -delta;
  hn.at(2, 2) = -Delta;
  hn.at(0, 1) = g1;
  hn.at(1, 0) = g1;
  hn.at(1, 2) = g2;
  hn.at(2, 1) = g2;

  SquareMatrix<Expr> hs(3);
  hs.at(0, 0) = Expr::parameter("delta");
  hs.at(1, 1) = -Expr::parameter("delta");
  hs.at(2, 2) = -Expr::parameter("Delta");
  hs.at(0, 1) = hs.at(1, 0) = Expr::parameter("g1");
  hs.at(1, 2) = hs.at(2, 1) = Expr::parameter("g2");

  ParamEnv env{{"delta", delta}, {"Delta", Delta}, {"g1", g1}, {"g2", g2}};

  auto rn = make_givens(hn, 0, 1);
  auto hpn = apply_givens(hn, rn);
  auto rs = make_givens(hs, 0, 1);
  auto hps = apply_givens(hs, rs);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(eval(hps.at(i, j), env) ==
            doctest::Approx(hpn.at(i, j).real()).epsilon(1e-12));

  // the symbolic graph faults on the resonance it cannot branch on
  ParamEnv resonant{{"delta", 0.0}, {"Delta", Delta}, {"g1", g1}, {"g2", g2}};
  CHECK_THROWS_AS(eval(hps.at(0, 0), resonant), ExprError);
}
