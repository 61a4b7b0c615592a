#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "effham/eig.hpp"
#include "effham/matrix.hpp"

namespace effham {

struct DegenerateGapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Anti-Hermitian generator with S[j][k] = H[j][k]/(H[j][j]-H[k][k]) on the
// targeted pairs, satisfying [S, D] = -V_targeted by construction.
template <class S>
struct Generator {
  SquareMatrix<S> matrix;
  std::vector<std::pair<std::size_t, std::size_t>> support;
};

inline constexpr double kDegenerateGapFloor = 1e-12;

template <class S>
Generator<S> build_generator(
    const SquareMatrix<S>& h,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  using T = field_traits<S>;
  Generator<S> gen{SquareMatrix<S>(h.dim()), {}};
  for (const auto& [j, k] : pairs) {
    if (j == k || j > k || k >= h.dim())
      throw std::invalid_argument("build_generator: bad pair");
    const S v = h.at(j, k);
    if (T::is_zero(v)) continue;
    const S gap = h.at(j, j) - h.at(k, k);
    if constexpr (!T::is_symbolic) {
      if (double(scalar_abs(gap)) <= kDegenerateGapFloor)
        throw DegenerateGapError(
            "build_generator: degenerate gap on pair (" + std::to_string(j) +
            "," + std::to_string(k) +
            "); perturbative generator undefined, use the iterative route");
    }
    gen.matrix.at(j, k) = v / gap;
    gen.matrix.at(k, j) = -T::conj(gen.matrix.at(j, k));
    gen.support.emplace_back(j, k);
  }
  return gen;
}

// All nonzero off-diagonal pairs.
template <class S>
Generator<S> build_generator_all(const SquareMatrix<S>& h) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j + 1 < h.dim(); ++j)
    for (std::size_t k = j + 1; k < h.dim(); ++k)
      if (!field_traits<S>::is_zero(h.at(j, k))) pairs.emplace_back(j, k);
  return build_generator(h, pairs);
}

// max |[S,D] + V_t| over the support; should vanish identically.
template <class S>
double generator_defect(const Generator<S>& gen, const SquareMatrix<S>& h) {
  static_assert(!field_traits<S>::is_symbolic);
  double worst = 0.0;
  for (const auto& [j, k] : gen.support) {
    const S lhs = gen.matrix.at(j, k) * (h.at(k, k) - h.at(j, j)) + h.at(j, k);
    worst = std::max(worst, double(scalar_abs(lhs)));
  }
  return worst;
}

namespace detail {

inline double exact_factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;  // exact in double through 18!
}

template <class S>
S bch_weight(int t) {  // t/(t+1)!
  using T = field_traits<S>;
  if constexpr (T::is_symbolic) {
    return T::from_real(double(t) / exact_factorial(t + 1));
  } else {
    return T::from_real(double(t)) / T::from_real(exact_factorial(t + 1));
  }
}

template <class S>
S inv_factorial_weight(int t) {  // 1/t!
  using T = field_traits<S>;
  if constexpr (T::is_symbolic) {
    return T::from_real(1.0 / exact_factorial(t));
  } else {
    return T::one() / T::from_real(exact_factorial(t));
  }
}

}  // namespace detail

// One truncated-BCH iteration.
//
// Full mode:   H' = D + sum_{t=1}^{m-1} t/(t+1)! C_t(S, V)
// Block mode:  H' = D + sum_{t=1}^{m-1} t/(t+1)! C_t(S, V_inter)
//                     + sum_{t=0}^{m}   1/t!      C_t(S, V_intra)
// with S built from the inter-block couplings only.
//
// `commutators` counts BCH levels: m-1 in full mode, m in block mode (one
// level evaluates the inter and intra chains together).
template <class S>
SquareMatrix<S> rswt_step(const SquareMatrix<S>& h, int m,
                          const std::vector<int>* block_of = nullptr,
                          long* commutators = nullptr,
                          Generator<S>* generator_out = nullptr) {
  using T = field_traits<S>;
  if (m < 1) throw std::invalid_argument("rswt_step: m must be >= 1");
  const std::size_t n = h.dim();
  const SquareMatrix<S> d = h.diagonal_part();
  long count = 0;

  SquareMatrix<S> out(n);
  if (!block_of) {
    const SquareMatrix<S> v = h.offdiagonal_part();
    Generator<S> gen = build_generator_all(h);
    out = d;
    NestedCommutatorSeq<S> chain(gen.matrix, v);
    for (int t = 1; t <= m - 1; ++t) {
      chain.advance();
      ++count;
      out += chain.current().scaled(detail::bch_weight<S>(t));
    }
    if (generator_out) *generator_out = std::move(gen);
  } else {
    if (block_of->size() != n)
      throw std::invalid_argument("rswt_step: block map size mismatch");
    SquareMatrix<S> v_inter(n), v_intra(n);
    std::vector<std::pair<std::size_t, std::size_t>> inter_pairs;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (j == k) continue;
        if ((*block_of)[j] != (*block_of)[k]) {
          v_inter.at(j, k) = h.at(j, k);
          if (j < k && !T::is_zero(h.at(j, k))) inter_pairs.emplace_back(j, k);
        } else {
          v_intra.at(j, k) = h.at(j, k);
        }
      }
    Generator<S> gen = build_generator(h, inter_pairs);
    out = d + v_intra;
    NestedCommutatorSeq<S> inter_chain(gen.matrix, v_inter);
    NestedCommutatorSeq<S> intra_chain(gen.matrix, v_intra);
    for (int t = 1; t <= m; ++t) {
      ++count;
      intra_chain.advance();
      out += intra_chain.current().scaled(detail::inv_factorial_weight<S>(t));
      if (t <= m - 1) {
        inter_chain.advance();
        out += inter_chain.current().scaled(detail::bch_weight<S>(t));
      }
    }
    if (generator_out) *generator_out = std::move(gen);
  }
  if (commutators) *commutators = count;
  return out;
}

struct RswtPlan {
  int order = 2;                // K
  int n_max = 1;                // floor(log2 K)
  std::vector<int> m_schedule;  // m_n = floor(K / 2^n)

  static RswtPlan for_order(int k) {
    if (k < 2) throw std::invalid_argument("RswtPlan: K must be >= 2");
    RswtPlan p;
    p.order = k;
    p.n_max = static_cast<int>(std::floor(std::log2(double(k))));
    for (int n = 0; n < p.n_max; ++n) p.m_schedule.push_back(k >> n);
    return p;
  }
};

template <class S>
struct RswtStepRecord {
  SquareMatrix<S> diag;       // D_n
  SquareMatrix<S> offdiag;    // V_n
  SquareMatrix<S> generator;  // S_{n+1}
  SquareMatrix<S> next;       // H_{n+1}
  int m = 0;
  long commutators = 0;
};

template <class S>
struct RswtTrace {
  RswtPlan plan;
  std::vector<RswtStepRecord<S>> steps;
  long total_commutators = 0;
  double s1_norm = 0.0;        // spectral norm of the first generator
  bool s_norm_warning = false; // ||S_1|| >= 1/2: truncation bound void
};

// Algorithm: run the halving schedule m_n = floor(K/2^n) for
// n = 0 .. floor(log2 K)-1.  The diagonal of the result approximates the
// eigenvalues with error O(lambda^{K+1}).
template <class S>
std::pair<SquareMatrix<S>, RswtTrace<S>> rswt(
    const SquareMatrix<S>& h, int k,
    const std::vector<int>* block_of = nullptr) {
  RswtTrace<S> trace;
  trace.plan = RswtPlan::for_order(k);
  SquareMatrix<S> cur = h;
  for (int n = 0; n < trace.plan.n_max; ++n) {
    RswtStepRecord<S> rec;
    rec.m = trace.plan.m_schedule[static_cast<std::size_t>(n)];
    rec.diag = cur.diagonal_part();
    rec.offdiag = cur - rec.diag;
    Generator<S> gen;
    rec.next = rswt_step(cur, rec.m, block_of, &rec.commutators, &gen);
    rec.generator = std::move(gen.matrix);
    if constexpr (std::is_same_v<S, cplx>) {
      if (n == 0) {
        trace.s1_norm = spectral_norm(rec.generator);
        trace.s_norm_warning = (trace.s1_norm >= 0.5);
      }
    }
    trace.total_commutators += rec.commutators;
    cur = rec.next;
    trace.steps.push_back(std::move(rec));
  }
  return {cur, std::move(trace)};
}

// N_SWT = 2^K - K - 1
inline long commutator_count_swt(int k) {
  if (k < 2) throw std::invalid_argument("commutator_count_swt: K must be >= 2");
  return (1L << k) - k - 1;
}

// N_RSWT = sum_{n=0}^{floor(log2 K)-1} floor(K/2^n) - 1
inline long commutator_count_rswt(int k) {
  if (k < 2)
    throw std::invalid_argument("commutator_count_rswt: K must be >= 2");
  const int n_max = static_cast<int>(std::floor(std::log2(double(k))));
  long total = 0;
  for (int n = 0; n < n_max; ++n) total += (k >> n) - 1;
  return total;
}

// Truncation error of one iteration at level m:
//   ||H' - H'_infinity|| <= (2^m/m!) ||S||^m/(1-||S||) ||V||
// valid for ||S|| < 1/2.
inline double truncation_error_bound(double s_norm, double v_norm, int m) {
  if (m < 1) throw std::invalid_argument("truncation_error_bound: m >= 1");
  if (s_norm < 0.0 || v_norm < 0.0)
    throw std::invalid_argument("truncation_error_bound: negative norm");
  if (s_norm >= 0.5)
    throw std::domain_error(
        "truncation_error_bound: requires ||S|| < 1/2, got " +
        std::to_string(s_norm));
  return std::pow(2.0, m) / detail::exact_factorial(m) *
         std::pow(s_norm, m) / (1.0 - s_norm) * v_norm;
}

// The leading-order transformation, named for use as a reference method.
// Identical to rswt_step(h, 2) by definition.
template <class S>
SquareMatrix<S> swt_leading_order(const SquareMatrix<S>& h) {
  return rswt_step(h, 2);
}

}  // namespace effham
