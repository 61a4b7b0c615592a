#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

#if defined(__SIZEOF_FLOAT128__) && !defined(EFFHAM_NO_FLOAT128)
#define EFFHAM_HAVE_FLOAT128 1
extern "C" __float128 sqrtq(__float128);
extern "C" __float128 fabsq(__float128);
#endif

namespace effham {

using cplx = std::complex<double>;

// Field operations the matrix/rotation templates need, for each scalar
// backend.  Real backends (double, __float128, Expr) have trivial conj;
// Expr is additionally "symbolic": no value comparisons are possible, so
// zero tests are structural and branch-free formulas must be used.
template <class S>
struct field_traits;

template <>
struct field_traits<double> {
  using real_type = double;
  static constexpr bool is_symbolic = false;
  static constexpr bool is_complex = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_real(double x) { return x; }
  static double conj(double x) { return x; }
  static double abs2(double x) { return x * x; }
  static double sqrt(double x) { return std::sqrt(x); }
  static bool is_zero(double x) { return x == 0.0; }
  static double real_part(double x) { return x; }
};

template <>
struct field_traits<cplx> {
  using real_type = double;
  static constexpr bool is_symbolic = false;
  static constexpr bool is_complex = true;
  static cplx zero() { return {0.0, 0.0}; }
  static cplx one() { return {1.0, 0.0}; }
  static cplx from_real(double x) { return {x, 0.0}; }
  static cplx conj(cplx x) { return std::conj(x); }
  static double abs2(cplx x) { return std::norm(x); }
  static cplx sqrt(cplx x) { return std::sqrt(x); }
  static bool is_zero(cplx x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static double real_part(cplx x) { return x.real(); }
};

#ifdef EFFHAM_HAVE_FLOAT128
template <>
struct field_traits<__float128> {
  using real_type = __float128;
  static constexpr bool is_symbolic = false;
  static constexpr bool is_complex = false;
  static __float128 zero() { return 0; }
  static __float128 one() { return 1; }
  static __float128 from_real(double x) { return x; }
  static __float128 conj(__float128 x) { return x; }
  static __float128 abs2(__float128 x) { return x * x; }
  static __float128 sqrt(__float128 x) { return ::sqrtq(x); }
  static bool is_zero(__float128 x) { return x == 0; }
  static __float128 real_part(__float128 x) { return x; }
};
#endif

template <class S>
inline typename field_traits<S>::real_type scalar_abs(S x) {
  using T = field_traits<S>;
  if constexpr (T::is_complex) {
    return std::abs(x);
  } else {
#ifdef EFFHAM_HAVE_FLOAT128
    if constexpr (std::is_same_v<S, __float128>) return ::fabsq(x);
#endif
    return std::abs(x);
  }
}

}  // namespace effham
