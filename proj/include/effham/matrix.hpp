#pragma once

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "effham/scalar.hpp"

namespace effham {

// Dense square matrix over a field scalar, row-major.  Hermitian matrices
// (H, D, V, generators) and transient products all use this one carrier;
// Hermiticity is a property enforced at the API boundaries, not by type.
template <class S>
class SquareMatrix {
 public:
  SquareMatrix() : dim_(0) {}
  explicit SquareMatrix(std::size_t dim)
      : dim_(dim), e_(dim * dim, field_traits<S>::zero()) {}

  std::size_t dim() const { return dim_; }

  S& at(std::size_t i, std::size_t j) {
    assert(i < dim_ && j < dim_);
    return e_[i * dim_ + j];
  }
  const S& at(std::size_t i, std::size_t j) const {
    assert(i < dim_ && j < dim_);
    return e_[i * dim_ + j];
  }

  static SquareMatrix identity(std::size_t dim) {
    SquareMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = field_traits<S>::one();
    return m;
  }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    require_same_dim(o, "operator+=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] = e_[i] + o.e_[i];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    require_same_dim(o, "operator-=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] = e_[i] - o.e_[i];
    return *this;
  }
  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) {
    a += b;
    return a;
  }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) {
    a -= b;
    return a;
  }
  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    a.require_same_dim(b, "operator*");
    const std::size_t n = a.dim_;
    SquareMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const S& aik = a.at(i, k);
        if (field_traits<S>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const S& bkj = b.at(k, j);
          if (field_traits<S>::is_zero(bkj)) continue;
          c.at(i, j) = c.at(i, j) + aik * bkj;
        }
      }
    }
    return c;
  }

  SquareMatrix scaled(const S& f) const {
    SquareMatrix c(dim_);
    for (std::size_t i = 0; i < e_.size(); ++i) c.e_[i] = e_[i] * f;
    return c;
  }

  S trace() const {
    S t = field_traits<S>::zero();
    for (std::size_t i = 0; i < dim_; ++i) t = t + at(i, i);
    return t;
  }

  SquareMatrix diagonal_part() const {
    SquareMatrix d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d.at(i, i) = at(i, i);
    return d;
  }
  SquareMatrix offdiagonal_part() const {
    SquareMatrix v(*this);
    for (std::size_t i = 0; i < dim_; ++i) v.at(i, i) = field_traits<S>::zero();
    return v;
  }

  SquareMatrix conj_transpose() const {
    SquareMatrix c(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        c.at(i, j) = field_traits<S>::conj(at(j, i));
    return c;
  }

 private:
  void require_same_dim(const SquareMatrix& o, const char* op) const {
    if (dim_ != o.dim_)
      throw std::invalid_argument(std::string(op) + ": dimension mismatch " +
                                  std::to_string(dim_) + " vs " +
                                  std::to_string(o.dim_));
  }

  std::size_t dim_;
  std::vector<S> e_;
};

template <class S>
SquareMatrix<S> commutator(const SquareMatrix<S>& a, const SquareMatrix<S>& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("commutator: dimension mismatch");
  return a * b - b * a;
}

// C_0(A,B)=B, C_{t+1}(A,B)=[A, C_t(A,B)].  The sequence form makes one
// commutator per advance, which is what the truncated-BCH loop relies on.
template <class S>
class NestedCommutatorSeq {
 public:
  NestedCommutatorSeq(SquareMatrix<S> a, SquareMatrix<S> b)
      : a_(std::move(a)), current_(std::move(b)) {
    if (a_.dim() != current_.dim())
      throw std::invalid_argument("nested_commutator: dimension mismatch");
  }
  const SquareMatrix<S>& current() const { return current_; }
  int level() const { return level_; }
  void advance() {
    current_ = commutator(a_, current_);
    ++level_;
  }

 private:
  SquareMatrix<S> a_;
  SquareMatrix<S> current_;
  int level_ = 0;
};

template <class S>
SquareMatrix<S> nested_commutator(const SquareMatrix<S>& a,
                                  const SquareMatrix<S>& b, int t) {
  if (t < 0) throw std::invalid_argument("nested_commutator: t must be >= 0");
  NestedCommutatorSeq<S> seq(a, b);
  for (int i = 0; i < t; ++i) seq.advance();
  return seq.current();
}

// Sum of |H_mn|^2 over m != n.  The squared quantity, matching the norm
// ledger H' = H - 2|H_jk|^2 of a single rotation.
template <class S>
typename field_traits<S>::real_type offdiag_norm_sq(const SquareMatrix<S>& h) {
  static_assert(!field_traits<S>::is_symbolic,
                "offdiag_norm_sq requires a numeric backend");
  typename field_traits<S>::real_type sum = 0;
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = 0; j < h.dim(); ++j)
      if (i != j) sum += field_traits<S>::abs2(h.at(i, j));
  return sum;
}

template <class S>
double max_abs_entry(const SquareMatrix<S>& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      best = std::max(best, double(scalar_abs(m.at(i, j))));
  return best;
}

// Checks H = H^dagger to `rel_tol` relative and symmetrizes float noise as
// (M + M^dagger)/2; asymmetry above the tolerance is rejected.
inline SquareMatrix<cplx> make_hermitian(const SquareMatrix<cplx>& m,
                                         double rel_tol = 1e-12) {
  const std::size_t n = m.dim();
  double scale = std::max(1e-300, max_abs_entry(m));
  SquareMatrix<cplx> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cplx a = m.at(i, j), b = std::conj(m.at(j, i));
      if (std::abs(a - b) > rel_tol * scale)
        throw std::invalid_argument(
            "make_hermitian: entry (" + std::to_string(i) + "," +
            std::to_string(j) + ") breaks Hermiticity beyond tolerance");
      cplx v = 0.5 * (a + b);
      h.at(i, j) = v;
      h.at(j, i) = std::conj(v);
    }
    h.at(i, i) = cplx(h.at(i, i).real(), 0.0);
  }
  return h;
}

inline bool is_hermitian(const SquareMatrix<cplx>& m, double tol = 1e-12) {
  double scale = std::max(1.0, max_abs_entry(m));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      if (std::abs(m.at(i, j) - std::conj(m.at(j, i))) > tol * scale)
        return false;
  return true;
}

// Flat index of a per-subsystem excitation tuple, lexicographic over dims
// (first subsystem slowest).
inline std::size_t basis_index(const std::vector<int>& label,
                               const std::vector<int>& dims) {
  if (label.size() != dims.size())
    throw std::invalid_argument("basis_index: label/dims size mismatch");
  std::size_t idx = 0;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (label[s] < 0 || label[s] >= dims[s])
      throw std::invalid_argument("basis_index: excitation exceeds truncation");
    idx = idx * static_cast<std::size_t>(dims[s]) +
          static_cast<std::size_t>(label[s]);
  }
  return idx;
}

inline std::vector<int> basis_label(std::size_t index,
                                    const std::vector<int>& dims) {
  std::vector<int> label(dims.size());
  for (std::size_t s = dims.size(); s-- > 0;) {
    label[s] = static_cast<int>(index % static_cast<std::size_t>(dims[s]));
    index /= static_cast<std::size_t>(dims[s]);
  }
  return label;
}

// I x ... x op x ... x I with `op` acting on subsystem `slot`.
template <class S>
SquareMatrix<S> embed_operator(const SquareMatrix<S>& op, std::size_t slot,
                               const std::vector<int>& dims) {
  if (slot >= dims.size())
    throw std::invalid_argument("embed_operator: slot out of range");
  if (op.dim() != static_cast<std::size_t>(dims[slot]))
    throw std::invalid_argument(
        "embed_operator: operator dimension does not match dims[slot]");
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  std::size_t inner = 1;  // product of dims after `slot`
  for (std::size_t s = slot + 1; s < dims.size(); ++s)
    inner *= static_cast<std::size_t>(dims[s]);
  const std::size_t d = static_cast<std::size_t>(dims[slot]);

  SquareMatrix<S> out(total);
  for (std::size_t row = 0; row < total; ++row) {
    const std::size_t rs = (row / inner) % d;
    const std::size_t base = row - rs * inner;
    for (std::size_t cs = 0; cs < d; ++cs) {
      const S& v = op.at(rs, cs);
      if (field_traits<S>::is_zero(v)) continue;
      out.at(row, base + cs * inner) = v;
    }
  }
  return out;
}

}  // namespace effham
