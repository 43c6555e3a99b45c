#pragma once

// Exact upper triangular matrices over a field, the reflection involution
// and the recursive block inverse.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "utgrade/field.hpp"
#include "utgrade/grading.hpp"

namespace utgrade {

class MatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// n x n upper triangular matrix; entries are stored packed in
/// unit_positions(n) order and strictly lower entries are zero.
template <class F>
class UTMatrix {
 public:
  using value_type = typename F::value_type;

  UTMatrix(F field, std::size_t n)
      : field_(std::move(field)), n_(n), zero_(field_.zero()),
        entries_(n * (n + 1) / 2, zero_) {}

  /// Upper-triangle entries listed row by row.
  UTMatrix(F field, std::size_t n, std::vector<value_type> packed) : UTMatrix(std::move(field), n) {
    if (packed.size() != entries_.size())
      throw MatrixError("UT_" + std::to_string(n) + " needs " + std::to_string(entries_.size()) +
                        " entries, got " + std::to_string(packed.size()));
    entries_ = std::move(packed);
  }

  static UTMatrix identity(const F& field, std::size_t n) {
    UTMatrix m(field, n);
    for (std::size_t i = 1; i <= n; ++i) m.set(i, i, field.one());
    return m;
  }

  static UTMatrix unit(const F& field, std::size_t n, std::size_t i, std::size_t j) {
    UTMatrix m(field, n);
    m.set(i, j, field.one());
    return m;
  }

  const F& field() const { return field_; }
  std::size_t n() const { return n_; }
  const std::vector<value_type>& packed() const { return entries_; }

  const value_type& at(std::size_t i, std::size_t j) const {
    check(i, j, true);
    return i > j ? zero_ : entries_[position_index(n_, {i, j})];
  }

  void set(std::size_t i, std::size_t j, value_type v) {
    check(i, j, false);
    entries_[position_index(n_, {i, j})] = std::move(v);
  }

  bool is_invertible() const {
    for (std::size_t i = 1; i <= n_; ++i)
      if (field_.is_zero(at(i, i))) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& v : entries_)
      if (!field_.is_zero(v)) return false;
    return true;
  }

  friend UTMatrix operator*(const UTMatrix& a, const UTMatrix& b) {
    a.same_shape(b);
    UTMatrix c(a.field_, a.n_);
    for (std::size_t i = 1; i <= a.n_; ++i)
      for (std::size_t j = i; j <= a.n_; ++j) {
        value_type s = a.field_.zero();
        for (std::size_t k = i; k <= j; ++k) s += a.at(i, k) * b.at(k, j);
        c.set(i, j, std::move(s));
      }
    return c;
  }

  friend UTMatrix operator+(const UTMatrix& a, const UTMatrix& b) {
    a.same_shape(b);
    UTMatrix c = a;
    for (std::size_t t = 0; t < c.entries_.size(); ++t) c.entries_[t] += b.entries_[t];
    return c;
  }

  friend UTMatrix operator-(const UTMatrix& a, const UTMatrix& b) {
    a.same_shape(b);
    UTMatrix c = a;
    for (std::size_t t = 0; t < c.entries_.size(); ++t) c.entries_[t] -= b.entries_[t];
    return c;
  }

  UTMatrix operator-() const {
    UTMatrix c = *this;
    for (auto& v : c.entries_) v = -v;
    return c;
  }

  friend UTMatrix operator*(const value_type& s, const UTMatrix& a) {
    UTMatrix c = a;
    for (auto& v : c.entries_) v = s * v;
    return c;
  }

  friend bool operator==(const UTMatrix& a, const UTMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const UTMatrix& a, const UTMatrix& b) { return !(a == b); }

  /// `[[a,b],[0,c]]` with entries in field notation.
  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 1; i <= n_; ++i) {
      out += i > 1 ? ",[" : "[";
      for (std::size_t j = 1; j <= n_; ++j) {
        if (j > 1) out += ',';
        out += field_.format(at(i, j));
      }
      out += ']';
    }
    return out + "]";
  }

 private:
  void check(std::size_t i, std::size_t j, bool allow_lower) const {
    if (i < 1 || j < 1 || i > n_ || j > n_)
      throw MatrixError("index (" + std::to_string(i) + "," + std::to_string(j) +
                        ") out of range for UT_" + std::to_string(n_));
    if (!allow_lower && i > j)
      throw MatrixError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") lies below the diagonal");
  }
  void same_shape(const UTMatrix& b) const {
    if (n_ != b.n_) throw MatrixError("dimension mismatch");
  }

  F field_;
  std::size_t n_;
  value_type zero_;
  std::vector<value_type> entries_;
};

/// Parses the row-major upper-triangle entry list `a,b,c,...`.
template <class F>
UTMatrix<F> parse_ut_matrix(const F& field, std::size_t n, std::string_view text) {
  std::vector<typename F::value_type> packed;
  std::string s = detail::trim(text);
  if (!s.empty())
    for (const auto& tok : detail::split_top_level(s)) packed.push_back(field.parse(tok));
  return UTMatrix<F>(field, n, std::move(packed));
}

/// E_{i,j} -> E_{n-j+1,n-i+1}: reflection along the secondary diagonal.
template <class F>
UTMatrix<F> canonical_involution(const UTMatrix<F>& m) {
  const std::size_t n = m.n();
  UTMatrix<F> out(m.field(), n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) out.set(n - j + 1, n - i + 1, m.at(i, j));
  return out;
}

namespace detail {

// Dense rectangular block used by the block inverse.
template <class F>
struct Dense {
  using V = typename F::value_type;
  std::size_t rows, cols;
  std::vector<V> a;

  Dense(const F& f, std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, f.zero()) {}
  V& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const V& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

template <class F>
Dense<F> multiply(const F& f, const Dense<F>& x, const Dense<F>& y) {
  Dense<F> z(f, x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (f.is_zero(x(i, k))) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
    }
  return z;
}

// Rows/cols [r0, r1) x [c0, c1) of m, 1-based half-open.
template <class F>
Dense<F> block(const UTMatrix<F>& m, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
  Dense<F> d(m.field(), r1 - r0, c1 - c0);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) d(i - r0, j - c0) = m.at(i, j);
  return d;
}

template <class F>
UTMatrix<F> principal(const UTMatrix<F>& m, std::size_t first, std::size_t last) {
  UTMatrix<F> out(m.field(), last - first + 1);
  for (std::size_t i = first; i <= last; ++i)
    for (std::size_t j = i; j <= last; ++j) out.set(i - first + 1, j - first + 1, m.at(i, j));
  return out;
}

template <class F>
Dense<F> dense(const UTMatrix<F>& m) {
  return block(m, 1, m.n() + 1, 1, m.n() + 1);
}

}  // namespace detail

template <class F>
UTMatrix<F> block_inverse(const UTMatrix<F>& p);

/// Inverse through the 3x3 block split at pivot k (1 < k < n):
///
///   [A u B]^-1   [A^-1  -A^-1 u x^-1   A^-1 (u x^-1 v - B) C^-1]
///   [0 x v]    = [0      x^-1          -x^-1 v C^-1            ]
///   [0 0 C]      [0      0              C^-1                   ]
///
/// with A^-1 and C^-1 computed recursively.
template <class F>
UTMatrix<F> block_inverse(const UTMatrix<F>& p, std::size_t k) {
  const F& f = p.field();
  const std::size_t n = p.n();
  if (!p.is_invertible()) throw MatrixError("matrix is singular (zero diagonal entry)");
  if (n < 3 || k <= 1 || k >= n)
    throw MatrixError("pivot " + std::to_string(k) + " needs 1 < k < n with n >= 3");

  const auto a_inv = detail::dense(block_inverse(detail::principal(p, 1, k - 1)));
  const auto c_inv = detail::dense(block_inverse(detail::principal(p, k + 1, n)));
  const auto u = detail::block(p, 1, k, k, k + 1);
  const auto v = detail::block(p, k, k + 1, k + 1, n + 1);
  const auto b = detail::block(p, 1, k, k + 1, n + 1);
  const auto x_inv = f.inv(p.at(k, k));

  // -A^-1 u x^-1
  auto top_mid = detail::multiply(f, a_inv, u);
  for (auto& e : top_mid.a) e = -(e * x_inv);
  // -x^-1 v C^-1
  auto mid_right = detail::multiply(f, v, c_inv);
  for (auto& e : mid_right.a) e = -(e * x_inv);
  // A^-1 (u x^-1 v - B) C^-1
  auto inner = detail::multiply(f, u, v);
  for (std::size_t t = 0; t < inner.a.size(); ++t) inner.a[t] = inner.a[t] * x_inv - b.a[t];
  const auto top_right = detail::multiply(f, detail::multiply(f, a_inv, inner), c_inv);

  UTMatrix<F> out(f, n);
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) out.set(i, j, a_inv(i - 1, j - 1));
    out.set(i, k, top_mid(i - 1, 0));
    for (std::size_t j = k + 1; j <= n; ++j) out.set(i, j, top_right(i - 1, j - k - 1));
  }
  out.set(k, k, x_inv);
  for (std::size_t j = k + 1; j <= n; ++j) out.set(k, j, mid_right(0, j - k - 1));
  for (std::size_t i = k + 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) out.set(i, j, c_inv(i - k - 1, j - k - 1));
  return out;
}

/// Block inverse with pivot ceil(n/2); n = 1, 2 use the closed forms.
template <class F>
UTMatrix<F> block_inverse(const UTMatrix<F>& p) {
  const F& f = p.field();
  const std::size_t n = p.n();
  if (!p.is_invertible()) throw MatrixError("matrix is singular (zero diagonal entry)");
  if (n == 0) return p;
  if (n == 1) return UTMatrix<F>(f, 1, {f.inv(p.at(1, 1))});
  if (n == 2) {
    const auto a_inv = f.inv(p.at(1, 1));
    const auto c_inv = f.inv(p.at(2, 2));
    return UTMatrix<F>(f, 2, {a_inv, -(p.at(1, 2) * a_inv * c_inv), c_inv});
  }
  return block_inverse(p, (n + 1) / 2);
}

/// P^-1 X P.
template <class F>
UTMatrix<F> conjugate(const UTMatrix<F>& p, const UTMatrix<F>& x) {
  if (p.n() != x.n()) throw MatrixError("dimension mismatch");
  return block_inverse(p) * x * p;
}

/// P^-1 X° P, where ° is the reflection involution.
template <class F>
UTMatrix<F> antiauto_apply(const UTMatrix<F>& p, const UTMatrix<F>& x) {
  if (p.n() != x.n()) throw MatrixError("dimension mismatch");
  return block_inverse(p) * canonical_involution(x) * p;
}

/// +1 if P° = P, -1 if P° = -P, empty otherwise.
template <class F>
std::optional<int> involution_sign(const UTMatrix<F>& p) {
  if (!p.is_invertible()) throw MatrixError("matrix is singular (zero diagonal entry)");
  const auto reflected = canonical_involution(p);
  if (reflected == p) return 1;
  if (reflected == -p) return -1;
  return std::nullopt;
}

/// The degree g shared by every nonzero entry, or empty if the entries mix
/// degrees. The zero matrix lies in A_e.
template <class F>
std::optional<GroupElement> is_homogeneous_matrix(const ElementaryGrading& grading,
                                                  const UTMatrix<F>& p) {
  if (p.n() != grading.n()) throw MatrixError("dimension mismatch");
  std::optional<GroupElement> degree;
  for (const auto& pos : unit_positions(p.n())) {
    if (p.field().is_zero(p.at(pos.i, pos.j))) continue;
    const auto& d = grading.degree(pos);
    if (!degree) degree = d;
    else if (*degree != d) return std::nullopt;
  }
  return degree ? degree : grading.group().identity();
}

/// M commutes with every matrix unit.
template <class F>
bool commutes_with_all_units(const UTMatrix<F>& m) {
  for (const auto& pos : unit_positions(m.n())) {
    const auto e = UTMatrix<F>::unit(m.field(), m.n(), pos.i, pos.j);
    if (m * e != e * m) return false;
  }
  return true;
}

template <class F>
bool is_scalar(const UTMatrix<F>& m) {
  return m == m.at(1, 1) * UTMatrix<F>::identity(m.field(), m.n());
}

/// Visits every invertible n x n upper triangular matrix over F_p.
inline void for_each_invertible_ut(const PrimeField& field, std::size_t n,
                                   const std::function<void(const UTMatrix<PrimeField>&)>& fn) {
  const auto positions = unit_positions(n);
  const std::uint32_t p = field.characteristic();
  std::vector<std::uint32_t> digits(positions.size(), 0);
  for (std::size_t t = 0; t < positions.size(); ++t)
    if (positions[t].i == positions[t].j) digits[t] = 1;
  UTMatrix<PrimeField> m(field, n);
  for (;;) {
    for (std::size_t t = 0; t < positions.size(); ++t)
      m.set(positions[t].i, positions[t].j, Residue(digits[t], p));
    fn(m);
    // Odometer, last position fastest; diagonal digits run over 1..p-1.
    std::size_t t = positions.size();
    for (;;) {
      if (t == 0) return;
      --t;
      const bool diag = positions[t].i == positions[t].j;
      if (++digits[t] < p) break;
      digits[t] = diag ? 1 : 0;
    }
  }
}

/// Random invertible matrix: uniform nonzero diagonal, uniform off-diagonal.
template <class F, class Rng>
UTMatrix<F> random_invertible_ut(const F& field, std::size_t n, Rng& rng) {
  UTMatrix<F> m(field, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j)
      m.set(i, j, i == j ? field.random_nonzero(rng) : field.random(rng));
  return m;
}

template <class F, class Rng>
UTMatrix<F> random_ut(const F& field, std::size_t n, Rng& rng) {
  UTMatrix<F> m(field, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) m.set(i, j, field.random(rng));
  return m;
}

}  // namespace utgrade
