#pragma once

// Linear self-maps of UT_n given by the images of the matrix units, exact
// rank, and the brute-force homogeneity oracle.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "utgrade/grading.hpp"
#include "utgrade/homogeneity.hpp"
#include "utgrade/matrix.hpp"

namespace utgrade {

/// Rank of a list of row vectors by Gaussian elimination.
template <class F>
std::size_t rank(const F& f, std::vector<std::vector<typename F::value_type>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && f.is_zero(rows[pivot][c])) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const auto inv = f.inv(rows[r][c]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (f.is_zero(rows[i][c])) continue;
      const typename F::value_type factor = rows[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= factor * rows[r][j];
    }
    ++r;
  }
  return r;
}

/// A linear map of UT_n, stored as the image of each E_{i,j} in
/// unit_positions(n) order.
template <class F>
class LinearMapOnUnits {
 public:
  using Matrix = UTMatrix<F>;

  LinearMapOnUnits(F field, std::size_t n, std::vector<Matrix> images)
      : field_(std::move(field)), n_(n), images_(std::move(images)) {
    if (images_.size() != n_ * (n_ + 1) / 2) throw MatrixError("one image per matrix unit required");
    for (const auto& m : images_)
      if (m.n() != n_) throw MatrixError("image has wrong dimension");
  }

  static LinearMapOnUnits from_function(const F& field, std::size_t n,
                                        const std::function<Matrix(const Matrix&)>& fn) {
    std::vector<Matrix> images;
    for (const auto& p : unit_positions(n)) images.push_back(fn(Matrix::unit(field, n, p.i, p.j)));
    return LinearMapOnUnits(field, n, std::move(images));
  }

  const F& field() const { return field_; }
  std::size_t n() const { return n_; }
  const Matrix& image(Position p) const { return images_[position_index(n_, p)]; }
  const std::vector<Matrix>& images() const { return images_; }

  Matrix operator()(const Matrix& x) const {
    Matrix out(field_, n_);
    const auto positions = unit_positions(n_);
    for (std::size_t t = 0; t < positions.size(); ++t) {
      const auto& c = x.packed()[t];
      if (!field_.is_zero(c)) out = out + c * images_[t];
    }
    return out;
  }

  bool is_bijective() const {
    std::vector<std::vector<typename F::value_type>> rows;
    for (const auto& m : images_) rows.push_back(m.packed());
    return rank(field_, std::move(rows)) == images_.size();
  }

  friend bool operator==(const LinearMapOnUnits& a, const LinearMapOnUnits& b) {
    return a.n_ == b.n_ && a.images_ == b.images_;
  }

 private:
  F field_;
  std::size_t n_;
  std::vector<Matrix> images_;
};

template <class F>
LinearMapOnUnits<F> canonical_involution_map(const F& field, std::size_t n) {
  return LinearMapOnUnits<F>::from_function(
      field, n, [](const UTMatrix<F>& x) { return canonical_involution(x); });
}

template <class F>
LinearMapOnUnits<F> conjugation_map(const UTMatrix<F>& p) {
  const auto p_inv = block_inverse(p);
  return LinearMapOnUnits<F>::from_function(
      p.field(), p.n(), [&](const UTMatrix<F>& x) { return p_inv * x * p; });
}

template <class F>
LinearMapOnUnits<F> antiautomorphism_map(const UTMatrix<F>& p) {
  const auto p_inv = block_inverse(p);
  return LinearMapOnUnits<F>::from_function(
      p.field(), p.n(), [&](const UTMatrix<F>& x) { return p_inv * canonical_involution(x) * p; });
}

namespace detail {

// reverse = true checks f(xy) = f(y) f(x), otherwise f(xy) = f(x) f(y).
template <class F>
bool respects_unit_products(const LinearMapOnUnits<F>& map, bool reverse) {
  const std::size_t n = map.n();
  const auto& f = map.field();
  if (!map.is_bijective()) return false;
  if (map(UTMatrix<F>::identity(f, n)) != UTMatrix<F>::identity(f, n)) return false;
  const auto positions = unit_positions(n);
  const UTMatrix<F> zero(f, n);
  for (const auto& a : positions) {
    for (const auto& b : positions) {
      const auto& lhs = a.j == b.i ? map.image({a.i, b.j}) : zero;
      const auto rhs = reverse ? map.image(b) * map.image(a) : map.image(a) * map.image(b);
      if (lhs != rhs) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Bijective, unital, and f(E_a E_b) = f(E_b) f(E_a) on all unit pairs.
template <class F>
bool is_antiautomorphism(const LinearMapOnUnits<F>& map) {
  return detail::respects_unit_products(map, true);
}

/// Bijective, unital, and f(E_a E_b) = f(E_a) f(E_b) on all unit pairs.
template <class F>
bool is_automorphism(const LinearMapOnUnits<F>& map) {
  return detail::respects_unit_products(map, false);
}

/// Decides by rank computations whether map(A_g) = A_h for a unique h for
/// every support element g, and whether g -> h permutes the support.
/// Independent of the segment condition: it only looks at spans of images.
template <class F>
std::optional<ThetaMap> oracle_homogeneity(const ElementaryGrading& grading,
                                           const LinearMapOnUnits<F>& map) {
  using Row = std::vector<typename F::value_type>;
  if (map.n() != grading.n()) throw MatrixError("dimension mismatch");
  if (!map.is_bijective()) throw MatrixError("oracle needs a bijective map");
  const auto& f = map.field();
  const std::size_t dim = map.images().size();
  const auto supp = support(grading);

  std::map<GroupElement, std::vector<Row>> unit_rows;
  for (const auto& [h, positions] : supp.components) {
    for (const auto& p : positions) {
      Row r(dim, f.zero());
      r[position_index(grading.n(), p)] = f.one();
      unit_rows[h].push_back(std::move(r));
    }
  }

  ThetaMap theta;
  for (const auto& [g, positions] : supp.components) {
    std::vector<Row> span;
    for (const auto& p : positions) span.push_back(map.image(p).packed());
    const std::size_t r = rank(f, span);
    std::optional<GroupElement> target;
    for (const auto& [h, basis] : unit_rows) {
      if (basis.size() != r) continue;
      auto joint = span;
      joint.insert(joint.end(), basis.begin(), basis.end());
      if (rank(f, std::move(joint)) != r) continue;
      if (target) return std::nullopt;
      target = h;
    }
    if (!target) return std::nullopt;
    theta.mapping.emplace(g, *target);
  }

  std::map<GroupElement, int> hits;
  for (const auto& [_, h] : theta.mapping)
    if (++hits[h] > 1) return std::nullopt;
  theta.tags = classify_theta(theta, grading.group());
  return theta;
}

}  // namespace utgrade
