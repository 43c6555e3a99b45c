#pragma once

// Elementary gradings on UT_n: deg E_{i,i+1} = g_i, so deg E_{i,j} is the
// ordered product g_i ... g_{j-1} and every diagonal unit is neutral.

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "utgrade/group.hpp"

namespace utgrade {

class GradingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Position (i,j) of the matrix unit E_{i,j}, 1-based, i <= j.
struct Position {
  std::size_t i = 0;
  std::size_t j = 0;

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
};

/// Segment (start, length) of the defining tuple; length 0 stands for a
/// diagonal unit.
struct Segment {
  std::size_t start = 0;
  std::size_t length = 0;

  friend bool operator==(const Segment&, const Segment&) = default;
  friend auto operator<=>(const Segment&, const Segment&) = default;
};

/// All positions of UT_n in row-major order.
inline std::vector<Position> unit_positions(std::size_t n) {
  std::vector<Position> out;
  out.reserve(n * (n + 1) / 2);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) out.push_back({i, j});
  return out;
}

/// Index of (i,j) in unit_positions(n).
inline std::size_t position_index(std::size_t n, Position p) {
  // rows 1..i-1 contribute n, n-1, ..., n-i+2 entries
  return (p.i - 1) * n - (p.i - 1) * (p.i - 2) / 2 + (p.j - p.i);
}

class ElementaryGrading {
 public:
  ElementaryGrading(Group group, std::size_t n, std::vector<GroupElement> tuple)
      : group_(std::move(group)), n_(n), tuple_(std::move(tuple)) {
    if (n_ < 1) throw GradingError("dimension must be at least 1");
    if (tuple_.size() != n_ - 1)
      throw GradingError("tuple for UT_" + std::to_string(n_) + " needs " +
                         std::to_string(n_ - 1) + " entries, got " +
                         std::to_string(tuple_.size()));
    for (const auto& g : tuple_)
      if (!group_.contains(g)) throw GradingError("tuple entry is not in group " + group_.spec());
    // seg_[i-1][k] = s(i,k) for 1 <= i <= n, 0 <= k <= n-i
    seg_.resize(n_);
    for (std::size_t i = 1; i <= n_; ++i) {
      auto& row = seg_[i - 1];
      row.reserve(n_ - i + 1);
      row.push_back(group_.identity());
      for (std::size_t k = 1; k + i <= n_; ++k) row.push_back(group_.op(row.back(), tuple_[i + k - 2]));
    }
  }

  const Group& group() const { return group_; }
  std::size_t n() const { return n_; }
  const std::vector<GroupElement>& tuple() const { return tuple_; }

  const GroupElement& degree(std::size_t i, std::size_t j) const {
    if (i < 1 || j > n_ || i > j)
      throw GradingError("position (" + std::to_string(i) + "," + std::to_string(j) +
                         ") is not in UT_" + std::to_string(n_));
    return seg_[i - 1][j - i];
  }
  const GroupElement& degree(Position p) const { return degree(p.i, p.j); }

  /// s(i,k) = deg E_{i,i+k}.
  const GroupElement& segment(Segment s) const { return degree(s.start, s.start + s.length); }

  /// The segment whose unit is the reflection of E_{i,i+k}: (n-i-k+1, k).
  Segment mirror(Segment s) const {
    if (s.start < 1 || s.start + s.length > n_)
      throw GradingError("segment out of range");
    return {n_ - s.start - s.length + 1, s.length};
  }

 private:
  Group group_;
  std::size_t n_;
  std::vector<GroupElement> tuple_;
  std::vector<std::vector<GroupElement>> seg_;
};

/// Homogeneous components of a grading, keyed by degree.
struct SupportMap {
  std::map<GroupElement, std::vector<Position>> components;

  std::vector<GroupElement> support() const {
    std::vector<GroupElement> out;
    out.reserve(components.size());
    for (const auto& [g, _] : components) out.push_back(g);
    return out;
  }
  bool contains(const GroupElement& g) const { return components.count(g) != 0; }
  const std::vector<Position>& component(const GroupElement& g) const {
    auto it = components.find(g);
    if (it == components.end()) throw GradingError("element is not in the support");
    return it->second;
  }
};

/// Places every position in the component of its degree.
inline SupportMap support(const ElementaryGrading& grading) {
  SupportMap out;
  for (const auto& p : unit_positions(grading.n())) out.components[grading.degree(p)].push_back(p);
  return out;
}

/// {g_i ... g_{i+k-1}} together with e, evaluated directly from the tuple.
inline std::set<GroupElement> support_closed_form(const ElementaryGrading& grading) {
  const auto& group = grading.group();
  std::set<GroupElement> out{group.identity()};
  const std::size_t m = grading.tuple().size();
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t k = 1; i + k - 1 <= m; ++k)
      out.insert(segment_product(group, grading.tuple(), i, k));
  return out;
}

/// True iff A_g A_h != 0, i.e. some E_{i,j} of degree g and E_{j,k} of
/// degree h share the middle index.
inline bool component_product_nonzero(const SupportMap& supp, const GroupElement& g,
                                      const GroupElement& h) {
  const auto& left = supp.component(g);
  const auto& right = supp.component(h);
  for (const auto& a : left)
    for (const auto& b : right)
      if (a.j == b.i) return true;
  return false;
}

inline bool component_product_nonzero(const ElementaryGrading& grading, const GroupElement& g,
                                      const GroupElement& h) {
  return component_product_nonzero(support(grading), g, h);
}

}  // namespace utgrade
