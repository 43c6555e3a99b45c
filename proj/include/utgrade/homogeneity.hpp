#pragma once

// Decision procedure for homogeneity of the reflection involution on a
// graded UT_n, and construction of the support permutation theta.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "utgrade/grading.hpp"
#include "utgrade/group.hpp"

namespace utgrade {

struct ThetaTags {
  bool graded = false;
  bool degree_inverting = false;
  bool other = false;

  friend bool operator==(const ThetaTags&, const ThetaTags&) = default;

  /// "graded", "degree-inverting", "graded+degree-inverting" or "other".
  std::string label() const {
    if (graded && degree_inverting) return "graded+degree-inverting";
    if (graded) return "graded";
    if (degree_inverting) return "degree-inverting";
    return other ? "other" : "";
  }

  static std::optional<ThetaTags> from_label(std::string_view s) {
    if (s == "graded") return ThetaTags{true, false, false};
    if (s == "degree-inverting") return ThetaTags{false, true, false};
    if (s == "graded+degree-inverting") return ThetaTags{true, true, false};
    if (s == "other") return ThetaTags{false, false, true};
    return std::nullopt;
  }
};

/// A permutation of the support.
struct ThetaMap {
  std::map<GroupElement, GroupElement> mapping;
  ThetaTags tags;

  const GroupElement& operator()(const GroupElement& g) const {
    auto it = mapping.find(g);
    if (it == mapping.end()) throw GradingError("theta is undefined outside the support");
    return it->second;
  }

  friend bool operator==(const ThetaMap& a, const ThetaMap& b) { return a.mapping == b.mapping; }
};

/// Two segments with the same product whose mirror products differ. A right
/// segment of length 0 stands for the diagonal, i.e. the neutral element.
struct ConditionWitness {
  Segment left;
  Segment right;
  GroupElement shared;
  std::pair<GroupElement, GroupElement> mirrors;

  friend bool operator==(const ConditionWitness&, const ConditionWitness&) = default;
};

/// Proper segments (length >= 1), shortest first, then by start index.
/// Witnesses are the first violating pair in this order.
inline std::vector<Segment> proper_segments(std::size_t n) {
  std::vector<Segment> out;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 1; i + k <= n; ++i) out.push_back({i, k});
  return out;
}

struct SegmentConditionResult {
  bool holds = true;
  std::optional<ConditionWitness> witness;
};

/// Literal segment condition: whenever s(i,k) = s(j,l), the mirrors
/// s(n-i-k+1,k) and s(n-j-l+1,l) agree. Only proper segments are compared.
inline SegmentConditionResult check_segment_condition(const ElementaryGrading& grading) {
  const auto segs = proper_segments(grading.n());
  std::vector<const GroupElement*> value, mirror;
  value.reserve(segs.size());
  mirror.reserve(segs.size());
  for (const auto& s : segs) {
    value.push_back(&grading.segment(s));
    mirror.push_back(&grading.segment(grading.mirror(s)));
  }
  for (std::size_t a = 0; a < segs.size(); ++a) {
    for (std::size_t b = 0; b < segs.size(); ++b) {
      if (a == b || *value[a] != *value[b] || *mirror[a] == *mirror[b]) continue;
      return {false, ConditionWitness{segs[a], segs[b], *value[a], {*mirror[a], *mirror[b]}}};
    }
  }
  return {};
}

/// theta(g) = g for all g is graded, theta(g) = g^{-1} for all g is
/// degree-inverting; both may hold at once.
inline ThetaTags classify_theta(const ThetaMap& theta, const Group& group) {
  ThetaTags tags{true, true, false};
  for (const auto& [g, image] : theta.mapping) {
    if (image != g) tags.graded = false;
    if (image != group.inverse(g)) tags.degree_inverting = false;
  }
  tags.other = !tags.graded && !tags.degree_inverting;
  return tags;
}

using ThetaOutcome = std::variant<ThetaMap, ConditionWitness>;

/// Builds theta(s(i,k)) = s(n-i-k+1,k) together with theta(e) = e. Fails
/// with a witness when this relation is not single-valued: first on the
/// literal condition, then on a segment of degree e whose mirror is not e.
inline ThetaOutcome build_theta(const ElementaryGrading& grading) {
  if (auto literal = check_segment_condition(grading); !literal.holds) return *literal.witness;

  const auto& group = grading.group();
  const GroupElement e = group.identity();
  ThetaMap theta;
  theta.mapping.emplace(e, e);
  for (const auto& s : proper_segments(grading.n())) {
    const auto& value = grading.segment(s);
    const auto& image = grading.segment(grading.mirror(s));
    if (value == e && image != e)
      return ConditionWitness{s, Segment{s.start, 0}, e, {image, e}};
    theta.mapping.emplace(value, image);
  }
  theta.tags = classify_theta(theta, group);
  return theta;
}

/// theta^2 = id on the support, and theta(gh) = theta(h) theta(g) whenever
/// A_g A_h != 0.
inline bool theta_properties_check(const ThetaMap& theta, const ElementaryGrading& grading) {
  const auto& group = grading.group();
  const auto supp = support(grading);
  if (theta.mapping.size() != supp.components.size()) return false;
  for (const auto& [g, _] : supp.components) {
    auto it = theta.mapping.find(g);
    if (it == theta.mapping.end()) return false;
    auto back = theta.mapping.find(it->second);
    if (back == theta.mapping.end() || back->second != g) return false;
  }
  for (const auto& [g, _] : supp.components) {
    for (const auto& [h, __] : supp.components) {
      if (!component_product_nonzero(supp, g, h)) continue;
      auto gh = theta.mapping.find(group.op(g, h));
      if (gh == theta.mapping.end()) return false;
      if (gh->second != group.op(theta(h), theta(g))) return false;
    }
  }
  return true;
}

}  // namespace utgrade
