#pragma once

// Exhaustive sweeps over all grading tuples of a finite group, each decision
// cross-checked against the rank oracle on the reflection involution.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "utgrade/field.hpp"
#include "utgrade/grading.hpp"
#include "utgrade/group.hpp"
#include "utgrade/homogeneity.hpp"
#include "utgrade/linear_map.hpp"

namespace utgrade {

class ClassifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultTupleCap = 10'000'000;

/// All |G|^(n-1) tuples in lexicographic order (first entry most
/// significant, elements in Group::elements() order).
class TupleSpace {
 public:
  TupleSpace(const Group& group, std::size_t n, std::uint64_t cap = kDefaultTupleCap)
      : n_(n) {
    if (n < 1) throw ClassifyError("dimension must be at least 1");
    if (!group.is_finite()) throw ClassifyError("cannot enumerate tuples over an infinite group");
    const mpz_class order = *group.order();
    mpz_class total = 1;
    for (std::size_t t = 0; t + 1 < n; ++t) {
      total *= order;
      if (total > cap) break;
    }
    if (total > cap)
      throw ClassifyError("tuple space " + group.spec() + "^" + std::to_string(n - 1) +
                          " exceeds the cap of " + std::to_string(cap) + " tuples");
    elements_ = group.elements();
    size_ = total.get_ui();
  }

  std::uint64_t size() const { return size_; }

  std::vector<GroupElement> at(std::uint64_t index) const {
    if (index >= size_) throw ClassifyError("tuple index out of range");
    std::vector<GroupElement> out(n_ - 1);
    const std::uint64_t m = elements_.size();
    for (std::size_t t = out.size(); t-- > 0;) {
      out[t] = elements_[index % m];
      index /= m;
    }
    return out;
  }

 private:
  std::size_t n_;
  std::vector<GroupElement> elements_;
  std::uint64_t size_ = 0;
};

inline std::vector<std::vector<GroupElement>> enumerate_tuples(const Group& group, std::size_t n,
                                                               std::uint64_t cap = kDefaultTupleCap) {
  TupleSpace space(group, n, cap);
  std::vector<std::vector<GroupElement>> out;
  out.reserve(space.size());
  for (std::uint64_t t = 0; t < space.size(); ++t) out.push_back(space.at(t));
  return out;
}

/// The three decision routes for one grading and how they compare.
struct CrossValidationReport {
  ThetaOutcome strengthened;
  SegmentConditionResult literal;
  std::optional<ThetaMap> oracle;

  bool admits() const { return std::holds_alternative<ThetaMap>(strengthened); }
  const ThetaMap* theta() const { return std::get_if<ThetaMap>(&strengthened); }

  bool strengthened_matches_literal() const { return admits() == literal.holds; }
  bool strengthened_matches_oracle() const {
    if (admits() != oracle.has_value()) return false;
    return !admits() || *theta() == *oracle;
  }
  bool literal_matches_oracle() const { return literal.holds == oracle.has_value(); }
  bool all_agree() const {
    return strengthened_matches_literal() && strengthened_matches_oracle() &&
           literal_matches_oracle();
  }
};

template <class F>
CrossValidationReport cross_validate(const ElementaryGrading& grading, const F& field) {
  return {build_theta(grading), check_segment_condition(grading),
          oracle_homogeneity(grading, canonical_involution_map(field, grading.n()))};
}

inline CrossValidationReport cross_validate(const ElementaryGrading& grading, const FieldSpec& field) {
  return with_field(field, [&](const auto& f) { return cross_validate(grading, f); });
}

struct ClassificationRecord {
  std::vector<GroupElement> tuple;
  bool admits = false;
  std::optional<ThetaTags> theta_tags;
  std::optional<ConditionWitness> witness;
  bool literal_condition = false;
  std::optional<bool> oracle_agrees;  // empty when not validated

  friend bool operator==(const ClassificationRecord&, const ClassificationRecord&) = default;
};

struct ClassificationSummary {
  std::string group_spec;
  std::size_t n = 0;
  std::string field_spec;
  bool validated = false;
  std::uint64_t total = 0;
  std::map<std::string, std::uint64_t> tag_counts;
  std::uint64_t rejects = 0;
  std::uint64_t literal_disagreements = 0;
  std::uint64_t oracle_disagreements = 0;
  double elapsed_seconds = 0;

  std::uint64_t admits() const { return total - rejects; }
};

struct ClassificationResult {
  ClassificationSummary summary;
  std::vector<ClassificationRecord> records;
};

struct ClassifyOptions {
  FieldSpec field = FieldSpec::prime(5);
  bool validate = true;
  std::size_t threads = 1;
  std::uint64_t cap = kDefaultTupleCap;
};

template <class F>
ClassificationRecord classify_tuple(const Group& group, std::size_t n,
                                    std::vector<GroupElement> tuple, const F* field) {
  ElementaryGrading grading(group, n, tuple);
  ClassificationRecord rec;
  rec.tuple = std::move(tuple);
  auto outcome = build_theta(grading);
  if (const auto* theta = std::get_if<ThetaMap>(&outcome)) {
    rec.admits = true;
    rec.theta_tags = theta->tags;
  } else {
    rec.witness = std::get<ConditionWitness>(outcome);
  }
  rec.literal_condition = check_segment_condition(grading).holds;
  if (field) {
    auto oracle = oracle_homogeneity(grading, canonical_involution_map(*field, n));
    const auto* theta = std::get_if<ThetaMap>(&outcome);
    rec.oracle_agrees = rec.admits == oracle.has_value() && (!theta || *theta == *oracle);
  }
  return rec;
}

/// Classifies every tuple of the space. Work is split into contiguous index
/// ranges; records come back in enumeration order regardless of threads.
inline ClassificationResult classify_space(const Group& group, std::size_t n,
                                           const ClassifyOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  TupleSpace space(group, n, opts.cap);
  ClassificationResult result;
  result.records.resize(space.size());

  with_field(opts.field, [&](const auto& field) {
    const auto* fp = opts.validate ? &field : nullptr;
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::uint64_t>(opts.threads, space.size()));
    const std::uint64_t chunk = (space.size() + workers - 1) / workers;
    auto run = [&](std::uint64_t lo, std::uint64_t hi) {
      for (std::uint64_t t = lo; t < hi; ++t)
        result.records[t] = classify_tuple(group, n, space.at(t), fp);
    };
    if (workers == 1) {
      run(0, space.size());
      return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::uint64_t lo = w * chunk, hi = std::min(space.size(), lo + chunk);
      pool.emplace_back([&, w, lo, hi] {
        try {
          run(lo, hi);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  });

  auto& s = result.summary;
  s.group_spec = group.spec();
  s.n = n;
  s.field_spec = opts.field.spec();
  s.validated = opts.validate;
  s.total = space.size();
  for (const auto& r : result.records) {
    if (r.admits) ++s.tag_counts[r.theta_tags->label()];
    else ++s.rejects;
    if (r.admits != r.literal_condition) ++s.literal_disagreements;
    if (r.oracle_agrees == false) ++s.oracle_disagreements;
  }
  s.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

// ---------------------------------------------------------------------------
// Serialization

inline std::string format_segment(Segment s) {
  return "(" + std::to_string(s.start) + "," + std::to_string(s.length) + ")";
}

inline nlohmann::json witness_to_json(const Group& group, const ConditionWitness& w) {
  return {{"left", {w.left.start, w.left.length}},
          {"right", {w.right.start, w.right.length}},
          {"shared", group.format(w.shared)},
          {"mirrors", {group.format(w.mirrors.first), group.format(w.mirrors.second)}}};
}

inline ConditionWitness witness_from_json(const Group& group, const nlohmann::json& j) {
  ConditionWitness w;
  w.left = {j.at("left").at(0).get<std::size_t>(), j.at("left").at(1).get<std::size_t>()};
  w.right = {j.at("right").at(0).get<std::size_t>(), j.at("right").at(1).get<std::size_t>()};
  w.shared = group.parse_element(j.at("shared").get<std::string>());
  w.mirrors = {group.parse_element(j.at("mirrors").at(0).get<std::string>()),
               group.parse_element(j.at("mirrors").at(1).get<std::string>())};
  return w;
}

inline nlohmann::json theta_to_json(const Group& group, const ThetaMap& theta) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [g, h] : theta.mapping) pairs.push_back({group.format(g), group.format(h)});
  return {{"map", pairs}, {"tags", theta.tags.label()}};
}

inline nlohmann::json record_to_json(const Group& group, const ClassificationRecord& r) {
  nlohmann::json tuple = nlohmann::json::array();
  for (const auto& g : r.tuple) tuple.push_back(group.format(g));
  nlohmann::json j = {{"tuple", tuple},
                      {"admits", r.admits},
                      {"tags", r.theta_tags ? nlohmann::json(r.theta_tags->label()) : nullptr},
                      {"witness", r.witness ? witness_to_json(group, *r.witness) : nullptr},
                      {"literal", r.literal_condition},
                      {"oracle_agrees", r.oracle_agrees ? nlohmann::json(*r.oracle_agrees) : nullptr}};
  return j;
}

inline ClassificationRecord record_from_json(const Group& group, const nlohmann::json& j) {
  ClassificationRecord r;
  for (const auto& g : j.at("tuple")) r.tuple.push_back(group.parse_element(g.get<std::string>()));
  r.admits = j.at("admits").get<bool>();
  if (!j.at("tags").is_null()) {
    auto tags = ThetaTags::from_label(j.at("tags").get<std::string>());
    if (!tags) throw ClassifyError("unknown tag label " + j.at("tags").dump());
    r.theta_tags = *tags;
  }
  if (!j.at("witness").is_null()) r.witness = witness_from_json(group, j.at("witness"));
  r.literal_condition = j.at("literal").get<bool>();
  if (!j.at("oracle_agrees").is_null()) r.oracle_agrees = j.at("oracle_agrees").get<bool>();
  return r;
}

inline nlohmann::json summary_to_json(const ClassificationSummary& s) {
  return {{"group", s.group_spec},
          {"n", s.n},
          {"field", s.field_spec},
          {"validated", s.validated},
          {"total", s.total},
          {"admits", s.admits()},
          {"rejects", s.rejects},
          {"tag_counts", s.tag_counts},
          {"literal_disagreements", s.literal_disagreements},
          {"oracle_disagreements", s.oracle_disagreements},
          {"elapsed_seconds", s.elapsed_seconds}};
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline constexpr const char* kCsvHeader = "tuple,admits,tags,witness,literal,oracle_agrees";

/// One CSV row; the witness column reads `(i,k);(j,l)`.
inline std::string record_to_csv(const Group& group, const ClassificationRecord& r) {
  std::string witness;
  if (r.witness) witness = format_segment(r.witness->left) + ";" + format_segment(r.witness->right);
  std::ostringstream os;
  os << detail::csv_field(format_tuple(group, r.tuple)) << ',' << (r.admits ? "true" : "false")
     << ',' << (r.theta_tags ? r.theta_tags->label() : "") << ',' << detail::csv_field(witness)
     << ',' << (r.literal_condition ? "true" : "false") << ','
     << (r.oracle_agrees ? (*r.oracle_agrees ? "true" : "false") : "");
  return os.str();
}

}  // namespace utgrade
