#pragma once

// Property suites shared by `utgrade verify` and the acceptance run. Each
// suite counts the cases it checked and records the first few failures.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "utgrade/classify.hpp"
#include "utgrade/field.hpp"
#include "utgrade/grading.hpp"
#include "utgrade/homogeneity.hpp"
#include "utgrade/linear_map.hpp"
#include "utgrade/matrix.hpp"

namespace utgrade {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2026;

struct SuiteReport {
  SuiteReport() = default;
  explicit SuiteReport(std::string suite) : name(std::move(suite)) {}

  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::map<std::string, std::uint64_t> counters;
  std::vector<std::string> messages;

  bool passed() const { return failures == 0 && checked > 0; }

  void fail(std::string msg) {
    ++failures;
    if (messages.size() < 10) messages.push_back(std::move(msg));
  }
};

/// Inverse by solving P X = I column by column from the bottom row up.
template <class F>
UTMatrix<F> back_substitution_inverse(const UTMatrix<F>& p) {
  const F& f = p.field();
  const std::size_t n = p.n();
  if (!p.is_invertible()) throw MatrixError("matrix is singular (zero diagonal entry)");
  UTMatrix<F> x(f, n);
  for (std::size_t col = 1; col <= n; ++col) {
    for (std::size_t row = col; row >= 1; --row) {
      auto rhs = row == col ? f.one() : f.zero();
      for (std::size_t k = row + 1; k <= col; ++k) rhs -= p.at(row, k) * x.at(k, col);
      x.set(row, col, rhs * f.inv(p.at(row, row)));
    }
  }
  return x;
}

template <class F>
SuiteReport verify_block_inverse(const F& field, std::size_t min_n, std::size_t max_n,
                                 std::uint64_t samples, std::uint64_t seed = kDefaultSeed) {
  SuiteReport rep{"block-inverse"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(min_n, max_n);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t n = dim(rng);
    const auto p = random_invertible_ut(field, n, rng);
    const auto inv = block_inverse(p);
    const auto id = UTMatrix<F>::identity(field, n);
    ++rep.checked;
    if (inv * p != id || p * inv != id)
      rep.fail("not an inverse: " + p.to_string());
    else if (inv != back_substitution_inverse(p))
      rep.fail("differs from back-substitution: " + p.to_string());
  }
  return rep;
}

/// Entry (k,l) of P^-1 E_kk P and of P^-1 (E_{n-k+1,n-k+1})° P is p_kl/p_kk.
template <class F>
SuiteReport verify_entry_lemma(const F& field, std::size_t min_n, std::size_t max_n,
                               std::uint64_t samples, std::uint64_t seed = kDefaultSeed) {
  SuiteReport rep{"entry-lemma"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(min_n, max_n);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t n = dim(rng);
    const auto p = random_invertible_ut(field, n, rng);
    for (std::size_t k = 1; k <= n; ++k) {
      const auto conj = conjugate(p, UTMatrix<F>::unit(field, n, k, k));
      const auto anti = antiauto_apply(p, UTMatrix<F>::unit(field, n, n - k + 1, n - k + 1));
      const auto pkk_inv = field.inv(p.at(k, k));
      for (std::size_t l = k; l <= n; ++l) {
        const typename F::value_type expected = p.at(k, l) * pkk_inv;
        ++rep.checked;
        if (conj.at(k, l) != expected || anti.at(k, l) != expected)
          rep.fail("entry (" + std::to_string(k) + "," + std::to_string(l) + ") of " + p.to_string());
      }
    }
  }
  return rep;
}

/// For every grading of UT_n over `group` and every invertible P over F_p:
///  - conjugation by P is oracle-homogeneous iff P is homogeneous of degree
///    e, always with theta = id, and then it preserves A_e;
///  - P^-1 X° P is oracle-homogeneous iff P has degree e and ° is
///    homogeneous, and then with the same theta as °.
inline SuiteReport verify_hom_aut(const PrimeField& field, const Group& group, std::size_t n) {
  SuiteReport rep{"hom-aut"};
  const auto involution = canonical_involution_map(field, n);
  std::vector<UTMatrix<PrimeField>> ps;
  for_each_invertible_ut(field, n, [&](const auto& p) { ps.push_back(p); });
  rep.counters["matrices"] = ps.size();
  TupleSpace space(group, n);
  for (std::uint64_t t = 0; t < space.size(); ++t) {
    ElementaryGrading grading(group, n, space.at(t));
    const std::string where = "tuple (" + format_tuple(group, grading.tuple()) + ")";
    const auto e = group.identity();
    const auto reflection_theta = oracle_homogeneity(grading, involution);
    const auto supp = support(grading);
    for (const auto& p : ps) {
      const auto deg = is_homogeneous_matrix(grading, p);
      const bool degree_e = deg && *deg == e;
      if (degree_e) ++rep.counters["degree-e"];

      const auto conj = conjugation_map(p);
      const auto conj_theta = oracle_homogeneity(grading, conj);
      ++rep.checked;
      if (conj_theta.has_value() != degree_e) {
        rep.fail(where + ": conjugation homogeneity mismatch for P=" + p.to_string());
      } else if (conj_theta && !conj_theta->tags.graded) {
        rep.fail(where + ": homogeneous conjugation is not graded for P=" + p.to_string());
      }
      if (degree_e) {
        // span of conj(A_e) equals A_e
        std::vector<std::vector<Residue>> rows;
        for (const auto& pos : supp.component(e)) rows.push_back(conj.image(pos).packed());
        const auto r = rank(field, rows);
        for (const auto& pos : supp.component(e)) {
          std::vector<Residue> unit(conj.images().size(), field.zero());
          unit[position_index(n, pos)] = field.one();
          rows.push_back(std::move(unit));
        }
        if (r != supp.component(e).size() || rank(field, rows) != r)
          rep.fail(where + ": neutral component not preserved for P=" + p.to_string());
      }

      const auto anti_theta = oracle_homogeneity(grading, antiautomorphism_map(p));
      ++rep.checked;
      if (anti_theta.has_value() != (degree_e && reflection_theta.has_value()))
        rep.fail(where + ": antiautomorphism homogeneity mismatch for P=" + p.to_string());
      else if (anti_theta && !(*anti_theta == *reflection_theta))
        rep.fail(where + ": antiautomorphism theta differs from the reflection's");
    }
  }
  return rep;
}

/// phi(X) = P^-1 X° P squares to the identity iff P° = ±P; -1 never occurs
/// for odd n. Also checks that the center of UT_n is the scalars.
inline SuiteReport verify_sign(const PrimeField& field, std::size_t n) {
  SuiteReport rep{"sign"};
  const auto positions = unit_positions(n);
  for_each_invertible_ut(field, n, [&](const UTMatrix<PrimeField>& p) {
    const auto phi = antiautomorphism_map(p);
    bool involutive = true;
    for (const auto& pos : positions)
      if (phi(phi.image(pos)) != UTMatrix<PrimeField>::unit(field, n, pos.i, pos.j)) involutive = false;
    const auto sign = involution_sign(p);
    ++rep.checked;
    if (involutive) ++rep.counters["involutions"];
    if (sign == 1) ++rep.counters["sign+1"];
    if (sign == -1) ++rep.counters["sign-1"];
    if (involutive != sign.has_value()) rep.fail("sign criterion fails for P=" + p.to_string());
    if (sign == -1 && n % 2 == 1) rep.fail("P° = -P for odd n, P=" + p.to_string());
  });
  // Center: matrices commuting with every unit are scalar.
  std::uint64_t central = 0;
  const std::size_t dim = positions.size();
  std::uint64_t total = 1;
  for (std::size_t t = 0; t < dim && total <= 100000; ++t) total *= field.characteristic();
  if (total <= 100000) {
    for (std::uint64_t code = 0; code < total; ++code) {
      UTMatrix<PrimeField> m(field, n);
      std::uint64_t c = code;
      for (const auto& pos : positions) {
        m.set(pos.i, pos.j, field.from_int(static_cast<long>(c % field.characteristic())));
        c /= field.characteristic();
      }
      ++rep.checked;
      if (commutes_with_all_units(m)) {
        ++central;
        if (!is_scalar(m)) rep.fail("non-scalar central element " + m.to_string());
      }
    }
    rep.counters["central"] = central;
  }
  return rep;
}

/// theta^2 = id and theta(gh) = theta(h) theta(g) on composable components
/// for every admitting grading with 1 <= n <= max_n; also checks that the
/// strengthened decision implies the literal one and is reversal-symmetric.
inline SuiteReport verify_theta_props(const Group& group, std::size_t max_n) {
  SuiteReport rep{"theta-props"};
  for (std::size_t n = 1; n <= max_n; ++n) {
    TupleSpace space(group, n);
    for (std::uint64_t t = 0; t < space.size(); ++t) {
      auto tuple = space.at(t);
      ElementaryGrading grading(group, n, tuple);
      const auto outcome = build_theta(grading);
      const auto* theta = std::get_if<ThetaMap>(&outcome);
      std::reverse(tuple.begin(), tuple.end());
      const bool reversed_admits = std::holds_alternative<ThetaMap>(build_theta(ElementaryGrading(group, n, tuple)));
      ++rep.checked;
      const std::string where = "n=" + std::to_string(n) + " tuple (" + format_tuple(group, grading.tuple()) + ")";
      if ((theta != nullptr) != reversed_admits) rep.fail(where + ": reversal changes the decision");
      if (!theta) continue;
      ++rep.counters["admitting"];
      if (!check_segment_condition(grading).holds) rep.fail(where + ": literal condition fails");
      if (!theta_properties_check(*theta, grading)) rep.fail(where + ": theta properties fail");
    }
  }
  return rep;
}

/// Over F_p, every unital multiplicative bijection of UT_n (n small) is a
/// conjugation by an invertible upper triangular matrix. Enumerates all
/// p^(d^2) linear maps of the d-dimensional algebra.
inline SuiteReport verify_kezlan_small(const PrimeField& field, std::size_t n,
                                       std::uint64_t cap = 50'000'000) {
  using M = UTMatrix<PrimeField>;
  SuiteReport rep{"kezlan-small"};
  const auto positions = unit_positions(n);
  const std::size_t d = positions.size();
  const std::uint32_t p = field.characteristic();
  mpz_class total_z;
  mpz_ui_pow_ui(total_z.get_mpz_t(), p, d * d);
  if (total_z > cap) {
    rep.fail("space of " + total_z.get_str() + " linear maps exceeds the cap");
    return rep;
  }
  const std::uint64_t total = total_z.get_ui();

  std::vector<LinearMapOnUnits<PrimeField>> inner;
  for_each_invertible_ut(field, n, [&](const M& q) { inner.push_back(conjugation_map(q)); });

  std::vector<std::uint32_t> digits(d * d, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (auto& dg : digits) {
      dg = c % p;
      c /= p;
    }
    // column t holds the coordinates of the image of unit t
    std::vector<std::vector<Residue>> cols(d, std::vector<Residue>(d, field.zero()));
    for (std::size_t t = 0; t < d; ++t)
      for (std::size_t r = 0; r < d; ++r) cols[t][r] = Residue(digits[t * d + r], p);
    if (rank(field, cols) != d) continue;
    ++rep.counters["invertible"];
    std::vector<M> images;
    for (auto& col : cols) images.emplace_back(field, n, std::move(col));
    LinearMapOnUnits<PrimeField> map(field, n, std::move(images));
    ++rep.checked;
    if (!is_automorphism(map)) continue;
    ++rep.counters["automorphisms"];
    const bool found = std::any_of(inner.begin(), inner.end(), [&](const auto& c) { return c == map; });
    if (found) ++rep.counters["inner"];
    else rep.fail("automorphism is not inner (map #" + std::to_string(code) + ")");
  }
  return rep;
}

/// Runs classify_space with oracle validation and counts disagreements of
/// the strengthened decision with the oracle and with the literal condition.
inline SuiteReport verify_oracle_agreement(const Group& group, std::size_t n, const FieldSpec& field,
                                           std::size_t threads = 1) {
  SuiteReport rep{"oracle-agreement"};
  ClassifyOptions opts;
  opts.field = field;
  opts.validate = true;
  opts.threads = threads;
  const auto result = classify_space(group, n, opts);
  for (const auto& r : result.records) {
    ++rep.checked;
    const std::string where = "tuple (" + format_tuple(group, r.tuple) + ")";
    if (r.oracle_agrees != true) rep.fail(where + ": oracle disagrees");
    if (r.admits != r.literal_condition) rep.fail(where + ": literal and strengthened checks differ");
  }
  rep.counters["admits"] = result.summary.admits();
  rep.counters["rejects"] = result.summary.rejects;
  return rep;
}

}  // namespace utgrade
