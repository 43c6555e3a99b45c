#pragma once

// Exact scalar fields: Q (GMP rationals) and F_p for odd primes p.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "utgrade/group.hpp"

namespace utgrade {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `Q` or `F<p>` with p an odd prime. Characteristic 2 is rejected.
struct FieldSpec {
  enum class Kind { Rationals, Prime };
  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint64_t p) {
    if (p == 2) throw FieldError("characteristic 2 is not supported");
    if (p < 2 || p > 0x7fffffffu) throw FieldError("prime field order out of range");
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw FieldError("F" + std::to_string(p) + ": order is not prime");
    return {Kind::Prime, static_cast<std::uint32_t>(p)};
  }

  std::string spec() const { return kind == Kind::Rationals ? "Q" : "F" + std::to_string(p); }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline FieldSpec parse_field_spec(std::string_view text) {
  std::string s = detail::trim(text);
  if (s == "Q") return FieldSpec::rationals();
  if (s.size() >= 2 && s[0] == 'F') {
    auto p = detail::parse_integer(s.substr(1));
    if (p && s[1] != '-' && s[1] != '+' && p->fits_ulong_p())
      return FieldSpec::prime(p->get_ui());
  }
  throw FieldError("malformed field spec '" + s + "' (expected Q or F<p>)");
}

/// Residue modulo p, kept in [0, p).
class Residue {
 public:
  Residue() = default;
  Residue(std::uint64_t value, std::uint32_t p) : v_(value % p), p_(p) {}

  std::uint64_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }

  friend Residue operator+(Residue a, Residue b) {
    std::uint64_t s = a.v_ + b.v_;
    return {s >= a.p_ ? s - a.p_ : s, a.p_};
  }
  friend Residue operator-(Residue a, Residue b) { return {a.v_ + a.p_ - b.v_, a.p_}; }
  friend Residue operator*(Residue a, Residue b) { return {a.v_ * b.v_, a.p_}; }
  Residue operator-() const { return {p_ - v_, p_}; }
  Residue& operator+=(Residue b) { return *this = *this + b; }
  Residue& operator-=(Residue b) { return *this = *this - b; }
  Residue& operator*=(Residue b) { return *this = *this * b; }

  friend bool operator==(Residue a, Residue b) { return a.v_ == b.v_; }
  friend bool operator!=(Residue a, Residue b) { return a.v_ != b.v_; }

 private:
  std::uint64_t v_ = 0;
  std::uint32_t p_ = 1;
};

class RationalField {
 public:
  using value_type = mpq_class;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const { return v; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type inv(const value_type& a) const {
    if (is_zero(a)) throw FieldError("division by zero");
    return 1 / a;
  }
  FieldSpec spec() const { return FieldSpec::rationals(); }

  /// Integer or `a/b` literal.
  value_type parse(std::string_view text) const {
    std::string s = detail::trim(text);
    auto slash = s.find('/');
    auto num = detail::parse_integer(s.substr(0, slash));
    if (!num) throw FieldError("malformed rational literal '" + s + "'");
    if (slash == std::string::npos) return mpq_class(*num);
    auto den = detail::parse_integer(s.substr(slash + 1));
    if (!den || *den == 0) throw FieldError("malformed rational literal '" + s + "'");
    mpq_class q(*num, *den);
    q.canonicalize();
    return q;
  }
  std::string format(const value_type& a) const { return a.get_str(); }

  template <class Rng>
  value_type random(Rng& rng) const {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
  }
  template <class Rng>
  value_type random_nonzero(Rng& rng) const {
    for (;;)
      if (auto v = random(rng); !is_zero(v)) return v;
  }
};

class PrimeField {
 public:
  using value_type = Residue;

  explicit PrimeField(std::uint32_t p) : p_(FieldSpec::prime(p).p) {}

  std::uint32_t characteristic() const { return p_; }
  value_type zero() const { return {0, p_}; }
  value_type one() const { return {1, p_}; }
  value_type from_int(long v) const {
    long r = v % static_cast<long>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint64_t>(r), p_};
  }
  bool is_zero(const value_type& a) const { return a.value() == 0; }
  value_type inv(const value_type& a) const {
    if (is_zero(a)) throw FieldError("division by zero");
    // a^(p-2)
    value_type result = one(), base = a;
    for (std::uint64_t e = p_ - 2; e; e >>= 1) {
      if (e & 1) result *= base;
      base *= base;
    }
    return result;
  }
  FieldSpec spec() const { return FieldSpec::prime(p_); }

  /// Integer literal, reduced mod p.
  value_type parse(std::string_view text) const {
    auto v = detail::parse_integer(text);
    if (!v) throw FieldError("malformed residue literal '" + std::string(text) + "'");
    mpz_class r = *v % p_;
    if (r < 0) r += p_;
    return {r.get_ui(), p_};
  }
  std::string format(const value_type& a) const { return std::to_string(a.value()); }

  std::vector<value_type> elements() const {
    std::vector<value_type> out;
    for (std::uint32_t v = 0; v < p_; ++v) out.push_back({v, p_});
    return out;
  }

  template <class Rng>
  value_type random(Rng& rng) const {
    return {std::uniform_int_distribution<std::uint32_t>(0, p_ - 1)(rng), p_};
  }
  template <class Rng>
  value_type random_nonzero(Rng& rng) const {
    return {std::uniform_int_distribution<std::uint32_t>(1, p_ - 1)(rng), p_};
  }

 private:
  std::uint32_t p_;
};

/// Calls fn with a RationalField or PrimeField matching the spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::Rationals) return fn(RationalField{});
  return fn(PrimeField{spec.p});
}

}  // namespace utgrade
