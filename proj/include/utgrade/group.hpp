#pragma once

// Exact arithmetic for grading groups: Z, Z<m>, finite direct products and
// groups given by a Cayley table.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace utgrade {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximum order accepted for Cayley-table groups (associativity is checked
/// eagerly in O(m^3)).
inline constexpr std::size_t kMaxTableOrder = 64;

/// One element of a Group. Components follow the factors of the group: a
/// residue for Z<m>, an integer for Z and a table index for Cayley tables.
/// Equal elements have equal component vectors.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<mpz_class> components)
      : components_(std::move(components)) {}

  const std::vector<mpz_class>& components() const { return components_; }
  std::size_t arity() const { return components_.size(); }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.components_ == b.components_;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) {
    return !(a == b);
  }
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return std::lexicographical_compare(a.components_.begin(), a.components_.end(),
                                        b.components_.begin(), b.components_.end());
  }

 private:
  std::vector<mpz_class> components_;
};

/// A finite group given by its multiplication table on indices 0..m-1.
struct CayleyTable {
  std::string source;  // path as written in the group spec
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table;
  std::size_t identity = 0;
  std::vector<std::size_t> inverses;

  std::size_t order() const { return names.size(); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
  }
};

namespace detail {

inline bool valid_table_name(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == ',' || c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c));
  });
}

// Fills inverses and checks identity, inverse and associativity axioms.
inline void check_table_axioms(CayleyTable& t) {
  const std::size_t m = t.order();
  if (m == 0) throw GroupError("Cayley table has no elements");
  if (m > kMaxTableOrder)
    throw GroupError("Cayley table order " + std::to_string(m) + " exceeds cap " +
                     std::to_string(kMaxTableOrder));
  if (t.table.size() != m) throw GroupError("Cayley table must have one row per element");
  for (const auto& row : t.table) {
    if (row.size() != m) throw GroupError("Cayley table rows must have one entry per element");
    for (std::size_t v : row)
      if (v >= m) throw GroupError("Cayley table entry out of range");
  }
  if (t.identity >= m) throw GroupError("identity index out of range");
  for (std::size_t a = 0; a < m; ++a) {
    if (t.table[t.identity][a] != a || t.table[a][t.identity] != a)
      throw GroupError("identity axiom fails for element '" + t.names[a] + "'");
  }
  t.inverses.assign(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (t.table[a][b] == t.identity && t.table[b][a] == t.identity) {
        t.inverses[a] = b;
        break;
      }
    }
    if (t.inverses[a] == m)
      throw GroupError("element '" + t.names[a] + "' has no two-sided inverse");
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (t.table[t.table[a][b]][c] != t.table[a][t.table[b][c]])
          throw GroupError("associativity fails for (" + t.names[a] + ", " + t.names[b] +
                           ", " + t.names[c] + ")");
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::optional<mpz_class> parse_integer(std::string_view s) {
  std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (start == t.size()) return std::nullopt;
  for (std::size_t i = start; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return std::nullopt;
  if (t[0] == '+') t.erase(0, 1);
  return mpz_class(t, 10);
}

// Splits on commas that are not nested inside parentheses.
inline std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw GroupError("unbalanced parentheses in '" + std::string(s) + "'");
    if (c == ',' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (depth != 0) throw GroupError("unbalanced parentheses in '" + std::string(s) + "'");
  parts.push_back(trim(cur));
  return parts;
}

}  // namespace detail

/// Parses a Cayley-table document with keys `elements`, `table`, `identity`.
inline CayleyTable parse_cayley_table(std::string_view text, std::string source = {}) {
  CayleyTable t;
  t.source = std::move(source);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    t.names = doc.at("elements").get<std::vector<std::string>>();
    t.table = doc.at("table").get<std::vector<std::vector<std::size_t>>>();
    t.identity = doc.at("identity").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw GroupError(std::string("malformed Cayley table: ") + e.what());
  }
  for (std::size_t a = 0; a < t.names.size(); ++a) {
    if (!detail::valid_table_name(t.names[a]))
      throw GroupError("invalid element name '" + t.names[a] + "'");
    for (std::size_t b = 0; b < a; ++b)
      if (t.names[a] == t.names[b]) throw GroupError("duplicate element name '" + t.names[a] + "'");
  }
  detail::check_table_axioms(t);
  return t;
}

/// A group: the direct product of one or more factors, each Z, Z<m> or a
/// Cayley table. Immutable after construction.
class Group {
 public:
  struct Cyclic {
    mpz_class order;
  };
  struct InfiniteCyclic {};
  using Factor = std::variant<Cyclic, InfiniteCyclic, std::shared_ptr<const CayleyTable>>;

  explicit Group(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw GroupError("a group needs at least one factor");
    for (const auto& f : factors_)
      if (const auto* c = std::get_if<Cyclic>(&f); c && c->order <= 0)
        throw GroupError("cyclic group order must be positive");
  }

  static Group cyclic(unsigned long m) { return Group({Cyclic{mpz_class(m)}}); }
  static Group integers() { return Group({InfiniteCyclic{}}); }
  static Group table(CayleyTable t) {
    return Group({std::make_shared<const CayleyTable>(std::move(t))});
  }

  const std::vector<Factor>& factors() const { return factors_; }

  bool is_finite() const {
    return std::none_of(factors_.begin(), factors_.end(), [](const Factor& f) {
      return std::holds_alternative<InfiniteCyclic>(f);
    });
  }

  /// Order of a finite group; empty for groups with a Z factor.
  std::optional<mpz_class> order() const {
    if (!is_finite()) return std::nullopt;
    mpz_class total = 1;
    for (const auto& f : factors_) total *= factor_order(f);
    return total;
  }

  GroupElement identity() const {
    std::vector<mpz_class> c;
    c.reserve(factors_.size());
    for (const auto& f : factors_) {
      if (const auto* t = std::get_if<std::shared_ptr<const CayleyTable>>(&f))
        c.emplace_back(static_cast<unsigned long>((*t)->identity));
      else
        c.emplace_back(0);
    }
    return GroupElement(std::move(c));
  }

  bool contains(const GroupElement& g) const {
    if (g.arity() != factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const mpz_class& v = g.components()[i];
      if (std::holds_alternative<InfiniteCyclic>(factors_[i])) continue;
      if (v < 0 || v >= factor_order(factors_[i])) return false;
    }
    return true;
  }

  GroupElement op(const GroupElement& g, const GroupElement& h) const {
    require(g);
    require(h);
    std::vector<mpz_class> c(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const mpz_class& a = g.components()[i];
      const mpz_class& b = h.components()[i];
      std::visit(
          [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, Cyclic>) {
              c[i] = a + b;
              if (c[i] >= f.order) c[i] -= f.order;
            } else if constexpr (std::is_same_v<F, InfiniteCyclic>) {
              c[i] = a + b;
            } else {
              c[i] = static_cast<unsigned long>(f->table[a.get_ui()][b.get_ui()]);
            }
          },
          factors_[i]);
    }
    return GroupElement(std::move(c));
  }

  GroupElement inverse(const GroupElement& g) const {
    require(g);
    std::vector<mpz_class> c(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const mpz_class& a = g.components()[i];
      std::visit(
          [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, Cyclic>) {
              c[i] = a == 0 ? mpz_class(0) : mpz_class(f.order - a);
            } else if constexpr (std::is_same_v<F, InfiniteCyclic>) {
              c[i] = -a;
            } else {
              c[i] = static_cast<unsigned long>(f->inverses[a.get_ui()]);
            }
          },
          factors_[i]);
    }
    return GroupElement(std::move(c));
  }

  /// All elements in canonical lexicographic order (first factor most
  /// significant). Throws for infinite groups.
  std::vector<GroupElement> elements() const {
    if (!is_finite()) throw GroupError("cannot enumerate an infinite group");
    std::vector<GroupElement> out{GroupElement{}};
    for (const auto& f : factors_) {
      const unsigned long m = factor_order(f).get_ui();
      std::vector<GroupElement> next;
      next.reserve(out.size() * m);
      for (const auto& prefix : out) {
        for (unsigned long v = 0; v < m; ++v) {
          auto c = prefix.components();
          c.emplace_back(v);
          next.emplace_back(std::move(c));
        }
      }
      out = std::move(next);
    }
    return out;
  }

  /// Element literal: an integer for Z and Z<m>, a name for tables, and a
  /// parenthesised comma-separated list for products.
  GroupElement parse_element(std::string_view text) const {
    std::string s = detail::trim(text);
    std::vector<std::string> parts;
    if (factors_.size() == 1) {
      parts.push_back(s);
    } else {
      if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw GroupError("product element literal must be parenthesised: '" + s + "'");
      parts = detail::split_top_level(std::string_view(s).substr(1, s.size() - 2));
      if (parts.size() != factors_.size())
        throw GroupError("element '" + s + "' has " + std::to_string(parts.size()) +
                         " components, expected " + std::to_string(factors_.size()));
    }
    std::vector<mpz_class> c;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (const auto* t = std::get_if<std::shared_ptr<const CayleyTable>>(&factors_[i])) {
        auto idx = (*t)->index_of(parts[i]);
        if (!idx) throw GroupError("unknown table element '" + parts[i] + "'");
        c.emplace_back(static_cast<unsigned long>(*idx));
        continue;
      }
      auto v = detail::parse_integer(parts[i]);
      if (!v) throw GroupError("malformed element literal '" + parts[i] + "'");
      if (const auto* cy = std::get_if<Cyclic>(&factors_[i]); cy && (*v < 0 || *v >= cy->order))
        throw GroupError("residue " + parts[i] + " out of range for Z" + cy->order.get_str());
      c.push_back(*v);
    }
    return GroupElement(std::move(c));
  }

  std::string format(const GroupElement& g) const {
    require(g);
    std::string out;
    if (factors_.size() > 1) out += '(';
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out += ',';
      if (const auto* t = std::get_if<std::shared_ptr<const CayleyTable>>(&factors_[i]))
        out += (*t)->names[g.components()[i].get_ui()];
      else
        out += g.components()[i].get_str();
    }
    if (factors_.size() > 1) out += ')';
    return out;
  }

  /// Canonical group-spec string; parse_group_spec(spec()) rebuilds the group.
  std::string spec() const {
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out += 'x';
      std::visit(
          [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, Cyclic>)
              out += "Z" + f.order.get_str();
            else if constexpr (std::is_same_v<F, InfiniteCyclic>)
              out += "Z";
            else
              out += "table:" + f->source;
          },
          factors_[i]);
    }
    return out;
  }

 private:
  static mpz_class factor_order(const Factor& f) {
    if (const auto* c = std::get_if<Cyclic>(&f)) return c->order;
    if (const auto* t = std::get_if<std::shared_ptr<const CayleyTable>>(&f))
      return static_cast<unsigned long>((*t)->order());
    throw GroupError("infinite cyclic factor has no finite order");
  }

  void require(const GroupElement& g) const {
    if (!contains(g)) throw GroupError("element does not belong to group " + spec());
  }

  std::vector<Factor> factors_;
};

/// Parses `Z`, `Z<m>`, `table:<path>`, or factors joined by `x`. A `table:`
/// factor consumes the rest of the spec, so it must come last.
inline Group parse_group_spec(std::string_view text) {
  std::string s = detail::trim(text);
  if (s.empty()) throw GroupError("empty group spec");
  std::vector<Group::Factor> factors;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    if (s.compare(pos, 6, "table:") == 0) {
      // The path runs to the end of the spec.
      std::string path = s.substr(pos + 6);
      if (path.empty()) throw GroupError("table: needs a path");
      std::ifstream in(path);
      if (!in) throw GroupError("cannot open Cayley table file '" + path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      factors.emplace_back(std::make_shared<const CayleyTable>(parse_cayley_table(buf.str(), path)));
      break;
    }
    std::size_t end = s.find('x', pos);
    std::string tok = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (tok.empty() || tok[0] != 'Z') throw GroupError("malformed group factor '" + tok + "'");
    if (tok.size() == 1) {
      factors.emplace_back(Group::InfiniteCyclic{});
    } else {
      auto m = detail::parse_integer(tok.substr(1));
      if (!m || tok[1] == '+' || tok[1] == '-')
        throw GroupError("malformed group factor '" + tok + "'");
      if (*m <= 0) throw GroupError("cyclic group order must be positive in '" + tok + "'");
      factors.emplace_back(Group::Cyclic{*m});
    }
    if (end == std::string::npos) break;
    pos = end + 1;
    if (pos == s.size()) throw GroupError("trailing 'x' in group spec");
  }
  return Group(std::move(factors));
}

/// s(i,k) = g_i ... g_{i+k-1}, 1-based; k = 0 gives the identity.
inline GroupElement segment_product(const Group& group, const std::vector<GroupElement>& tuple,
                                    std::size_t i, std::size_t k) {
  if (i < 1 || i + k - 1 > tuple.size() || (k > 0 && i > tuple.size()))
    throw GroupError("segment (" + std::to_string(i) + "," + std::to_string(k) +
                     ") out of range for tuple of length " + std::to_string(tuple.size()));
  GroupElement acc = group.identity();
  for (std::size_t t = i; t < i + k; ++t) acc = group.op(acc, tuple[t - 1]);
  return acc;
}

/// Comma-separated element literals; the empty string is the empty tuple.
inline std::vector<GroupElement> parse_tuple(const Group& group, std::string_view text) {
  std::string s = detail::trim(text);
  std::vector<GroupElement> out;
  if (s.empty()) return out;
  for (const auto& part : detail::split_top_level(s)) out.push_back(group.parse_element(part));
  return out;
}

inline std::string format_tuple(const Group& group, const std::vector<GroupElement>& tuple) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    out += group.format(tuple[i]);
  }
  return out;
}

}  // namespace utgrade
