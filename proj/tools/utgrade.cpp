// utgrade: decide homogeneity of antiautomorphisms of graded UT_n, run
// classification sweeps, matrix utilities and verification suites.
//
// Exit status: 0 ran and every check passed (a rejected grading is a normal
// outcome), 1 verification failure or decision/oracle disagreement, 2 usage
// or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "utgrade/utgrade.hpp"

namespace {

using namespace utgrade;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t default_threads() {
  if (const char* env = std::getenv("UTGRADE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("UTGRADE_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

std::string describe_witness(const ElementaryGrading& grading, const ConditionWitness& w) {
  const auto& g = grading.group();
  const auto seg = [](Segment s) { return "s" + format_segment(s); };
  if (w.right.length == 0) {
    return seg(w.left) + " = " + g.format(w.shared) + " is neutral but its mirror " +
           seg(grading.mirror(w.left)) + " = " + g.format(w.mirrors.first) + " is not";
  }
  return seg(w.left) + " = " + seg(w.right) + " = " + g.format(w.shared) + " but mirrors " +
         seg(grading.mirror(w.left)) + " = " + g.format(w.mirrors.first) + " and " +
         seg(grading.mirror(w.right)) + " = " + g.format(w.mirrors.second) + " differ";
}

std::string describe_theta(const Group& group, const ThetaMap& theta) {
  std::string out;
  for (const auto& [g, h] : theta.mapping) {
    if (!out.empty()) out += ", ";
    out += group.format(g) + " -> " + group.format(h);
  }
  return out;
}

// --------------------------------------------------------------------------

struct CheckArgs {
  std::string group, tuple, field = "F5", format = "human";
  std::size_t n = 0;
  bool validate = true;
};

int run_check(const CheckArgs& a) {
  const Group group = parse_group_spec(a.group);
  const FieldSpec field = parse_field_spec(a.field);
  ElementaryGrading grading(group, a.n, parse_tuple(group, a.tuple));

  const auto outcome = build_theta(grading);
  const auto literal = check_segment_condition(grading);
  std::optional<CrossValidationReport> report;
  if (a.validate) report = cross_validate(grading, field);
  const auto* theta = std::get_if<ThetaMap>(&outcome);
  const bool disagreement = report && !report->all_agree();

  if (a.format == "json") {
    json j = {{"group", group.spec()},
              {"n", a.n},
              {"tuple", json::array()},
              {"admits", theta != nullptr},
              {"theta", theta ? theta_to_json(group, *theta) : json(nullptr)},
              {"witness", theta ? json(nullptr) : witness_to_json(group, std::get<ConditionWitness>(outcome))},
              {"literal", literal.holds}};
    for (const auto& g : grading.tuple()) j["tuple"].push_back(group.format(g));
    if (report) {
      j["oracle"] = {{"field", field.spec()},
                     {"admits", report->oracle.has_value()},
                     {"theta", report->oracle ? theta_to_json(group, *report->oracle) : json(nullptr)}};
      j["agreement"] = {{"strengthened_literal", report->strengthened_matches_literal()},
                        {"strengthened_oracle", report->strengthened_matches_oracle()},
                        {"literal_oracle", report->literal_matches_oracle()}};
    }
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "group: " << group.spec() << "  n: " << a.n << "  tuple: ("
              << format_tuple(group, grading.tuple()) << ")\n";
    if (theta) {
      std::cout << "decision: admits a homogeneous antiautomorphism\n"
                << "theta: " << describe_theta(group, *theta) << '\n'
                << "tags: " << theta->tags.label() << '\n';
    } else {
      std::cout << "decision: rejected\n"
                << "witness: " << describe_witness(grading, std::get<ConditionWitness>(outcome)) << '\n';
    }
    std::cout << "literal condition: " << (literal.holds ? "holds" : "fails") << '\n';
    if (report) {
      std::cout << "oracle (" << field.spec() << "): "
                << (report->oracle ? "homogeneous, theta: " + describe_theta(group, *report->oracle)
                                   : std::string("not homogeneous"))
                << '\n'
                << "agreement: " << (disagreement ? "DISAGREEMENT" : "all routes agree") << '\n';
    }
  }
  return disagreement ? kExitFailure : kExitOk;
}

// --------------------------------------------------------------------------

struct ClassifyArgs {
  std::string group, field = "F5", format = "human", summary_file;
  std::size_t n = 0;
  bool validate = true;
  std::size_t threads = 0;
  std::uint64_t cap = kDefaultTupleCap;
};

int run_classify(const ClassifyArgs& a) {
  const Group group = parse_group_spec(a.group);
  ClassifyOptions opts;
  opts.field = parse_field_spec(a.field);
  opts.validate = a.validate;
  opts.threads = a.threads ? a.threads : default_threads();
  opts.cap = a.cap;
  const auto result = classify_space(group, a.n, opts);
  const auto& s = result.summary;

  if (a.format == "json") {
    for (const auto& r : result.records) std::cout << record_to_json(group, r).dump() << '\n';
    std::cout << json{{"summary", summary_to_json(s)}}.dump() << '\n';
  } else if (a.format == "csv") {
    std::cout << kCsvHeader << '\n';
    for (const auto& r : result.records) std::cout << record_to_csv(group, r) << '\n';
  } else {
    std::cout << "group: " << s.group_spec << "  n: " << s.n << "  tuples: " << s.total
              << "  admits: " << s.admits() << "  rejects: " << s.rejects << '\n';
    for (const auto& [label, count] : s.tag_counts) std::cout << "  " << label << ": " << count << '\n';
    if (s.validated)
      std::cout << "oracle (" << s.field_spec << ") disagreements: " << s.oracle_disagreements << '\n';
    std::cout << "literal/strengthened disagreements: " << s.literal_disagreements << '\n';
    for (const auto& r : result.records) {
      std::cout << "  (" << format_tuple(group, r.tuple) << ")  "
                << (r.admits ? "admits  " + r.theta_tags->label()
                             : "rejects " + format_segment(r.witness->left) + ";" +
                                   format_segment(r.witness->right))
                << '\n';
    }
  }
  if (!a.summary_file.empty()) {
    std::ofstream out(a.summary_file);
    if (!out) throw UsageError("cannot write summary file '" + a.summary_file + "'");
    out << summary_to_json(s).dump(2) << '\n';
  }
  return s.oracle_disagreements || s.literal_disagreements ? kExitFailure : kExitOk;
}

// --------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite, field = "F3", group = "Z2";
  std::size_t n = 3, min_n = 3, threads = 0;
  std::uint64_t samples = 200, seed = kDefaultSeed;
};

PrimeField require_prime(const FieldSpec& spec, const std::string& suite) {
  if (spec.kind != FieldSpec::Kind::Prime)
    throw UsageError("suite '" + suite + "' enumerates exhaustively and needs a prime field");
  return PrimeField(spec.p);
}

int run_verify(const VerifyArgs& a) {
  const FieldSpec field = parse_field_spec(a.field);
  const bool sampled = a.suite == "block-inverse" || a.suite == "entry-lemma";
  if (sampled && (a.min_n < 1 || a.n < a.min_n)) throw UsageError("need 1 <= --min-n <= --n");
  if (a.n < 1) throw UsageError("--n must be at least 1");
  SuiteReport rep;
  if (a.suite == "block-inverse") {
    rep = with_field(field, [&](const auto& f) {
      return verify_block_inverse(f, a.min_n, a.n, a.samples, a.seed);
    });
  } else if (a.suite == "entry-lemma") {
    rep = with_field(field, [&](const auto& f) {
      return verify_entry_lemma(f, a.min_n, a.n, a.samples, a.seed);
    });
  } else if (a.suite == "hom-aut") {
    rep = verify_hom_aut(require_prime(field, a.suite), parse_group_spec(a.group), a.n);
  } else if (a.suite == "sign") {
    rep = verify_sign(require_prime(field, a.suite), a.n);
  } else if (a.suite == "theta-props") {
    rep = verify_theta_props(parse_group_spec(a.group), a.n);
  } else if (a.suite == "kezlan-small") {
    rep = verify_kezlan_small(require_prime(field, a.suite), a.n);
  } else if (a.suite == "oracle-agreement") {
    rep = verify_oracle_agreement(parse_group_spec(a.group), a.n, field,
                                  a.threads ? a.threads : default_threads());
  } else {
    throw UsageError("unknown suite '" + a.suite + "'");
  }
  std::cout << rep.name << ": " << (rep.passed() ? "PASS" : "FAIL") << "  checked " << rep.checked
            << ", failures " << rep.failures << '\n';
  for (const auto& [k, v] : rep.counters) std::cout << "  " << k << ": " << v << '\n';
  for (const auto& m : rep.messages) std::cout << "  failure: " << m << '\n';
  return rep.passed() ? kExitOk : kExitFailure;
}

// --------------------------------------------------------------------------

struct MatrixArgs {
  std::string op, entries, x_entries, field = "Q", format = "human";
  std::size_t n = 0;
};

template <class F>
json matrix_json(const UTMatrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 1; i <= m.n(); ++i) {
    json row = json::array();
    for (std::size_t j = 1; j <= m.n(); ++j) row.push_back(m.field().format(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

int run_matrix(const MatrixArgs& a) {
  const FieldSpec field = parse_field_spec(a.field);
  return with_field(field, [&](const auto& f) {
    const auto p = parse_ut_matrix(f, a.n, a.entries);
    const auto x_operand = [&] {
      if (a.x_entries.empty()) throw UsageError("matrix " + a.op + " needs --x-entries");
      return parse_ut_matrix(f, a.n, a.x_entries);
    };
    std::optional<std::decay_t<decltype(p)>> result;
    std::optional<int> sign;
    if (a.op == "inverse") result = block_inverse(p);
    else if (a.op == "reflect") result = canonical_involution(p);
    else if (a.op == "conjugate") result = conjugate(p, x_operand());
    else if (a.op == "antiauto") result = antiauto_apply(p, x_operand());
    else if (a.op == "sign") sign = involution_sign(p);
    else throw UsageError("unknown matrix op '" + a.op + "'");

    if (a.format == "json") {
      json j = {{"op", a.op}, {"field", field.spec()}, {"n", a.n}};
      if (result) j["result"] = matrix_json(*result);
      else j["result"] = sign ? json(*sign) : json(nullptr);
      std::cout << j.dump() << '\n';
    } else if (result) {
      std::cout << result->to_string() << '\n';
    } else {
      std::cout << (sign ? std::to_string(*sign) : std::string("none")) << '\n';
    }
    return kExitOk;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogeneous antiautomorphisms of graded upper triangular matrix algebras"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Decide one grading");
  c->add_option("--group", check.group, "Group spec: Z, Z<m>, products with x, table:<path>")->required();
  c->add_option("--n", check.n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
  c->add_option("--tuple", check.tuple, "Comma-separated degrees of E_{i,i+1}");
  c->add_option("--field", check.field, "Oracle field: Q or F<p>")->capture_default_str();
  c->add_flag("--validate,!--no-validate", check.validate, "Cross-check with the matrix oracle");
  c->add_option("--format", check.format)->check(CLI::IsMember({"human", "json"}))->capture_default_str();

  ClassifyArgs classify;
  auto* cl = app.add_subcommand("classify", "Classify every tuple of a finite group");
  cl->add_option("--group", classify.group, "Finite group spec")->required();
  cl->add_option("--n", classify.n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
  cl->add_option("--field", classify.field, "Oracle field: Q or F<p>")->capture_default_str();
  cl->add_flag("--validate,!--no-validate", classify.validate, "Cross-check with the matrix oracle");
  cl->add_option("--format", classify.format)
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->capture_default_str();
  cl->add_option("--threads", classify.threads, "Worker threads (default: $UTGRADE_THREADS or 1)");
  cl->add_option("--cap", classify.cap, "Maximum number of tuples")->capture_default_str();
  cl->add_option("--summary-file", classify.summary_file, "Also write the summary as JSON");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run a verification suite");
  v->add_option("suite", verify.suite,
                "block-inverse | entry-lemma | hom-aut | sign | theta-props | kezlan-small | oracle-agreement")
      ->required();
  v->add_option("--field", verify.field)->capture_default_str();
  v->add_option("--n", verify.n, "Dimension (upper bound for sampled suites)")->capture_default_str();
  v->add_option("--min-n", verify.min_n, "Lower dimension bound for sampled suites")->capture_default_str();
  v->add_option("--samples", verify.samples)->capture_default_str();
  v->add_option("--group", verify.group)->capture_default_str();
  v->add_option("--seed", verify.seed)->capture_default_str();
  v->add_option("--threads", verify.threads);

  MatrixArgs matrix;
  auto* m = app.add_subcommand("matrix", "Exact upper triangular matrix utilities");
  m->add_option("op", matrix.op, "inverse | reflect | conjugate | antiauto | sign")->required();
  m->add_option("--n", matrix.n)->required()->check(CLI::PositiveNumber);
  m->add_option("--entries", matrix.entries, "Upper-triangle entries, row by row")->required();
  m->add_option("--x-entries", matrix.x_entries, "Second operand X for conjugate/antiauto");
  m->add_option("--field", matrix.field)->capture_default_str();
  m->add_option("--format", matrix.format)->check(CLI::IsMember({"human", "json"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c) return run_check(check);
    if (*cl) return run_classify(classify);
    if (*v) return run_verify(verify);
    return run_matrix(matrix);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GroupError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GradingError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FieldError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MatrixError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ClassifyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
}
