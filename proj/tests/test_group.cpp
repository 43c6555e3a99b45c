#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "utgrade/group.hpp"

using namespace utgrade;

namespace {

GroupElement el(const Group& g, const std::string& s) { return g.parse_element(s); }

std::string write_temp(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(GroupSpec, ParsesCyclicAndProducts) {
  const auto z2 = parse_group_spec("Z2");
  EXPECT_EQ(z2.order(), mpz_class(2));
  EXPECT_EQ(z2.spec(), "Z2");

  const auto z2z4 = parse_group_spec("Z2xZ4");
  EXPECT_EQ(z2z4.order(), mpz_class(8));
  EXPECT_EQ(z2z4.format(z2z4.identity()), "(0,0)");

  const auto z = parse_group_spec("Z");
  EXPECT_FALSE(z.is_finite());
  EXPECT_FALSE(z.order().has_value());
}

TEST(GroupSpec, RejectsMalformedSpecs) {
  for (const char* bad : {"", "Z0", "Z-3", "Q", "Z2x", "xZ2", "Z2xY3", "Zabc", "table:"})
    EXPECT_THROW(parse_group_spec(bad), GroupError) << bad;
}

TEST(GroupSpec, RoundTripsThroughCanonicalSpec) {
  for (const char* spec : {"Z", "Z1", "Z7", "Z2xZ2", "ZxZ3", "Z2xZ4xZ"}) {
    const auto g = parse_group_spec(spec);
    EXPECT_EQ(g.spec(), spec);
    EXPECT_EQ(parse_group_spec(g.spec()).spec(), g.spec());
  }
}

TEST(GroupOps, CyclicAndIntegerExamples) {
  const auto z4 = parse_group_spec("Z4");
  EXPECT_EQ(z4.op(el(z4, "3"), el(z4, "2")), el(z4, "1"));
  EXPECT_EQ(z4.inverse(el(z4, "3")), el(z4, "1"));
  EXPECT_EQ(z4.inverse(z4.identity()), z4.identity());

  const auto z = parse_group_spec("Z");
  EXPECT_EQ(z.op(el(z, "5"), el(z, "-2")), el(z, "3"));
  // arbitrary precision
  const auto big = el(z, "123456789012345678901234567890");
  EXPECT_EQ(z.op(big, z.inverse(big)), z.identity());

  const auto v4 = parse_group_spec("Z2xZ2");
  EXPECT_EQ(v4.inverse(el(v4, "(1,1)")), el(v4, "(1,1)"));
}

TEST(GroupOps, RejectsForeignElements) {
  const auto z4 = parse_group_spec("Z4");
  const auto z2z2 = parse_group_spec("Z2xZ2");
  EXPECT_THROW(z4.op(z4.identity(), z2z2.identity()), GroupError);
  EXPECT_THROW(z2z2.inverse(z4.parse_element("3")), GroupError);
  EXPECT_THROW(z4.parse_element("4"), GroupError);
  EXPECT_THROW(z2z2.parse_element("1,1"), GroupError);
  EXPECT_THROW(z2z2.parse_element("(1,1,0)"), GroupError);
}

TEST(GroupOps, FiniteGroupAxiomsHoldExhaustively) {
  for (const char* spec : {"Z1", "Z2", "Z5", "Z6", "Z2xZ2", "Z2xZ4", "Z3xZ3", "Z4xZ2xZ2"}) {
    const auto g = parse_group_spec(spec);
    const auto e = g.identity();
    const auto elems = g.elements();
    ASSERT_EQ(mpz_class(static_cast<unsigned long>(elems.size())), *g.order());
    for (const auto& a : elems) {
      EXPECT_EQ(g.op(e, a), a);
      EXPECT_EQ(g.op(a, e), a);
      EXPECT_EQ(g.op(a, g.inverse(a)), e);
      EXPECT_EQ(g.op(g.inverse(a), a), e);
      for (const auto& b : elems)
        for (const auto& c : elems) EXPECT_EQ(g.op(g.op(a, b), c), g.op(a, g.op(b, c)));
    }
  }
}

TEST(GroupOps, ElementsAreLexicographic) {
  const auto g = parse_group_spec("Z2xZ3");
  const auto elems = g.elements();
  ASSERT_EQ(elems.size(), 6u);
  EXPECT_EQ(g.format(elems[0]), "(0,0)");
  EXPECT_EQ(g.format(elems[1]), "(0,1)");
  EXPECT_EQ(g.format(elems[3]), "(1,0)");
  EXPECT_TRUE(std::is_sorted(elems.begin(), elems.end()));
  EXPECT_THROW(parse_group_spec("Z").elements(), GroupError);
}

TEST(SegmentProduct, Examples) {
  const auto z = parse_group_spec("Z");
  EXPECT_EQ(segment_product(z, parse_tuple(z, "1,-1"), 1, 2), z.identity());

  const auto z3 = parse_group_spec("Z3");
  EXPECT_EQ(segment_product(z3, parse_tuple(z3, "1,2,1,1"), 2, 2), z3.identity());
  EXPECT_EQ(segment_product(z3, parse_tuple(z3, "1,2,1,1"), 3, 2), z3.parse_element("2"));

  EXPECT_THROW(segment_product(z3, parse_tuple(z3, "1,2"), 2, 2), GroupError);
  EXPECT_THROW(segment_product(z3, parse_tuple(z3, "1,2"), 0, 1), GroupError);
}

TEST(SegmentProduct, ProductOrderMattersInNonAbelianGroups) {
  const auto s3 = parse_group_spec(std::string("table:") + UTGRADE_TEST_DATA "/s3.json");
  const auto s = s3.parse_element("s"), r = s3.parse_element("r");
  ASSERT_NE(s3.op(s, r), s3.op(r, s));
  const auto tuple = parse_tuple(s3, "s,r");
  EXPECT_EQ(segment_product(s3, tuple, 1, 2), s3.op(s, r));
  EXPECT_EQ(s3.inverse(r), s3.parse_element("r2"));
}

TEST(SegmentProduct, RecursionProperty) {
  std::mt19937 rng(7);
  const auto g = parse_group_spec("Z3xZ4");
  const auto elems = g.elements();
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<GroupElement> tuple;
    for (int t = 0; t < 8; ++t) tuple.push_back(elems[pick(rng)]);
    for (std::size_t i = 1; i <= tuple.size(); ++i)
      for (std::size_t k = 1; i + k - 1 <= tuple.size(); ++k)
        EXPECT_EQ(segment_product(g, tuple, i, k),
                  g.op(segment_product(g, tuple, i, k - 1), tuple[i + k - 2]));
  }
}

TEST(CayleyTable, LoadsAndValidates) {
  const auto path = write_temp("utgrade_z3.json",
                               R"({"elements": ["e","a","b"], "table": [[0,1,2],[1,2,0],[2,0,1]], "identity": 0})");
  const auto g = parse_group_spec("table:" + path);
  EXPECT_EQ(g.order(), mpz_class(3));
  EXPECT_EQ(g.spec(), "table:" + path);
  EXPECT_EQ(parse_group_spec(g.spec()).spec(), g.spec());
  EXPECT_EQ(g.format(g.op(g.parse_element("a"), g.parse_element("a"))), "b");
  EXPECT_EQ(g.format(g.inverse(g.parse_element("a"))), "b");

  const auto prod = parse_group_spec("Z2xtable:" + path);
  EXPECT_EQ(prod.order(), mpz_class(6));
  EXPECT_EQ(prod.format(prod.identity()), "(0,e)");
}

TEST(CayleyTable, RejectsNonGroups) {
  // a latin square with identity 0 whose product is not associative
  EXPECT_THROW(parse_cayley_table(R"({"elements": ["e","a","b","c","d"],
      "table": [[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]], "identity": 0})"),
               GroupError);
  // a 3x3 table violating associativity
  EXPECT_THROW(parse_cayley_table(R"({"elements": ["e","a","b"],
      "table": [[0,1,2],[1,0,0],[2,0,0]], "identity": 0})"),
               GroupError);
  // no identity
  EXPECT_THROW(parse_cayley_table(R"({"elements": ["a","b"], "table": [[1,0],[0,1]], "identity": 0})"),
               GroupError);
  // missing inverse
  EXPECT_THROW(parse_cayley_table(R"({"elements": ["e","a"], "table": [[0,1],[1,1]], "identity": 0})"),
               GroupError);
  EXPECT_THROW(parse_cayley_table(R"({"elements": ["e"], "table": [[0]]})"), GroupError);
  EXPECT_THROW(parse_cayley_table(R"({"elements": ["e","e"], "table": [[0,1],[1,0]], "identity": 0})"),
               GroupError);
  EXPECT_THROW(parse_cayley_table("not json"), GroupError);
  EXPECT_THROW(parse_group_spec("table:/nonexistent/file.json"), GroupError);
}

TEST(CayleyTable, EnforcesOrderCap) {
  const std::size_t m = kMaxTableOrder + 1;
  nlohmann::json doc;
  doc["identity"] = 0;
  for (std::size_t a = 0; a < m; ++a) {
    doc["elements"].push_back("g" + std::to_string(a));
    std::vector<std::size_t> row;
    for (std::size_t b = 0; b < m; ++b) row.push_back((a + b) % m);
    doc["table"].push_back(row);
  }
  EXPECT_THROW(parse_cayley_table(doc.dump()), GroupError);
}

TEST(Tuples, ParseAndFormat) {
  const auto g = parse_group_spec("Z2xZ4");
  const auto t = parse_tuple(g, "(1,0),(0,3)");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(format_tuple(g, t), "(1,0),(0,3)");
  EXPECT_TRUE(parse_tuple(g, "").empty());
  EXPECT_THROW(parse_tuple(g, "(1,0),(0,4)"), GroupError);
  EXPECT_THROW(parse_tuple(g, "(1,0"), GroupError);
}
