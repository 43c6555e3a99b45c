#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "utgrade/grading.hpp"

using namespace utgrade;

namespace {

ElementaryGrading make(const std::string& group, std::size_t n, const std::string& tuple) {
  const auto g = parse_group_spec(group);
  return ElementaryGrading(g, n, parse_tuple(g, tuple));
}

std::set<std::string> formatted(const Group& g, const std::vector<GroupElement>& elems) {
  std::set<std::string> out;
  for (const auto& e : elems) out.insert(g.format(e));
  return out;
}

}  // namespace

TEST(Grading, DegreeExamples) {
  const auto z2 = make("Z2", 3, "1,1");
  EXPECT_EQ(z2.degree(1, 3), z2.group().identity());
  EXPECT_EQ(z2.degree(2, 2), z2.group().identity());
  EXPECT_EQ(z2.group().format(z2.degree(1, 2)), "1");

  const auto z = make("Z", 3, "2,5");
  EXPECT_EQ(z.group().format(z.degree(1, 3)), "7");
}

TEST(Grading, DegreeRejectsPositionsOutsideUTn) {
  const auto g = make("Z2", 3, "0,1");
  EXPECT_THROW(g.degree(2, 1), GradingError);
  EXPECT_THROW(g.degree(0, 1), GradingError);
  EXPECT_THROW(g.degree(1, 4), GradingError);
}

TEST(Grading, ValidatesTupleLength) {
  const auto z2 = parse_group_spec("Z2");
  EXPECT_THROW(ElementaryGrading(z2, 3, parse_tuple(z2, "0")), GradingError);
  EXPECT_THROW(ElementaryGrading(z2, 0, {}), GradingError);
  EXPECT_NO_THROW(ElementaryGrading(z2, 1, {}));
}

TEST(Grading, SupportExamples) {
  const auto trivial = make("Z3", 4, "0,0,0");
  auto s = support(trivial);
  ASSERT_EQ(s.components.size(), 1u);
  EXPECT_EQ(s.component(trivial.group().identity()).size(), 10u);

  const auto z = make("Z", 3, "1,1");
  EXPECT_EQ(formatted(z.group(), support(z).support()), (std::set<std::string>{"0", "1", "2"}));

  const auto z2 = make("Z2", 3, "0,1");
  s = support(z2);
  EXPECT_EQ(formatted(z2.group(), s.support()), (std::set<std::string>{"0", "1"}));
  EXPECT_EQ(s.component(z2.group().parse_element("1")), (std::vector<Position>{{1, 3}, {2, 3}}));

  const auto one = make("Z5", 1, "");
  EXPECT_EQ(support(one).components.size(), 1u);
}

TEST(Grading, ComponentProductExamples) {
  const auto g = make("Z2", 3, "0,1");
  const auto e = g.group().identity(), one = g.group().parse_element("1");
  EXPECT_TRUE(component_product_nonzero(g, e, e));
  EXPECT_FALSE(component_product_nonzero(g, one, one));
  EXPECT_TRUE(component_product_nonzero(g, e, one));
  EXPECT_THROW(component_product_nonzero(make("Z3", 2, "0"), e, one), GradingError);
}

// Properties over random gradings, including a non-abelian group.
TEST(GradingProperties, DegreeSupportAndComponents) {
  std::mt19937 rng(11);
  const std::vector<std::string> groups = {"Z2", "Z4", "Z2xZ3", "Z",
                                           std::string("table:") + UTGRADE_TEST_DATA "/s3.json"};
  for (const auto& spec : groups) {
    const auto group = parse_group_spec(spec);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 1 + rng() % 7;
      std::vector<GroupElement> tuple;
      for (std::size_t t = 0; t + 1 < n; ++t) {
        if (group.is_finite()) {
          const auto elems = group.elements();
          tuple.push_back(elems[rng() % elems.size()]);
        } else {
          tuple.push_back(group.parse_element(std::to_string(static_cast<int>(rng() % 7) - 3)));
        }
      }
      const ElementaryGrading grading(group, n, tuple);

      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i; j <= n; ++j) {
          EXPECT_EQ(grading.degree(i, j), ref::ntuple_degree(group, tuple, i, j));
          for (std::size_t k = j; k <= n; ++k)
            EXPECT_EQ(group.op(grading.degree(i, j), grading.degree(j, k)), grading.degree(i, k));
        }

      const auto supp = support(grading);
      std::size_t placed = 0;
      for (const auto& [g, positions] : supp.components) placed += positions.size();
      EXPECT_EQ(placed, n * (n + 1) / 2);
      EXPECT_TRUE(supp.contains(group.identity()));

      const auto closed = support_closed_form(grading);
      const auto enumerated = supp.support();
      EXPECT_EQ(std::vector<GroupElement>(closed.begin(), closed.end()), enumerated) << spec;

      for (const auto& g : enumerated)
        for (const auto& h : enumerated)
          if (component_product_nonzero(supp, g, h)) {
            EXPECT_TRUE(supp.contains(group.op(g, h)));
          }
    }
  }
}

TEST(Grading, PositionIndexMatchesEnumeration) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto positions = unit_positions(n);
    for (std::size_t t = 0; t < positions.size(); ++t) EXPECT_EQ(position_index(n, positions[t]), t);
  }
}
