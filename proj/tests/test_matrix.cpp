#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "utgrade/field.hpp"
#include "utgrade/matrix.hpp"
#include "utgrade/verify.hpp"

using namespace utgrade;

namespace {

using QM = UTMatrix<RationalField>;
using FM = UTMatrix<PrimeField>;

const RationalField Q;

QM q(std::size_t n, const std::string& entries) { return parse_ut_matrix(Q, n, entries); }

}  // namespace

TEST(FieldSpec, ParsesAndRejects) {
  EXPECT_EQ(parse_field_spec("Q"), FieldSpec::rationals());
  EXPECT_EQ(parse_field_spec("F5").p, 5u);
  EXPECT_EQ(parse_field_spec("F7").spec(), "F7");
  for (const char* bad : {"F2", "F9", "F1", "F0", "F", "F-3", "R", "", "Fx"})
    EXPECT_THROW(parse_field_spec(bad), FieldError) << bad;
}

TEST(Field, PrimeFieldArithmetic) {
  const PrimeField f(7);
  for (const auto& a : f.elements()) {
    EXPECT_EQ(a + (-a), f.zero());
    if (!f.is_zero(a)) {
      EXPECT_EQ(a * f.inv(a), f.one());
    }
    for (const auto& b : f.elements()) {
      EXPECT_EQ((a - b) + b, a);
      EXPECT_EQ(a * b, b * a);
    }
  }
  EXPECT_EQ(f.from_int(-1), Residue(6, 7));
  EXPECT_EQ(f.parse("-1"), Residue(6, 7));
  EXPECT_EQ(f.parse("15"), Residue(1, 7));
  EXPECT_THROW(f.inv(f.zero()), FieldError);
  EXPECT_THROW(f.parse("1/2"), FieldError);
}

TEST(Field, RationalLiterals) {
  EXPECT_EQ(Q.parse("-2/4"), mpq_class(-1, 2));
  EXPECT_EQ(Q.parse("3"), mpq_class(3));
  EXPECT_EQ(Q.format(Q.parse("6/-4")), "-3/2");
  EXPECT_THROW(Q.parse("1/0"), FieldError);
  EXPECT_THROW(Q.parse("a"), FieldError);
  EXPECT_THROW(Q.inv(Q.zero()), FieldError);
}

TEST(UTMatrix, ConstructionAndAccess) {
  const auto m = q(2, "1,2,3");
  EXPECT_EQ(m.at(1, 2), 2);
  EXPECT_EQ(m.at(2, 1), 0);
  EXPECT_EQ(m.to_string(), "[[1,2],[0,3]]");
  auto w = m;
  EXPECT_THROW(w.set(2, 1, 1), MatrixError);
  EXPECT_THROW(m.at(3, 3), MatrixError);
  EXPECT_THROW(q(2, "1,2"), MatrixError);
  EXPECT_THROW(q(2, "1,x,3"), FieldError);
  EXPECT_FALSE(q(2, "0,1,1").is_invertible());
}

TEST(CanonicalInvolution, Examples) {
  EXPECT_EQ(canonical_involution(QM::unit(Q, 3, 1, 2)), QM::unit(Q, 3, 2, 3));
  EXPECT_EQ(canonical_involution(QM::identity(Q, 4)), QM::identity(Q, 4));
  EXPECT_EQ(canonical_involution(q(2, "1,2,3")), q(2, "3,2,1"));
  EXPECT_EQ(canonical_involution(QM::unit(Q, 4, 1, 3)), QM::unit(Q, 4, 2, 4));
}

TEST(CanonicalInvolution, IsAnInvolutiveAntiautomorphism) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto x = random_ut(Q, n, rng), y = random_ut(Q, n, rng);
    EXPECT_EQ(canonical_involution(canonical_involution(x)), x);
    EXPECT_EQ(canonical_involution(x * y), canonical_involution(y) * canonical_involution(x));
    EXPECT_EQ(canonical_involution(x + y), canonical_involution(x) + canonical_involution(y));
  }
}

TEST(BlockInverse, Examples) {
  EXPECT_EQ(block_inverse(QM::identity(Q, 5)), QM::identity(Q, 5));
  EXPECT_EQ(block_inverse(q(2, "2,3,5")), q(2, "1/2,-3/10,1/5"));
  EXPECT_EQ(block_inverse(q(2, "1,2,3")), q(2, "1,-2/3,1/3"));
  EXPECT_EQ(block_inverse(q(1, "4")), q(1, "1/4"));
  EXPECT_THROW(block_inverse(q(3, "1,2,3,0,5,6")), MatrixError);
  EXPECT_THROW(block_inverse(q(3, "1,2,3,4,5,6"), 1), MatrixError);
  EXPECT_THROW(block_inverse(q(3, "1,2,3,4,5,6"), 3), MatrixError);
  EXPECT_THROW(block_inverse(q(2, "1,2,3"), 1), MatrixError);
}

TEST(BlockInverse, AgreesWithIndependentInverses) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto p = random_invertible_ut(Q, n, rng);
    const auto inv = block_inverse(p);
    EXPECT_EQ(inv * p, QM::identity(Q, n));
    EXPECT_EQ(p * inv, QM::identity(Q, n));
    EXPECT_EQ(inv, ref::gauss_jordan_inverse(p));
    EXPECT_EQ(inv, back_substitution_inverse(p));
    for (std::size_t k = 2; k + 1 <= n; ++k) EXPECT_EQ(block_inverse(p, k), inv) << "pivot " << k;
  }
  const PrimeField f7(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto p = random_invertible_ut(f7, n, rng);
    EXPECT_EQ(block_inverse(p), ref::gauss_jordan_inverse(p));
  }
}

TEST(Conjugate, Examples) {
  const auto x = q(3, "1,2,3,4,5,6");
  EXPECT_EQ(conjugate(QM::identity(Q, 3), x), x);
  EXPECT_EQ(conjugate(q(2, "1,0,2"), QM::unit(Q, 2, 1, 2)), q(2, "0,2,0"));
  EXPECT_THROW(conjugate(q(2, "0,1,1"), q(2, "1,0,1")), MatrixError);
  EXPECT_THROW(conjugate(QM::identity(Q, 2), x), MatrixError);
}

TEST(Conjugate, EntryLemmaAndAutomorphism) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto p = random_invertible_ut(Q, n, rng);
    for (std::size_t k = 1; k <= n; ++k) {
      const auto img = conjugate(p, QM::unit(Q, n, k, k));
      const auto anti = antiauto_apply(p, QM::unit(Q, n, n - k + 1, n - k + 1));
      for (std::size_t l = k; l <= n; ++l) {
        EXPECT_EQ(img.at(k, l), p.at(k, l) / p.at(k, k));
        EXPECT_EQ(anti.at(k, l), p.at(k, l) / p.at(k, k));
      }
    }
    const auto x = random_ut(Q, n, rng), y = random_ut(Q, n, rng);
    EXPECT_EQ(conjugate(p, x * y), conjugate(p, x) * conjugate(p, y));
    EXPECT_EQ(conjugate(p, QM::identity(Q, n)), QM::identity(Q, n));
  }
}

TEST(AntiautoApply, Examples) {
  const auto x = q(3, "1,2,3,4,5,6");
  EXPECT_EQ(antiauto_apply(QM::identity(Q, 3), x), canonical_involution(x));

  const auto p = q(2, "1,0,-1");
  for (const auto& pos : unit_positions(2)) {
    const auto e = QM::unit(Q, 2, pos.i, pos.j);
    EXPECT_EQ(antiauto_apply(p, antiauto_apply(p, e)), e);
  }
}

TEST(AntiautoApply, ReversesProducts) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto p = random_invertible_ut(Q, n, rng);
    const auto x = random_ut(Q, n, rng), y = random_ut(Q, n, rng);
    EXPECT_EQ(antiauto_apply(p, x * y), antiauto_apply(p, y) * antiauto_apply(p, x));
  }
}

TEST(InvolutionSign, Examples) {
  EXPECT_EQ(involution_sign(QM::identity(Q, 4)), 1);
  EXPECT_EQ(involution_sign(q(2, "1,0,-1")), -1);
  EXPECT_EQ(involution_sign(q(2, "1,5,2")), std::nullopt);
  EXPECT_EQ(involution_sign(q(3, "2,1,0,3,1,2")), 1);
  EXPECT_THROW(involution_sign(q(2, "0,1,1")), MatrixError);
}

TEST(HomogeneousMatrix, Examples) {
  const auto z2 = parse_group_spec("Z2");
  const ElementaryGrading g11(z2, 3, parse_tuple(z2, "1,1"));
  const ElementaryGrading g01(z2, 3, parse_tuple(z2, "0,1"));
  const auto e = z2.identity();

  EXPECT_EQ(is_homogeneous_matrix(g01, q(3, "1,0,0,2,0,3")), e);
  EXPECT_EQ(is_homogeneous_matrix(g11, QM::identity(Q, 3) + QM::unit(Q, 3, 1, 3)), e);
  EXPECT_EQ(is_homogeneous_matrix(g01, QM::identity(Q, 3) + QM::unit(Q, 3, 2, 3)), std::nullopt);
  EXPECT_EQ(is_homogeneous_matrix(g01, QM::unit(Q, 3, 2, 3) + QM::unit(Q, 3, 1, 3)),
            z2.parse_element("1"));
  EXPECT_EQ(is_homogeneous_matrix(g01, QM(Q, 3)), e);
  EXPECT_THROW(is_homogeneous_matrix(g01, QM::identity(Q, 2)), MatrixError);
}

TEST(Center, OnlyScalarsCommuteWithAllUnits) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 5; ++n) {
    EXPECT_TRUE(commutes_with_all_units(mpq_class(3, 2) * QM::identity(Q, n)));
    for (int trial = 0; trial < 20; ++trial) {
      const auto m = random_ut(Q, n, rng);
      EXPECT_EQ(commutes_with_all_units(m), is_scalar(m)) << m.to_string();
    }
  }
}

TEST(Enumeration, InvertibleUpperTriangularOverF3) {
  const PrimeField f3(3);
  std::size_t count = 0;
  for_each_invertible_ut(f3, 3, [&](const FM& p) {
    EXPECT_TRUE(p.is_invertible());
    ++count;
  });
  EXPECT_EQ(count, 216u);  // 2^3 * 3^3
  count = 0;
  for_each_invertible_ut(f3, 2, [&](const FM&) { ++count; });
  EXPECT_EQ(count, 12u);
}
