#include <gtest/gtest.h>

#include "gevcalc/su2.hpp"

using namespace gevcalc;

namespace {

HalfInt spin(double l) { return HalfInt::from_double(l); }

Eigen::MatrixXcd mat(std::initializer_list<std::initializer_list<cdouble>> rows) {
  Eigen::MatrixXcd m(rows.size(), rows.begin()->size());
  int i = 0;
  for (auto& r : rows) {
    int j = 0;
    for (auto v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST(Su2Symbol, LadderAtSpinHalf) {
  const auto s = su2_symbol(Su2Generator::P, spin(0.5));
  EXPECT_EQ(max_abs_diff(s.matrix.entries, mat({{0, 0}, {-1, 0}})), 0.0);
  EXPECT_EQ(s.matrix.band_offset, 1);
  EXPECT_EQ(su2_symbol(Su2Generator::M, spin(0.5)).matrix.band_offset, -1);
}

TEST(Su2Symbol, SubLaplacianAtSpinOne) {
  const auto s = su2_symbol(Su2Generator::SubL, spin(1));
  EXPECT_EQ(max_abs_diff(s.matrix.entries, Eigen::Vector3cd(1, 2, 1).asDiagonal().toDenseMatrix()), 0.0);
}

TEST(Su2Symbol, TrivialRepresentation) {
  const auto s = su2_symbol(Su2Generator::P, spin(0));
  ASSERT_EQ(s.matrix.rows(), 1);
  EXPECT_EQ(s.matrix.entries(0, 0), cdouble(0.0));
}

TEST(Su2Symbol, BeltramiIsScalar) {
  const auto s = su2_symbol(Su2Generator::Beltrami, spin(1));
  EXPECT_EQ(max_abs_diff(s.matrix.entries, 2.0 * Eigen::MatrixXcd::Identity(3, 3)), 0.0);
}

TEST(Su2Symbol, MIsTransposeOfP) {
  for (double l : {0.5, 1.0, 3.5, 12.0}) {
    const auto P = su2_symbol(Su2Generator::P, spin(l)).matrix.entries;
    const auto M = su2_symbol(Su2Generator::M, spin(l)).matrix.entries;
    EXPECT_EQ(max_abs_diff(P.transpose(), M), 0.0);
  }
}

TEST(Su2Symbol, RealFieldsAreSkewAdjoint) {
  for (double l : {0.5, 2.0, 7.5}) {
    for (auto g : {Su2Generator::R1, Su2Generator::R2}) {
      const auto R = su2_symbol(g, spin(l)).matrix.entries;
      EXPECT_LE(max_abs_diff(R.adjoint(), -R), 1e-15);
    }
  }
}

TEST(Su2WordSymbol, EmptyWordIsIdentity) {
  const auto s = su2_word_symbol(GeneratorWord(Group::SU2), spin(1));
  EXPECT_EQ(max_abs_diff(s.matrix.entries, Eigen::MatrixXcd::Identity(3, 3)), 0.0);
}

TEST(Su2WordSymbol, ProductIsLeftToRight) {
  const auto pm = su2_word_symbol(parse_word("PM"), spin(0.5)).matrix.entries;
  EXPECT_EQ(max_abs_diff(pm, mat({{0, 0}, {0, 1}})), 0.0);
  const auto mp = su2_word_symbol(parse_word("MP"), spin(0.5)).matrix.entries;
  const auto sym = 0.5 * (pm + mp);
  EXPECT_EQ(max_abs_diff(sym, su2_symbol(Su2Generator::SubL, spin(0.5)).matrix.entries), 0.0);
}

TEST(Su2WordSymbol, BandIsNetShift) {
  EXPECT_EQ(su2_word_symbol(parse_word("PPM"), spin(3)).matrix.band_offset, 1);
  EXPECT_EQ(su2_word_symbol(parse_word("MMM"), spin(3)).matrix.band_offset, -3);
  EXPECT_FALSE(su2_word_symbol(parse_word("PR1"), spin(3)).matrix.band_offset.has_value());
}

TEST(Su2WordSymbol, RejectsHeisenbergWords) {
  try {
    su2_word_symbol(parse_word("XY"), spin(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongGroup);
  }
}

TEST(Su2MultiplierSymbol, Examples) {
  const auto pow1 = su2_multiplier_symbol(multiplier::Power{1}, Operator::SubL, spin(1));
  EXPECT_EQ(max_abs_diff(pow1.matrix.entries, Eigen::Vector3cd(1, 2, 1).asDiagonal().toDenseMatrix()), 0.0);

  const auto frac = su2_multiplier_symbol(multiplier::FracPower{-0.5}, Operator::SubL, spin(0.5));
  EXPECT_NEAR(frac.matrix.entries(0, 0).real(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(frac.matrix.entries(1, 1).real(), std::sqrt(2.0), 1e-15);

  const auto heat = su2_multiplier_symbol(multiplier::Heat{1.0}, Operator::SubL, spin(1));
  EXPECT_NEAR(heat.matrix.entries(0, 0).real(), std::exp(-1.0), 1e-16);
  EXPECT_NEAR(heat.matrix.entries(1, 1).real(), std::exp(-2.0), 1e-16);
  EXPECT_NEAR(heat.matrix.entries(2, 2).real(), std::exp(-1.0), 1e-16);
}

TEST(Su2MultiplierSymbol, SingularOnTrivialRepresentation) {
  try {
    su2_multiplier_symbol(multiplier::FracPower{-0.5}, Operator::SubL, spin(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TrivialRepresentation);
  }
  // Regular multipliers are fine there.
  EXPECT_NEAR(su2_multiplier_symbol(multiplier::Heat{1.0}, Operator::SubL, spin(0)).matrix.entries(0, 0).real(),
              1.0, 0.0);
}

TEST(Su2Identities, AnticommutatorAndCasimirUpToSpinFifty) {
  for (std::uint32_t t = 0; t <= 100; ++t) {
    const HalfInt l = HalfInt::from_twice(t);
    const auto P = su2_symbol(Su2Generator::P, l).matrix.entries;
    const auto M = su2_symbol(Su2Generator::M, l).matrix.entries;
    const auto R1 = su2_symbol(Su2Generator::R1, l).matrix.entries;
    const auto R2 = su2_symbol(Su2Generator::R2, l).matrix.entries;
    const auto L = su2_symbol(Su2Generator::SubL, l).matrix.entries;
    const auto B = su2_symbol(Su2Generator::Beltrami, l).matrix.entries;
    const double scale = std::max(1.0, l.value() * (l.value() + 1.0));
    EXPECT_LE(max_abs_diff(0.5 * (P * M + M * P), L), 1e-12 * scale) << "l=" << l.value();
    EXPECT_LE(max_abs_diff(-(R1 * R1 + R2 * R2), L), 1e-12 * scale) << "l=" << l.value();
    const Eigen::MatrixXcd R3 = R1 * R2 - R2 * R1;
    EXPECT_LE(max_abs_diff(-(R1 * R1 + R2 * R2 + R3 * R3), B), 1e-12 * scale) << "l=" << l.value();
  }
}

TEST(Su2Identities, CommutatorIsWeightOperator) {
  // [R1, R2] = i diag(m).
  for (double lv : {0.5, 1.0, 4.5, 10.0}) {
    const HalfInt l = spin(lv);
    const auto R1 = su2_symbol(Su2Generator::R1, l).matrix.entries;
    const auto R2 = su2_symbol(Su2Generator::R2, l).matrix.entries;
    Eigen::VectorXcd m(l.dim());
    for (int i = 0; i < l.dim(); ++i) m[i] = cdouble(0.0, l.weight(i));
    EXPECT_LE(max_abs_diff(R1 * R2 - R2 * R1, m.asDiagonal().toDenseMatrix()), 1e-12 * (1 + lv * lv));
  }
}

TEST(Su2Identities, SubLaplacianEigenvaluesAreExact) {
  const HalfInt l = spin(2.5);
  EXPECT_EQ(su2::subl_eigenvalue(l, 0), 2.5 * 3.5 - 2.5 * 2.5);
  EXPECT_EQ(su2::subl_eigenvalue(l, 2), 2.5 * 3.5 - 0.25);
}
