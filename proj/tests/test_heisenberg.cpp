#include <gtest/gtest.h>

#include "gevcalc/heisenberg.hpp"

using namespace gevcalc;

namespace {

const cdouble I(0.0, 1.0);

Eigen::MatrixXcd field(HeisGenerator g, double lambda, int n) { return heis_symbol(g, {lambda, n}).matrix.entries; }

double window_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, int first, int last) {
  return max_abs_diff(a.middleRows(first, last - first + 1), b.middleRows(first, last - first + 1));
}

}  // namespace

TEST(HeisSymbol, Examples) {
  EXPECT_EQ(max_abs_diff(field(HeisGenerator::SubL, 1.0, 3), Eigen::Vector3cd(1, 3, 5).asDiagonal().toDenseMatrix()),
            0.0);

  Eigen::MatrixXcd x(2, 2);
  x << 0, std::sqrt(0.5), -std::sqrt(0.5), 0;
  EXPECT_LE(max_abs_diff(field(HeisGenerator::X, 1.0, 2), x), 1e-16);

  EXPECT_EQ(max_abs_diff(field(HeisGenerator::T, 2.0, 4), 2.0 * I * Eigen::MatrixXcd::Identity(4, 4)), 0.0);

  const auto z = heis_symbol(HeisGenerator::Z, {1.0, 2});
  EXPECT_NEAR(z.matrix.entries(1, 0).real(), -std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(z.matrix.entries(1, 0).imag(), 0.0, 1e-15);
  EXPECT_EQ(z.matrix.entries(0, 1), cdouble(0.0));
  EXPECT_EQ(z.matrix.band_offset, 1);
}

TEST(HeisSymbol, Validation) {
  try {
    heis_symbol(HeisGenerator::X, {0.0, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidLambda);
  }
  try {
    heis_symbol(HeisGenerator::X, {1.0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TruncationTooSmall);
  }
}

TEST(HeisSymbol, FieldsAreSkewAdjoint) {
  for (double lambda : {0.5, 1.0, -2.0}) {
    for (auto g : {HeisGenerator::X, HeisGenerator::Y}) {
      const auto m = field(g, lambda, 16);
      EXPECT_EQ(max_abs_diff(m.adjoint(), -m), 0.0);
    }
  }
}

TEST(HeisIdentities, SubLaplacianCentreAndAnticommutator) {
  constexpr int n = 64;
  for (double lambda : {0.5, 1.0, 2.0}) {
    const auto X = field(HeisGenerator::X, lambda, n), Y = field(HeisGenerator::Y, lambda, n);
    const auto Z = field(HeisGenerator::Z, lambda, n), Zb = field(HeisGenerator::Zb, lambda, n);
    const auto L = field(HeisGenerator::SubL, lambda, n), T = field(HeisGenerator::T, lambda, n);
    const double tol = 1e-12 * lambda * n;
    EXPECT_LE(window_diff(-(X * X + Y * Y), L, 1, n - 2), tol);
    EXPECT_LE(window_diff(0.5 * I * (Z * Zb - Zb * Z), T, 1, n - 2), 1e-12 * lambda);
    EXPECT_LE(window_diff(-0.5 * (Z * Zb + Zb * Z), L, 1, n - 2), tol);
    // Outside the window the truncation shows.
    EXPECT_GT(max_abs_diff((-(X * X + Y * Y)).bottomRows(1), L.bottomRows(1)), 1.0);
  }
}

TEST(HeisIdentities, SquaresOfZAreNotTheSubLaplacian) {
  const auto Z = field(HeisGenerator::Z, 1.0, 32), Zb = field(HeisGenerator::Zb, 1.0, 32);
  const auto L = field(HeisGenerator::SubL, 1.0, 32);
  EXPECT_GT(window_diff(0.5 * (Z * Z + Zb * Zb), L, 2, 29), 0.5);
}

TEST(HeisIdentities, NegativeLambdaSignConvention) {
  constexpr int n = 32;
  const double lambda = -1.0;
  const auto Z = field(HeisGenerator::Z, lambda, n), Zb = field(HeisGenerator::Zb, lambda, n);
  const auto L = field(HeisGenerator::SubL, lambda, n), T = field(HeisGenerator::T, lambda, n);
  EXPECT_LE(window_diff(0.5 * I * (Z * Zb - Zb * Z), T, 1, n - 2), 1e-12);
  EXPECT_LE(window_diff(-0.5 * (Z * Zb + Zb * Z), L, 1, n - 2), 1e-12 * n);
  // Z raises the Hermite index for λ < 0.
  const auto z = heis_symbol(HeisGenerator::Z, {lambda, n});
  EXPECT_EQ(z.matrix.band_offset, -1);
  EXPECT_NEAR(z.matrix.entries(0, 1).real(), 2.0 * std::sqrt(0.5), 1e-15);
  EXPECT_EQ(heis_symbol(HeisGenerator::Zb, {lambda, n}).matrix.band_offset, 1);
  EXPECT_EQ(L(0, 0), cdouble(1.0));
}

TEST(HeisWordSymbol, Examples) {
  const auto zzb = heis_word_symbol(parse_word("ZZb"), {1.0, 8});
  EXPECT_EQ(zzb.matrix.band_offset, 0);
  EXPECT_NEAR(zzb.matrix.entries(1, 1).real(), -2.0, 1e-14);
  EXPECT_EQ(zzb.row_begin, 2);
  EXPECT_EQ(zzb.row_end, 5);

  Eigen::MatrixXcd x(2, 2);
  x << 0, std::sqrt(0.5), -std::sqrt(0.5), 0;
  // N = 2 admits only the empty word under 2|w| < N, so compare the letter symbol.
  EXPECT_LE(max_abs_diff(field(HeisGenerator::X, 4.0, 2), 2.0 * x), 1e-15);

  const auto empty = heis_word_symbol(GeneratorWord(Group::Heis), {3.0, 6});
  EXPECT_EQ(max_abs_diff(empty.matrix.entries, Eigen::MatrixXcd::Identity(6, 6)), 0.0);
  EXPECT_EQ(empty.row_begin, 0);
  EXPECT_EQ(empty.row_end, 5);
}

TEST(HeisWordSymbol, Errors) {
  try {
    heis_word_symbol(parse_word("ZZ"), {1.0, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TruncationTooSmall);
  }
  try {
    heis_word_symbol(parse_word("PM"), {1.0, 16});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongGroup);
  }
}

TEST(HeisWordSymbol, BandIsNetRaise) {
  for (const char* w : {"Z", "ZZbZ", "ZbZbZb", "ZZZZbZ"}) {
    const GeneratorWord word = parse_word(w);
    int expected = 0;
    for (Letter x : word.letters()) expected += x == Letter::Z ? 1 : -1;
    const auto s = heis_word_symbol(word, {1.0, 40});
    ASSERT_TRUE(s.matrix.band_offset.has_value()) << w;
    EXPECT_EQ(*s.matrix.band_offset, expected) << w;
    EXPECT_NO_THROW(make_banded(s.matrix.entries, expected));
  }
}

TEST(HeisWordSymbol, Homogeneity) {
  for (const char* w : {"X", "XY", "ZZb", "YYX", "ZbZZ"}) {
    const GeneratorWord word = parse_word(w);
    const auto base = heis_word_symbol(word, {1.0, 24}).matrix.entries;
    for (double lambda : {0.25, 4.0}) {
      const auto scaled = heis_word_symbol(word, {lambda, 24}).matrix.entries;
      const double factor = std::pow(lambda, word.size() / 2.0);
      // Powers of two: the scaling is exact in floating point.
      EXPECT_EQ(max_abs_diff(scaled, factor * base), 0.0) << w;
    }
  }
}
