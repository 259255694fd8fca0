#include <gtest/gtest.h>

#include <random>

#include "gevcalc/algebra.hpp"

using namespace gevcalc;

namespace {

double svd_oracle(const Eigen::MatrixXcd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

ComplexMatrix random_single_diagonal(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 200);
  const int rows = size(rng), cols = size(rng);
  std::uniform_int_distribution<int> off(-cols + 1, rows - 1);
  const int band = off(rng);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
  for (int j = 0; j < cols; ++j) {
    const int i = j + band;
    if (i >= 0 && i < rows) m(i, j) = cdouble(g(rng), g(rng));
  }
  return make_banded(m, band);
}

}  // namespace

TEST(HalfInt, StoresTwiceTheValue) {
  const HalfInt l = HalfInt::from_double(1.5);
  EXPECT_EQ(l.twice(), 3u);
  EXPECT_EQ(l.dim(), 4);
  EXPECT_DOUBLE_EQ(l.weight(0), -1.5);
  EXPECT_DOUBLE_EQ(l.weight(3), 1.5);
  EXPECT_FALSE(l.is_integer());
  EXPECT_THROW(HalfInt::from_double(0.3), Error);
  EXPECT_THROW(HalfInt::from_double(-0.5), Error);
}

TEST(OpNorm, Examples) {
  EXPECT_NEAR(op_norm({Eigen::MatrixXcd::Identity(2, 2), {}}), 1.0, 1e-14);

  Eigen::MatrixXcd rot(2, 2);
  rot << 0, 1, -1, 0;
  EXPECT_NEAR(op_norm({rot / 2.0, {}}), 0.5, 1e-14);

  Eigen::MatrixXcd ladder(2, 2);
  ladder << 0, 0, -1, 0;
  EXPECT_NEAR(op_norm({ladder, {}}), 1.0, 1e-14);
}

TEST(OpNorm, RejectsNonFinite) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = cdouble(std::numeric_limits<double>::quiet_NaN(), 0.0);
  try {
    op_norm({m, {}});
    FAIL() << "expected InvalidMatrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidMatrix);
  }
}

TEST(OpNorm, AgreesWithSvdOnDenseRandom) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXcd m(13 + trial, 9 + 2 * trial);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cdouble(g(rng), g(rng));
    const double ref = svd_oracle(m);
    EXPECT_NEAR(op_norm({m, {}}), ref, 1e-10 * ref);
  }
}

TEST(DiagBandNorm, Examples) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(1, 0) = -1.0;
  m(2, 1) = cdouble(0.0, 3.0);
  m(3, 2) = 0.5;
  EXPECT_DOUBLE_EQ(diag_band_norm(make_banded(m, 1)), 3.0);
  EXPECT_DOUBLE_EQ(diag_band_norm(make_banded(Eigen::MatrixXcd::Zero(3, 3), 1)), 0.0);
}

TEST(DiagBandNorm, RequiresBand) {
  try {
    diag_band_norm({Eigen::MatrixXcd::Identity(2, 2), {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSingleDiagonal);
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  EXPECT_THROW(make_banded(m, 1), Error);
}

// Single-diagonal matrices have orthogonal columns, so the operator norm is the
// largest entry modulus. Checked against an independent SVD.
TEST(DiagBandNorm, MatchesSvdOnRandomSingleDiagonal) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix m = random_single_diagonal(rng);
    const double band = diag_band_norm(m);
    EXPECT_NEAR(band, svd_oracle(m.entries), 1e-12);
    EXPECT_NEAR(band, op_norm(m), 1e-12);
  }
}

TEST(LogFactorial, Examples) {
  EXPECT_EQ(log_factorial_power(0, 3.0), 0.0);
  EXPECT_NEAR(log_factorial_power(4, 1.0), std::log(24.0), 1e-15);
  EXPECT_NEAR(log_factorial_power(6, 2.0), 2.0 * std::log(720.0), 1e-14);
  EXPECT_THROW(log_factorial_power(3, 0.0), Error);
}

TEST(LogFactorial, MatchesLgammaAcrossTheStirlingSeam) {
  for (std::uint64_t n : {0ull, 1ull, 2ull, 17ull, 100ull, 255ull, 256ull, 257ull, 300ull, 1000ull, 123456ull}) {
    const double ref = std::lgamma(static_cast<double>(n) + 1.0);
    EXPECT_NEAR(log_factorial(n), ref, 1e-12 * std::max(1.0, ref)) << n;
  }
}

TEST(LogFactorial, NoOverflowWhereDoubleFactorialsWould) {
  // ((2k)!)^s overflows near k = 86 in direct evaluation.
  const double v = log_factorial_power(2 * 200, 3.0);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(v, 709.0);
}

TEST(LogFactorial, MultiIndexInequalities) {
  constexpr double tol = 1e-12;
  // α! <= |α|! <= n^{|α|} α! for every α in ℕ^n, |α| <= 12, n <= 4.
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> alpha(n, 0);
    auto check = [&] {
      int total = 0;
      double log_alpha_fact = 0.0;
      for (int a : alpha) total += a, log_alpha_fact += log_factorial_power(a, 1.0);
      if (total > 12) return;
      const double log_total_fact = log_factorial_power(total, 1.0);
      EXPECT_LE(log_alpha_fact, log_total_fact + tol);
      EXPECT_LE(log_total_fact, total * std::log(static_cast<double>(n)) + log_alpha_fact + tol);
    };
    // odometer over {0..12}^n
    while (true) {
      check();
      int pos = 0;
      while (pos < n && ++alpha[pos] > 12) alpha[pos++] = 0;
      if (pos == n) break;
    }
  }
  // (β+γ)! <= 2^{β+γ} β! γ!
  for (int b = 0; b <= 12; ++b) {
    for (int c = 0; c <= 12; ++c) {
      EXPECT_LE(log_factorial_power(b + c, 1.0),
                (b + c) * std::log(2.0) + log_factorial_power(b, 1.0) + log_factorial_power(c, 1.0) + tol);
    }
  }
}

TEST(Words, EnumerateExamples) {
  auto w1 = enumerate_words({Letter::P, Letter::M}, 1);
  ASSERT_EQ(w1.size(), 2u);
  EXPECT_EQ(w1[0].to_string(), "P");
  EXPECT_EQ(w1[1].to_string(), "M");

  auto w2 = enumerate_words({Letter::P, Letter::M}, 2);
  std::vector<std::string> names;
  for (auto& w : w2) names.push_back(w.to_string());
  EXPECT_EQ(names, (std::vector<std::string>{"P", "M", "PP", "PM", "MP", "MM"}));

  EXPECT_EQ(enumerate_words({Letter::Z, Letter::Zb}, 5).size(), 62u);
}

TEST(Words, CardinalityAndUniqueness) {
  for (int len = 1; len <= 6; ++len) {
    auto words = enumerate_words({Letter::R1, Letter::R2, Letter::P}, len);
    std::size_t expected = 0, p = 1;
    for (int j = 1; j <= len; ++j) expected += (p *= 3);
    ASSERT_EQ(words.size(), expected);
    std::set<std::string> seen;
    for (auto& w : words) seen.insert(w.to_string());
    EXPECT_EQ(seen.size(), words.size());
  }
}

TEST(Words, Errors) {
  try {
    enumerate_words({}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidAlphabet);
  }
  EXPECT_THROW(enumerate_words({Letter::P, Letter::Z}, 2), Error);
  EXPECT_THROW(GeneratorWord(Group::SU2, {Letter::X}), Error);
}

TEST(Words, ParseCompactStrings) {
  EXPECT_EQ(parse_word("ZZbZ").to_string(), "ZZbZ");
  EXPECT_EQ(parse_word("ZZbZ").size(), 3u);
  EXPECT_EQ(parse_word("R1R2P").size(), 3u);
  EXPECT_EQ(parse_word("PM").group(), Group::SU2);
  EXPECT_EQ(parse_word("XY").group(), Group::Heis);
  EXPECT_TRUE(parse_word("", Group::SU2).empty());
  EXPECT_THROW(parse_word("PQ"), Error);
  EXPECT_THROW(parse_word("PZ"), Error);
  EXPECT_THROW(parse_word(""), Error);
}

TEST(LeastSquares, RecoversExactLine) {
  std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  EXPECT_NEAR(fit_slope(x, y), 2.0, 1e-14);
  EXPECT_EQ(fit_slope({1.0}, {2.0}), 0.0);
}
