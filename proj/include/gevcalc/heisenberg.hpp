#pragma once

// Truncated infinitesimal Schrödinger representation of H₁ in the Hermite
// basis h_0, ..., h_{N-1}. With √λ := sgn(λ)√|λ| and c_k = sqrt((k+1)/2):
//
//   π(X)_{k,k+1} =  √|λ| c_k     π(X)_{k+1,k} = -√|λ| c_k
//   π(Y)_{k,k+1} = i√λ  c_k      π(Y)_{k+1,k} =  i√λ  c_k
//   π(T) = iλ I,   π(L) = diag(|λ|(2k+1))
//
// Z = X + iY and Zb = X - iY are formed from these, not transcribed.
// Products of w letters are exact except in the first and last w rows.

#include <cmath>

#include <Eigen/Sparse>

#include "gevcalc/algebra.hpp"

namespace gevcalc {

struct HeisRep {
  double lambda = 1.0;
  int trunc = 2;

  void validate() const {
    if (!std::isfinite(lambda) || lambda == 0.0) {
      throw Error(ErrorCode::InvalidLambda, "lambda must be finite and nonzero");
    }
    if (trunc < 2) throw Error(ErrorCode::TruncationTooSmall, "truncation must be >= 2");
  }
};

enum class HeisGenerator { X, Y, T, Z, Zb, SubL };

/// A truncated symbol plus the rows [row_begin, row_end] that agree with the
/// infinite matrix.
struct WindowedSymbol {
  double lambda = 1.0;
  ComplexMatrix matrix;
  int row_begin = 0;
  int row_end = 0;
};

namespace heis {

using SparseMatrix = Eigen::SparseMatrix<cdouble>;

inline double signed_sqrt(double lambda) {
  return std::copysign(std::sqrt(std::abs(lambda)), lambda);
}

inline SparseMatrix field_matrix(Letter letter, const HeisRep& rep) {
  rep.validate();
  const int n = rep.trunc;
  const double abs_root = std::sqrt(std::abs(rep.lambda));
  const double root = signed_sqrt(rep.lambda);
  const cdouble I(0.0, 1.0);
  std::vector<Eigen::Triplet<cdouble>> t;
  t.reserve(2 * n);
  for (int k = 0; k + 1 < n; ++k) {
    const double c = std::sqrt((k + 1) / 2.0);
    const cdouble x_up = abs_root * c, x_down = -abs_root * c;
    const cdouble y_up = I * root * c, y_down = I * root * c;
    cdouble up, down;
    switch (letter) {
      case Letter::X: up = x_up, down = x_down; break;
      case Letter::Y: up = y_up, down = y_down; break;
      case Letter::Z: up = x_up + I * y_up, down = x_down + I * y_down; break;
      case Letter::Zb: up = x_up - I * y_up, down = x_down - I * y_down; break;
      default:
        throw Error(ErrorCode::WrongGroup,
                    "letter " + std::string(to_string(letter)) + " is not a Heisenberg letter");
    }
    if (up != cdouble(0.0)) t.emplace_back(k, k + 1, up);
    if (down != cdouble(0.0)) t.emplace_back(k + 1, k, down);
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

/// Z lives below the diagonal for λ > 0 and above it for λ < 0; Zb the reverse.
inline std::optional<int> letter_band(Letter letter, double lambda) {
  const int sign = lambda > 0.0 ? 1 : -1;
  if (letter == Letter::Z) return sign;
  if (letter == Letter::Zb) return -sign;
  return std::nullopt;
}

inline std::optional<int> word_band(const GeneratorWord& word, double lambda) {
  int band = 0;
  for (Letter letter : word.letters()) {
    auto b = letter_band(letter, lambda);
    if (!b) return std::nullopt;
    band += *b;
  }
  return band;
}

inline double subl_eigenvalue(double lambda, int k) { return std::abs(lambda) * (2.0 * k + 1.0); }

inline SparseMatrix word_matrix(const GeneratorWord& word, const HeisRep& rep) {
  if (word.group() != Group::Heis) {
    throw Error(ErrorCode::WrongGroup, "word is not over the Heisenberg alphabet");
  }
  rep.validate();
  if (2 * static_cast<long>(word.size()) >= rep.trunc) {
    throw Error(ErrorCode::TruncationTooSmall,
                "need 2*|word| < N (|word| = " + std::to_string(word.size()) +
                    ", N = " + std::to_string(rep.trunc) + ")");
  }
  SparseMatrix acc(rep.trunc, rep.trunc);
  acc.setIdentity();
  for (Letter letter : word.letters()) acc = (acc * field_matrix(letter, rep)).pruned();
  return acc;
}

}  // namespace heis

inline SymbolMatrix heis_symbol(HeisGenerator gen, const HeisRep& rep) {
  rep.validate();
  SymbolMatrix out{Group::Heis, rep.lambda, {}};
  const int n = rep.trunc;
  switch (gen) {
    case HeisGenerator::X:
      out.matrix.entries = Eigen::MatrixXcd(heis::field_matrix(Letter::X, rep));
      break;
    case HeisGenerator::Y:
      out.matrix.entries = Eigen::MatrixXcd(heis::field_matrix(Letter::Y, rep));
      break;
    case HeisGenerator::Z:
      out.matrix = make_banded(Eigen::MatrixXcd(heis::field_matrix(Letter::Z, rep)),
                               *heis::letter_band(Letter::Z, rep.lambda));
      break;
    case HeisGenerator::Zb:
      out.matrix = make_banded(Eigen::MatrixXcd(heis::field_matrix(Letter::Zb, rep)),
                               *heis::letter_band(Letter::Zb, rep.lambda));
      break;
    case HeisGenerator::T:
      out.matrix.entries = Eigen::MatrixXcd::Identity(n, n) * cdouble(0.0, rep.lambda);
      out.matrix.band_offset = 0;
      break;
    case HeisGenerator::SubL: {
      Eigen::VectorXcd d(n);
      for (int k = 0; k < n; ++k) d[k] = heis::subl_eigenvalue(rep.lambda, k);
      out.matrix.entries = d.asDiagonal();
      out.matrix.band_offset = 0;
      break;
    }
  }
  return out;
}

inline WindowedSymbol heis_word_symbol(const GeneratorWord& word, const HeisRep& rep) {
  WindowedSymbol out;
  out.lambda = rep.lambda;
  out.matrix.entries = Eigen::MatrixXcd(heis::word_matrix(word, rep));
  out.matrix.band_offset = heis::word_band(word, rep.lambda);
  const int w = static_cast<int>(word.size());
  out.row_begin = w;
  out.row_end = rep.trunc - 1 - w;
  return out;
}

}  // namespace gevcalc
