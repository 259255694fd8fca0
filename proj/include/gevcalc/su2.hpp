#pragma once

// Symbols of left-invariant operators on SU(2) at spin l, in the basis
// m = -l, -l+1, ..., l (row/column index i = m + l).
//
//   P   ladder symbol,  P_{i+1,i} = -sqrt((l-n)(l+n+1)),  n = -l + i
//   M   = Pᵀ
//   R1  = (P - M)/2,  R2 = i(P + M)/2   (skew-Hermitian real fields)
//   SubL     = diag(l(l+1) - m²) = -(R1² + R2²) = ½(PM + MP)
//   Beltrami = l(l+1) I            = -(R1² + R2² + [R1,R2]²)

#include <cmath>

#include <Eigen/Sparse>

#include "gevcalc/algebra.hpp"
#include "gevcalc/multiplier.hpp"

namespace gevcalc {

enum class Su2Generator { P, M, R1, R2, SubL, Beltrami };

/// Operators with a diagonal symbol in the weight basis.
enum class Operator { SubL, Beltrami };

inline std::string_view to_string(Operator op) { return op == Operator::SubL ? "subl" : "beltrami"; }

namespace su2 {

using SparseMatrix = Eigen::SparseMatrix<cdouble>;

/// P_{i+1,i}, written with 2l so the radicand is an exact integer product.
inline double ladder_entry(HalfInt l, int i) {
  const double a = static_cast<double>(l.twice()) - i;  // l - n
  const double b = static_cast<double>(i) + 1.0;       // l + n + 1
  return -std::sqrt(a * b);
}

/// l(l+1) - m² at basis position i; exact in binary floating point.
inline double subl_eigenvalue(HalfInt l, int i) {
  const double tl = l.twice();
  const double tm = -tl + 2.0 * i;
  return (tl * (tl + 2.0) - tm * tm) / 4.0;
}

inline double beltrami_eigenvalue(HalfInt l) { return l.value() * (l.value() + 1.0); }

inline SparseMatrix letter_matrix(Letter letter, HalfInt l) {
  if (group_of(letter) != Group::SU2) {
    throw Error(ErrorCode::WrongGroup, "letter " + std::string(to_string(letter)) + " is not an SU(2) letter");
  }
  const int d = l.dim();
  std::vector<Eigen::Triplet<cdouble>> t;
  t.reserve(2 * d);
  const cdouble I(0.0, 1.0);
  for (int i = 0; i + 1 < d; ++i) {
    const double p = ladder_entry(l, i);  // P(i+1, i) = M(i, i+1)
    switch (letter) {
      case Letter::P: t.emplace_back(i + 1, i, p); break;
      case Letter::M: t.emplace_back(i, i + 1, p); break;
      case Letter::R1:
        t.emplace_back(i + 1, i, 0.5 * p);
        t.emplace_back(i, i + 1, -0.5 * p);
        break;
      case Letter::R2:
        t.emplace_back(i + 1, i, 0.5 * I * p);
        t.emplace_back(i, i + 1, 0.5 * I * p);
        break;
      default: break;
    }
  }
  SparseMatrix m(d, d);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

inline std::optional<int> letter_band(Letter letter) {
  if (letter == Letter::P) return 1;
  if (letter == Letter::M) return -1;
  return std::nullopt;
}

inline Eigen::VectorXd diagonal_of(Operator op, HalfInt l) {
  Eigen::VectorXd d(l.dim());
  for (int i = 0; i < l.dim(); ++i) {
    d[i] = op == Operator::SubL ? subl_eigenvalue(l, i) : beltrami_eigenvalue(l);
  }
  return d;
}

/// Sparse ordered product σ_{Y1}···σ_{Yn}; identity for the empty word.
inline SparseMatrix word_matrix(const GeneratorWord& word, HalfInt l) {
  if (word.group() != Group::SU2) throw Error(ErrorCode::WrongGroup, "word is not over the SU(2) alphabet");
  SparseMatrix acc(l.dim(), l.dim());
  acc.setIdentity();
  for (Letter letter : word.letters()) {
    acc = (acc * letter_matrix(letter, l)).pruned();
  }
  return acc;
}

/// Band of a {P, M}-word: #P - #M.
inline std::optional<int> word_band(const GeneratorWord& word) {
  int band = 0;
  for (Letter letter : word.letters()) {
    auto b = letter_band(letter);
    if (!b) return std::nullopt;
    band += *b;
  }
  return band;
}

}  // namespace su2

inline SymbolMatrix su2_symbol(Su2Generator gen, HalfInt l) {
  SymbolMatrix out{Group::SU2, l.value(), {}};
  switch (gen) {
    case Su2Generator::P:
      out.matrix = make_banded(Eigen::MatrixXcd(su2::letter_matrix(Letter::P, l)), 1);
      break;
    case Su2Generator::M:
      out.matrix = make_banded(Eigen::MatrixXcd(su2::letter_matrix(Letter::M, l)), -1);
      break;
    case Su2Generator::R1:
      out.matrix.entries = Eigen::MatrixXcd(su2::letter_matrix(Letter::R1, l));
      break;
    case Su2Generator::R2:
      out.matrix.entries = Eigen::MatrixXcd(su2::letter_matrix(Letter::R2, l));
      break;
    case Su2Generator::SubL:
    case Su2Generator::Beltrami: {
      const auto op = gen == Su2Generator::SubL ? Operator::SubL : Operator::Beltrami;
      out.matrix.entries = su2::diagonal_of(op, l).cast<cdouble>().asDiagonal();
      out.matrix.band_offset = 0;
      break;
    }
  }
  return out;
}

/// Left-to-right product of the letter symbols (σ_{T1 T2} = σ_{T1} σ_{T2}).
inline SymbolMatrix su2_word_symbol(const GeneratorWord& word, HalfInt l) {
  SymbolMatrix out{Group::SU2, l.value(), {}};
  out.matrix.entries = Eigen::MatrixXcd(su2::word_matrix(word, l));
  out.matrix.band_offset = su2::word_band(word);
  return out;
}

/// m(σ_op(l)) for a diagonal operator symbol, applied entrywise.
inline SymbolMatrix su2_multiplier_symbol(const MultiplierSpec& spec, Operator op, HalfInt l) {
  validate(spec);
  const Eigen::VectorXd d = su2::diagonal_of(op, l);
  Eigen::VectorXcd values(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d[i] == 0.0 && singular_at_zero(spec)) {
      throw Error(ErrorCode::TrivialRepresentation,
                  "multiplier " + describe(spec) + " is singular on the trivial representation");
    }
    values[i] = eval_multiplier(spec, d[i]);
  }
  SymbolMatrix out{Group::SU2, l.value(), {}};
  out.matrix.entries = values.asDiagonal();
  out.matrix.band_offset = 0;
  return out;
}

}  // namespace gevcalc
