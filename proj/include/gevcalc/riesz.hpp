#pragma once

// Higher-order Riesz transforms R_w = ∂^w L^{-|w|/2}. The symbol is the word
// symbol right-multiplied by the diagonal multiplier L^{-|w|/2}; operator
// norms are swept over the dual of SU(2) (spin l) or H₁ (parameter λ).

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "gevcalc/algebra.hpp"
#include "gevcalc/detail/parallel.hpp"
#include "gevcalc/heisenberg.hpp"
#include "gevcalc/su2.hpp"

namespace gevcalc {

struct RieszContext {
  Group group = Group::SU2;
  Operator op = Operator::SubL;
  std::optional<HeisRep> heis_rep;

  void validate() const {
    if (op == Operator::Beltrami && group != Group::SU2) {
      throw Error(ErrorCode::InvalidArgument, "the Beltrami operator is only available on SU(2)");
    }
    if (group == Group::Heis) {
      if (!heis_rep) throw Error(ErrorCode::InvalidArgument, "Heisenberg context needs a representation");
      heis_rep->validate();
    }
  }
};

inline SymbolMatrix riesz_symbol_su2(Operator op, const GeneratorWord& word, HalfInt l) {
  if (word.group() != Group::SU2) throw Error(ErrorCode::WrongGroup, "word is not over the SU(2) alphabet");
  if (word.empty()) throw Error(ErrorCode::EmptyWord, "Riesz transform needs |word| >= 1");
  if (l.twice() == 0) {
    throw Error(ErrorCode::TrivialRepresentation, "l = 0 is the kernel of the sub-Laplacian");
  }
  const double power = -0.5 * static_cast<double>(word.size());
  const Eigen::VectorXd d = su2::diagonal_of(op, l);
  Eigen::VectorXcd scale(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) scale[i] = std::pow(d[i], power);
  SymbolMatrix out{Group::SU2, l.value(), {}};
  out.matrix.entries = Eigen::MatrixXcd(su2::word_matrix(word, l)) * scale.asDiagonal();
  out.matrix.band_offset = su2::word_band(word);
  return out;
}

/// Heisenberg Riesz symbol; rows outside the truncation-exact window are zeroed.
inline WindowedSymbol riesz_symbol_heis(const GeneratorWord& word, const HeisRep& rep) {
  if (word.group() != Group::Heis) {
    throw Error(ErrorCode::WrongGroup, "word is not over the Heisenberg alphabet");
  }
  if (word.empty()) throw Error(ErrorCode::EmptyWord, "Riesz transform needs |word| >= 1");
  WindowedSymbol out = heis_word_symbol(word, rep);
  const double power = -0.5 * static_cast<double>(word.size());
  auto& a = out.matrix.entries;
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    a.col(k) *= std::pow(heis::subl_eigenvalue(rep.lambda, static_cast<int>(k)), power);
  }
  if (out.row_begin > 0) a.topRows(out.row_begin).setZero();
  const Eigen::Index tail = a.rows() - 1 - out.row_end;
  if (tail > 0) a.bottomRows(tail).setZero();
  return out;
}

/// Dispatch on the context: `index` is l for SU(2) and λ for the Heisenberg
/// group (with the context's truncation).
inline SymbolMatrix riesz_symbol(const RieszContext& ctx, const GeneratorWord& word, double index) {
  ctx.validate();
  if (word.group() != ctx.group) throw Error(ErrorCode::WrongGroup, "word does not match the context group");
  if (ctx.group == Group::SU2) return riesz_symbol_su2(ctx.op, word, HalfInt::from_double(index));
  HeisRep rep{index, ctx.heis_rep->trunc};
  WindowedSymbol w = riesz_symbol_heis(word, rep);
  return SymbolMatrix{Group::Heis, index, std::move(w.matrix)};
}

struct SweepSample {
  double index = 0.0;
  double norm = 0.0;
  friend bool operator==(const SweepSample&, const SweepSample&) = default;
};

struct SweepWindow {
  int trunc = 0;
  int row_begin = 0;
  int row_end = 0;
  friend bool operator==(const SweepWindow&, const SweepWindow&) = default;
};

struct SweepReport {
  std::string word;
  Group group = Group::SU2;
  Operator op = Operator::SubL;
  std::vector<SweepSample> samples;
  double sup_norm = 0.0;
  double growth_slope = 0.0;        ///< OLS d log norm / d log index over the upper half
  double stabilization_ratio = 1.0; ///< norm(index_max) / norm(index_max / 2)
  std::optional<SweepWindow> window;
  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

/// Summary statistics of a sample list (shared by the SU(2) and H₁ sweeps).
inline void summarize(SweepReport& r) {
  if (r.samples.empty()) throw Error(ErrorCode::InvalidArgument, "sweep has no samples");
  r.sup_norm = 0.0;
  for (const auto& s : r.samples) r.sup_norm = std::max(r.sup_norm, s.norm);
  const double top = r.samples.back().index;
  std::vector<double> x, y;
  for (const auto& s : r.samples) {
    if (s.index >= 0.5 * top && s.norm > 0.0 && s.index > 0.0) {
      x.push_back(std::log(s.index));
      y.push_back(std::log(s.norm));
    }
  }
  r.growth_slope = fit_slope(x, y);
  const auto half = std::min_element(r.samples.begin(), r.samples.end(), [&](const auto& a, const auto& b) {
    return std::abs(a.index - 0.5 * top) < std::abs(b.index - 0.5 * top);
  });
  r.stabilization_ratio = r.samples.back().norm / half->norm;
}

/// Operator norms of R_w over the given indices (ascending). Uses the exact
/// max-entry norm whenever the symbol is single-diagonal.
inline SweepReport riesz_sweep(const RieszContext& ctx, const GeneratorWord& word,
                               const std::vector<double>& range, unsigned threads = 1) {
  ctx.validate();
  if (range.empty()) throw Error(ErrorCode::InvalidArgument, "sweep range is empty");
  if (!std::is_sorted(range.begin(), range.end())) {
    throw Error(ErrorCode::InvalidArgument, "sweep range must be sorted ascending");
  }
  SweepReport r;
  r.word = word.to_string();
  r.group = ctx.group;
  r.op = ctx.op;
  r.samples.resize(range.size());
  detail::parallel_for(range.size(), threads, [&](std::size_t i) {
    const SymbolMatrix s = riesz_symbol(ctx, word, range[i]);
    r.samples[i] = {range[i], symbol_norm(s.matrix)};
  });
  if (ctx.group == Group::Heis) {
    const int w = static_cast<int>(word.size());
    r.window = SweepWindow{ctx.heis_rep->trunc, w, ctx.heis_rep->trunc - 1 - w};
  }
  summarize(r);
  return r;
}

/// l = ½, 1, ..., l_max.
inline std::vector<double> su2_spin_range(double l_min, double l_max) {
  const HalfInt lo = HalfInt::from_double(l_min), hi = HalfInt::from_double(l_max);
  std::vector<double> out;
  for (std::uint32_t t = std::max<std::uint32_t>(lo.twice(), 1); t <= hi.twice(); ++t) {
    out.push_back(0.5 * t);
  }
  return out;
}

/// ∞-norms of the three factor types in
///   R_w = (σ_{w1} L^{-½}) (L^{½} σ_{w2} L^{-½}) ··· (L^{½} σ_{wn} L^{-n/2}).
struct FactorBounds {
  double t1 = 0.0;
  std::vector<double> t2;
  double t3 = 0.0;

  double product() const {
    return std::accumulate(t2.begin(), t2.end(), t1 * t3, std::multiplies<>());
  }
};

inline FactorBounds factor_decomposition(const GeneratorWord& word, HalfInt l) {
  if (word.group() != Group::SU2 || !word.uses_only({Letter::P, Letter::M})) {
    throw Error(ErrorCode::InvalidAlphabet, "factor decomposition needs a word over {P, M}");
  }
  if (word.size() < 2) throw Error(ErrorCode::NeedLengthTwo, "factor decomposition needs |word| >= 2");
  if (l.twice() == 0) throw Error(ErrorCode::TrivialRepresentation, "l = 0 is excluded");
  const double n = static_cast<double>(word.size());
  const Eigen::VectorXd d = su2::diagonal_of(Operator::SubL, l);
  const Eigen::VectorXcd root = d.cwiseSqrt().cast<cdouble>();
  const Eigen::VectorXcd inv_root = d.cwiseSqrt().cwiseInverse().cast<cdouble>();
  Eigen::VectorXcd inv_full(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) inv_full[i] = std::pow(d[i], -0.5 * n);

  auto band_norm = [&](Letter letter, const Eigen::MatrixXcd& m) {
    return diag_band_norm(ComplexMatrix{m, su2::letter_band(letter)});
  };
  auto letter = [&](Letter x) { return Eigen::MatrixXcd(su2::letter_matrix(x, l)); };

  FactorBounds f;
  f.t1 = band_norm(word[0], letter(word[0]) * inv_root.asDiagonal());
  for (std::size_t j = 1; j + 1 < word.size(); ++j) {
    f.t2.push_back(band_norm(word[j], root.asDiagonal() * letter(word[j]) * inv_root.asDiagonal()));
  }
  const Letter last = word[word.size() - 1];
  f.t3 = band_norm(last, root.asDiagonal() * letter(last) * inv_full.asDiagonal());
  return f;
}

/// Log-log slopes of the type-2 and type-3 factors over l in [l_min, l_max].
struct FactorScaling {
  std::vector<double> t2_slopes;
  double t3_slope = 0.0;
};

inline FactorScaling factor_scaling(const GeneratorWord& word, double l_min, double l_max) {
  std::vector<double> x;
  std::vector<std::vector<double>> t2(word.size() >= 2 ? word.size() - 2 : 0);
  std::vector<double> t3;
  for (double l : su2_spin_range(l_min, l_max)) {
    const FactorBounds f = factor_decomposition(word, HalfInt::from_double(l));
    x.push_back(std::log(l));
    for (std::size_t j = 0; j < f.t2.size(); ++j) t2[j].push_back(std::log(f.t2[j]));
    t3.push_back(std::log(f.t3));
  }
  FactorScaling s;
  for (const auto& series : t2) s.t2_slopes.push_back(fit_slope(x, series));
  s.t3_slope = fit_slope(x, t3);
  return s;
}

struct SignedWord {
  int coefficient = 1;
  GeneratorWord word{Group::SU2};
};

/// L^k = (-1)^k Σ_{S ∈ {R1,R2}^k} S1² S2² ··· Sk², as 2^k signed words.
inline std::vector<SignedWord> expand_subl_power(int k) {
  if (k < 1 || k > 6) throw Error(ErrorCode::Unsupported, "expand_subl_power supports 1 <= k <= 6");
  const int sign = k % 2 == 0 ? 1 : -1;
  std::vector<SignedWord> out;
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::vector<Letter> letters;
    for (int pos = k - 1; pos >= 0; --pos) {
      const Letter s = (mask >> pos) & 1 ? Letter::R2 : Letter::R1;
      letters.push_back(s);
      letters.push_back(s);
    }
    out.push_back({sign, GeneratorWord(Group::SU2, std::move(letters))});
  }
  return out;
}

/// max-entry distance between σ_SubL(l)^k and the signed word expansion.
inline double subl_power_residual(int k, HalfInt l) {
  Eigen::MatrixXcd expansion = Eigen::MatrixXcd::Zero(l.dim(), l.dim());
  for (const auto& term : expand_subl_power(k)) {
    expansion += static_cast<double>(term.coefficient) * su2_word_symbol(term.word, l).matrix.entries;
  }
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(l.dim(), l.dim());
  const Eigen::MatrixXcd subl = su2_symbol(Su2Generator::SubL, l).matrix.entries;
  for (int i = 0; i < k; ++i) power = power * subl;
  return max_abs_diff(power, expansion);
}

/// Symmetrised multinomial
///   (1/m!) Σ_{k1+..+km=h} h!/(k1!..km!) Σ_{σ ∈ S_m} Π_t Y_{σ(t)}^{k_t}.
/// Equals (Y1 + ... + Ym)^h when the Y commute.
inline Eigen::MatrixXcd symmetrized_multinomial(const std::vector<Eigen::MatrixXcd>& ys, int h) {
  const int m = static_cast<int>(ys.size());
  if (m < 1 || h < 0) throw Error(ErrorCode::InvalidArgument, "need m >= 1 and h >= 0");
  const Eigen::Index d = ys.front().rows();
  auto mat_pow = [&](const Eigen::MatrixXcd& y, int p) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(d, d);
    for (int i = 0; i < p; ++i) r = r * y;
    return r;
  };
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(d, d);
  std::vector<int> ks(m, 0);
  std::vector<int> perm(m);
  // Enumerate compositions of h into m parts.
  auto visit = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == m - 1) {
      ks[pos] = remaining;
      double coeff = std::exp(log_factorial(h));
      for (int k : ks) coeff /= std::exp(log_factorial(k));
      std::iota(perm.begin(), perm.end(), 0);
      do {
        Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(d, d);
        for (int t = 0; t < m; ++t) prod = prod * mat_pow(ys[perm[t]], ks[t]);
        total += coeff * prod;
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      ks[pos] = k;
      self(self, pos + 1, remaining - k);
    }
  };
  visit(visit, 0, h);
  return total / std::exp(log_factorial(m));
}

/// Residual of the symmetrised multinomial against (-L)^h = (Y1 + Y2)^h with
/// Y_j = σ_{Rj}(l)², as a max-entry norm.
inline double symmetrized_multinomial_residual(int h, HalfInt l) {
  const Eigen::MatrixXcd r1 = su2_symbol(Su2Generator::R1, l).matrix.entries;
  const Eigen::MatrixXcd r2 = su2_symbol(Su2Generator::R2, l).matrix.entries;
  const std::vector<Eigen::MatrixXcd> ys{r1 * r1, r2 * r2};
  Eigen::MatrixXcd exact = Eigen::MatrixXcd::Identity(l.dim(), l.dim());
  for (int i = 0; i < h; ++i) exact = exact * (ys[0] + ys[1]);
  return max_abs_diff(exact, symmetrized_multinomial(ys, h));
}

}  // namespace gevcalc
