#pragma once

// Shared numerical substrate: half-integer spins, generator words, complex
// matrices with an optional single-diagonal tag, and log-space factorials.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gevcalc/error.hpp"

namespace gevcalc {

using cdouble = std::complex<double>;

/// Spin index l in ½ℕ₀, stored as 2l so that l, m, n stay exact.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(std::uint32_t twice) { return HalfInt(twice); }

  /// Rejects values that are negative or not a multiple of ½.
  static HalfInt from_double(double l) {
    const double twice = 2.0 * l;
    if (!(l >= 0.0) || std::nearbyint(twice) != twice || twice > 4.0e9) {
      throw Error(ErrorCode::InvalidArgument, "spin index must be a non-negative half-integer");
    }
    return HalfInt(static_cast<std::uint32_t>(twice));
  }

  constexpr std::uint32_t twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  /// d_l = 2l + 1.
  constexpr int dim() const { return static_cast<int>(twice_) + 1; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  /// Weight m of basis position i, with the basis ordered m = -l, ..., l.
  constexpr double weight(int i) const { return -value() + i; }

  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

 private:
  constexpr explicit HalfInt(std::uint32_t twice) : twice_(twice) {}
  std::uint32_t twice_ = 0;
};

enum class Group { SU2, Heis };

inline std::string_view to_string(Group g) { return g == Group::SU2 ? "su2" : "heis"; }

/// Generator labels. P, M are the SU(2) ladder symbols and R1, R2 the real
/// horizontal fields; X, Y, Z, Zb belong to the Heisenberg alphabet.
enum class Letter { P, M, R1, R2, X, Y, Z, Zb };

inline Group group_of(Letter l) {
  switch (l) {
    case Letter::P:
    case Letter::M:
    case Letter::R1:
    case Letter::R2: return Group::SU2;
    default: return Group::Heis;
  }
}

inline std::string_view to_string(Letter l) {
  switch (l) {
    case Letter::P: return "P";
    case Letter::M: return "M";
    case Letter::R1: return "R1";
    case Letter::R2: return "R2";
    case Letter::X: return "X";
    case Letter::Y: return "Y";
    case Letter::Z: return "Z";
    case Letter::Zb: return "Zb";
  }
  return "?";
}

/// An ordered word Y1...Yn encoding the derivative ∂^α. Order matters.
class GeneratorWord {
 public:
  explicit GeneratorWord(Group group, std::vector<Letter> letters = {})
      : group_(group), letters_(std::move(letters)) {
    for (Letter l : letters_) {
      if (group_of(l) != group_) {
        throw Error(ErrorCode::InvalidAlphabet,
                    "letter " + std::string(gevcalc::to_string(l)) + " not in the " +
                        std::string(gevcalc::to_string(group_)) + " alphabet");
      }
    }
  }

  Group group() const { return group_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  bool uses_only(std::initializer_list<Letter> allowed) const {
    return std::all_of(letters_.begin(), letters_.end(), [&](Letter l) {
      return std::find(allowed.begin(), allowed.end(), l) != allowed.end();
    });
  }

  std::string to_string() const {
    std::string out;
    for (Letter l : letters_) out += gevcalc::to_string(l);
    return out;
  }

  friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;

 private:
  Group group_;
  std::vector<Letter> letters_;
};

/// Parses compact letter strings such as "PMPM", "R1R2" or "ZZbZ".
/// The group is inferred from the first letter unless given; an empty string
/// needs an explicit group.
inline GeneratorWord parse_word(std::string_view text, std::optional<Group> group = {}) {
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    const bool has_next = i + 1 < text.size();
    if (c == 'P') {
      letters.push_back(Letter::P), ++i;
    } else if (c == 'M') {
      letters.push_back(Letter::M), ++i;
    } else if (c == 'R' && has_next && (text[i + 1] == '1' || text[i + 1] == '2')) {
      letters.push_back(text[i + 1] == '1' ? Letter::R1 : Letter::R2), i += 2;
    } else if (c == 'X') {
      letters.push_back(Letter::X), ++i;
    } else if (c == 'Y') {
      letters.push_back(Letter::Y), ++i;
    } else if (c == 'Z') {
      if (has_next && text[i + 1] == 'b') {
        letters.push_back(Letter::Zb), i += 2;
      } else {
        letters.push_back(Letter::Z), ++i;
      }
    } else {
      throw Error(ErrorCode::InvalidAlphabet, "cannot parse word '" + std::string(text) + "'");
    }
  }
  if (!group) {
    if (letters.empty()) {
      throw Error(ErrorCode::InvalidAlphabet, "empty word needs an explicit group");
    }
    group = group_of(letters.front());
  }
  return GeneratorWord(*group, std::move(letters));
}

/// All words of lengths 1..max_len, grouped by length, each length in
/// lexicographic order with respect to the given alphabet order.
inline std::vector<GeneratorWord> enumerate_words(const std::vector<Letter>& alphabet,
                                                  int max_len) {
  if (alphabet.empty()) throw Error(ErrorCode::InvalidAlphabet, "empty alphabet");
  if (max_len < 1) throw Error(ErrorCode::InvalidArgument, "max_len must be >= 1");
  const Group g = group_of(alphabet.front());
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (group_of(alphabet[i]) != g) {
      throw Error(ErrorCode::InvalidAlphabet, "alphabet mixes SU(2) and Heisenberg letters");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (alphabet[i] == alphabet[j]) {
        throw Error(ErrorCode::InvalidAlphabet, "alphabet has repeated letters");
      }
    }
  }
  std::vector<GeneratorWord> out;
  std::vector<GeneratorWord> previous{GeneratorWord(g)};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<GeneratorWord> current;
    current.reserve(previous.size() * alphabet.size());
    for (const auto& w : previous) {
      for (Letter l : alphabet) {
        auto letters = w.letters();
        letters.push_back(l);
        current.emplace_back(g, std::move(letters));
      }
    }
    out.insert(out.end(), current.begin(), current.end());
    previous = std::move(current);
  }
  return out;
}

/// Dense complex matrix. When band_offset is set, every nonzero entry lies on
/// the single diagonal {(i, j) : i - j = band_offset}.
struct ComplexMatrix {
  Eigen::MatrixXcd entries;
  std::optional<int> band_offset;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

/// Tags a matrix as single-diagonal after checking the tag is truthful.
inline ComplexMatrix make_banded(Eigen::MatrixXcd entries, int band_offset) {
  for (Eigen::Index j = 0; j < entries.cols(); ++j) {
    for (Eigen::Index i = 0; i < entries.rows(); ++i) {
      if (i - j != band_offset && entries(i, j) != cdouble(0.0)) {
        throw Error(ErrorCode::InvalidMatrix, "nonzero entry off the declared band");
      }
    }
  }
  return ComplexMatrix{std::move(entries), band_offset};
}

/// Largest singular value, via the largest eigenvalue of the smaller Gram matrix.
inline double op_norm(const ComplexMatrix& m) {
  const auto& a = m.entries;
  if (!a.allFinite()) throw Error(ErrorCode::InvalidMatrix, "non-finite entry");
  if (a.size() == 0) return 0.0;
  const Eigen::MatrixXcd gram =
      a.rows() >= a.cols() ? Eigen::MatrixXcd(a.adjoint() * a) : Eigen::MatrixXcd(a * a.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  const double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

/// Max modulus along the tagged diagonal. For a single-diagonal matrix this
/// is exactly the operator norm: its columns are orthogonal.
inline double diag_band_norm(const ComplexMatrix& m) {
  if (!m.band_offset) throw Error(ErrorCode::NotSingleDiagonal, "band_offset is not set");
  const int off = *m.band_offset;
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const Eigen::Index i = j + off;
    if (i < 0 || i >= m.rows()) continue;
    best = std::max(best, std::abs(m.entries(i, j)));
  }
  return best;
}

/// Norm used throughout the sweeps: the exact band path when available.
inline double symbol_norm(const ComplexMatrix& m) {
  return m.band_offset ? diag_band_norm(m) : op_norm(m);
}

/// max |a_ij - b_ij|.
inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

namespace detail {

inline constexpr int kLogFactorialTable = 256;

inline const std::array<double, kLogFactorialTable + 1>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, kLogFactorialTable + 1> t{};
    double acc = 0.0;
    for (int i = 1; i <= kLogFactorialTable; ++i) {
      acc += std::log(static_cast<double>(i));
      t[i] = acc;
    }
    return t;
  }();
  return table;
}

}  // namespace detail

/// log(n!) = log Γ(n+1), without touching the global signgam of lgamma().
inline double log_factorial(std::uint64_t n) {
  if (n <= static_cast<std::uint64_t>(detail::kLogFactorialTable)) {
    return detail::log_factorial_table()[n];
  }
  // Stirling series; the next omitted term is below 1e-20 for n > 256.
  const double x = static_cast<double>(n);
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return x * std::log(x) - x + 0.5 * std::log(x) + half_log_two_pi +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
}

/// s · log Γ(k+1), i.e. log((k!)^s).
inline double log_factorial_power(std::uint64_t k, double s) {
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "exponent s must be positive");
  return s * log_factorial(k);
}

/// Ordinary least squares fit of y against the columns of `design`.
struct LinearFit {
  Eigen::VectorXd coefficients;
  double rms_residual = 0.0;
};

inline LinearFit least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
  if (design.rows() != y.size() || design.rows() < design.cols()) {
    throw Error(ErrorCode::InvalidArgument, "least squares needs at least as many rows as unknowns");
  }
  LinearFit fit;
  fit.coefficients = design.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd r = design * fit.coefficients - y;
  fit.rms_residual = std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
  return fit;
}

/// Slope of the OLS line through (x_i, y_i); zero when x is constant.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

/// A finite symbol matrix at one representation: spin l for SU(2), the
/// parameter λ for the Heisenberg group.
struct SymbolMatrix {
  Group group = Group::SU2;
  double rep_index = 0.0;
  ComplexMatrix matrix;
};

}  // namespace gevcalc
