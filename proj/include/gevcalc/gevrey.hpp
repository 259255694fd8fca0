#pragma once

// Fourier-side Gevrey analysis on SU(2). A CoefficientProfile stands in for a
// function through its coefficients φ̂(l); every norm is a Plancherel sum
//   ‖T φ‖² = Σ_l (2l+1) ‖σ_T(l) φ̂(l)‖²_HS,
// accumulated in log space so that ((2k)!)^s-sized seminorms stay finite.

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "gevcalc/algebra.hpp"
#include "gevcalc/riesz.hpp"
#include "gevcalc/su2.hpp"

namespace gevcalc {

namespace profile {

/// φ̂(l) = e^{-B σ_L(l)^{1/(2s)}} P(l)
struct ExpFrac {
  double B = 1.0;
  double s = 1.0;
};
/// φ̂(l) = e^{-t σ_L(l)} P(l)
struct Heat {
  double t = 1.0;
};
/// φ̂(l) = (1 + l)^{-p} P(l)
struct Polynomial {
  double p = 1.0;
};
/// φ̂(l0) = scale · E_{row,col}, zero elsewhere; scale 0 gives the zero profile.
struct Delta {
  HalfInt l0;
  int row = 0;
  int col = 0;
  double scale = 1.0;
};

}  // namespace profile

using ProfileKind = std::variant<profile::ExpFrac, profile::Heat, profile::Polynomial, profile::Delta>;

struct PatternEntry {
  int row = 0;
  int col = 0;
  cdouble value;
};

/// Coefficient pattern P(l), as a sparse list of entries.
using Pattern = std::function<std::vector<PatternEntry>(HalfInt)>;

/// Single unit entry at the m = n = 0 position (integer l) or m = n = ½
/// (half-integer l).
inline std::vector<PatternEntry> default_pattern(HalfInt l) {
  const int c = static_cast<int>((l.twice() + 1) / 2);
  return {{c, c, cdouble(1.0)}};
}

struct ProfileEntry {
  int row = 0;
  int col = 0;
  cdouble value;      ///< may underflow to 0 far out in the band
  double log_abs;     ///< log |value|, always accurate
  cdouble phase{1.0}; ///< value / |value|
};

class CoefficientProfile {
 public:
  CoefficientProfile(ProfileKind kind, HalfInt band_limit, Pattern pattern = default_pattern)
      : kind_(std::move(kind)), band_limit_(band_limit), pattern_(std::move(pattern)) {}

  const ProfileKind& kind() const { return kind_; }
  HalfInt band_limit() const { return band_limit_; }

  /// Nonzero entries of φ̂(l); empty beyond the band limit.
  std::vector<ProfileEntry> entries(HalfInt l) const {
    std::vector<ProfileEntry> out;
    if (l > band_limit_) return out;
    if (auto d = std::get_if<profile::Delta>(&kind_)) {
      if (l == d->l0 && d->scale != 0.0) {
        out.push_back({d->row, d->col, cdouble(d->scale), std::log(std::abs(d->scale)),
                       cdouble(d->scale > 0.0 ? 1.0 : -1.0)});
      }
      return out;
    }
    for (const PatternEntry& p : pattern_(l)) {
      if (p.value == cdouble(0.0)) continue;
      const double log_env = log_envelope(l, p.row);
      const double mag = std::abs(p.value);
      out.push_back({p.row, p.col, p.value * std::exp(log_env), std::log(mag) + log_env, p.value / mag});
    }
    return out;
  }

  /// Dense (2l+1)×(2l+1) coefficient matrix.
  Eigen::MatrixXcd matrix(HalfInt l) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(l.dim(), l.dim());
    for (const auto& e : entries(l)) m(e.row, e.col) += e.value;
    return m;
  }

 private:
  double log_envelope(HalfInt l, int row) const {
    return std::visit(
        [&](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, profile::ExpFrac>) {
            return -k.B * std::pow(su2::subl_eigenvalue(l, row), 1.0 / (2.0 * k.s));
          } else if constexpr (std::is_same_v<T, profile::Heat>) {
            return -k.t * su2::subl_eigenvalue(l, row);
          } else if constexpr (std::is_same_v<T, profile::Polynomial>) {
            return -k.p * std::log1p(l.value());
          } else {
            return 0.0;
          }
        },
        kind_);
  }

  ProfileKind kind_;
  HalfInt band_limit_;
  Pattern pattern_;
};

inline CoefficientProfile make_profile(ProfileKind kind, HalfInt band_limit,
                                       Pattern pattern = default_pattern) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidProfile, what); };
  if (band_limit.twice() < 2) fail("band_limit must be >= 1");
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, profile::ExpFrac>) {
          if (!(k.B > 0.0) || !(k.s > 0.0)) fail("expfrac needs B > 0 and s > 0");
        } else if constexpr (std::is_same_v<T, profile::Heat>) {
          if (!(k.t > 0.0)) fail("heat needs t > 0");
        } else if constexpr (std::is_same_v<T, profile::Polynomial>) {
          if (!(k.p > 0.0)) fail("polynomial needs p > 0");
        } else {
          if (k.l0 > band_limit) fail("delta position beyond the band limit");
          if (k.row < 0 || k.col < 0 || k.row >= k.l0.dim() || k.col >= k.l0.dim()) {
            fail("delta entry outside the (2l+1)x(2l+1) block");
          }
          if (!std::isfinite(k.scale)) fail("delta scale must be finite");
        }
      },
      kind);
  return CoefficientProfile(std::move(kind), band_limit, std::move(pattern));
}

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Streaming log(Σ exp(x_i)).
class LogSumExp {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x > max_) {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    } else {
      sum_ += std::exp(x - max_);
    }
  }
  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

inline void check_range(const CoefficientProfile& profile, HalfInt l_max) {
  if (l_max > profile.band_limit()) {
    throw Error(ErrorCode::InvalidArgument, "l_max exceeds the profile band limit");
  }
}

}  // namespace detail

/// log ‖L^{e} φ‖ for each exponent e, summed over l <= l_max; -inf for zero.
inline std::vector<double> log_power_norms(const CoefficientProfile& profile,
                                           const std::vector<double>& exponents, HalfInt l_max) {
  detail::check_range(profile, l_max);
  std::vector<detail::LogSumExp> acc(exponents.size());
  for (std::uint32_t t = 0; t <= l_max.twice(); ++t) {
    const HalfInt l = HalfInt::from_twice(t);
    const double log_dim = std::log(static_cast<double>(l.dim()));
    for (const auto& e : profile.entries(l)) {
      const double lam = su2::subl_eigenvalue(l, e.row);
      const double log_lam = std::log(lam);  // -inf on the trivial representation
      for (std::size_t i = 0; i < exponents.size(); ++i) {
        const double ex = exponents[i];
        if (lam == 0.0 && ex > 0.0) continue;
        const double scaled = ex == 0.0 ? 0.0 : 2.0 * ex * log_lam;
        acc[i].add(log_dim + scaled + 2.0 * e.log_abs);
      }
    }
  }
  std::vector<double> out;
  out.reserve(acc.size());
  for (const auto& a : acc) out.push_back(0.5 * a.value());
  return out;
}

inline double plancherel_norm(const CoefficientProfile& profile, HalfInt l_max) {
  return std::exp(log_power_norms(profile, {0.0}, l_max).front());
}

/// log ‖L^k φ‖ for k = 0..k_max over the whole band.
inline std::vector<double> seminorm_sequence(const CoefficientProfile& profile, int k_max) {
  if (k_max < 0) throw Error(ErrorCode::InvalidArgument, "k_max must be >= 0");
  std::vector<double> exps;
  for (int k = 0; k <= k_max; ++k) exps.push_back(k);
  return log_power_norms(profile, exps, profile.band_limit());
}

struct WordSeminorm {
  std::string word;
  int length = 0;
  double log_norm = detail::kNegInf;
  double norm() const { return std::exp(log_norm); }
};

namespace detail {

/// Vector supported on [lo, lo + v.size()) inside a length-dim space.
struct LocalVector {
  int lo = 0;
  std::vector<cdouble> v;
};

/// (c_P · P + c_M · M) applied to x, with P, M the spin-l ladder symbols.
inline LocalVector apply_ladder_combo(HalfInt l, cdouble cp, cdouble cm, const LocalVector& x) {
  const int dim = l.dim();
  const int hi = x.lo + static_cast<int>(x.v.size()) - 1;
  const int out_lo = std::max(0, x.lo - 1);
  const int out_hi = std::min(dim - 1, hi + 1);
  LocalVector y{out_lo, std::vector<cdouble>(static_cast<std::size_t>(out_hi - out_lo + 1))};
  for (int j = x.lo; j <= hi; ++j) {
    const cdouble xj = x.v[j - x.lo];
    if (xj == cdouble(0.0)) continue;
    if (cp != cdouble(0.0) && j + 1 < dim) y.v[j + 1 - out_lo] += cp * su2::ladder_entry(l, j) * xj;
    if (cm != cdouble(0.0) && j >= 1) y.v[j - 1 - out_lo] += cm * su2::ladder_entry(l, j - 1) * xj;
  }
  return y;
}

inline std::pair<cdouble, cdouble> ladder_coefficients(Letter letter) {
  const cdouble I(0.0, 1.0);
  switch (letter) {
    case Letter::P: return {1.0, 0.0};
    case Letter::M: return {0.0, 1.0};
    case Letter::R1: return {0.5, -0.5};
    case Letter::R2: return {0.5 * I, 0.5 * I};
    default: throw Error(ErrorCode::WrongGroup, "not an SU(2) letter");
  }
}

}  // namespace detail

/// ‖∂^w φ‖ for every word over `alphabet` of length 0..max_len (empty word
/// first, then enumerate_words order), summed over l <= l_max.
inline std::vector<WordSeminorm> word_seminorms(const CoefficientProfile& profile,
                                                const std::vector<Letter>& alphabet, int max_len,
                                                std::optional<HalfInt> l_max = {}) {
  if (max_len < 0 || max_len > 8) throw Error(ErrorCode::InvalidArgument, "max_len must be in [0, 8]");
  const HalfInt top = l_max.value_or(profile.band_limit());
  detail::check_range(profile, top);

  std::vector<WordSeminorm> out{{"", 0, detail::kNegInf}};
  if (max_len > 0) {
    if (!alphabet.empty() && group_of(alphabet.front()) != Group::SU2) {
      throw Error(ErrorCode::WrongGroup, "word seminorms are defined for SU(2) profiles");
    }
    for (auto& w : enumerate_words(alphabet, max_len)) {
      out.push_back({w.to_string(), static_cast<int>(w.size()), detail::kNegInf});
    }
  }
  const std::size_t a = alphabet.size();
  std::vector<std::size_t> level_offset(max_len + 2, 0);  // index of the first word of each length
  {
    std::size_t count = 1, off = 0;
    for (int n = 0; n <= max_len; ++n) {
      level_offset[n] = off;
      off += count;
      count *= a;
    }
  }
  std::vector<std::pair<cdouble, cdouble>> coeffs;
  for (Letter x : alphabet) coeffs.push_back(detail::ladder_coefficients(x));

  std::vector<detail::LogSumExp> acc(out.size());
  for (std::uint32_t t = 0; t <= top.twice(); ++t) {
    const HalfInt l = HalfInt::from_twice(t);
    const auto entries = profile.entries(l);
    if (entries.empty()) continue;
    const double log_dim = std::log(static_cast<double>(l.dim()));
    // Group entries by column; each column is pushed through all words.
    std::vector<int> cols;
    for (const auto& e : entries) {
      if (std::find(cols.begin(), cols.end(), e.col) == cols.end()) cols.push_back(e.col);
    }
    for (int col : cols) {
      double ref = detail::kNegInf;
      int lo = l.dim(), hi = -1;
      for (const auto& e : entries) {
        if (e.col != col) continue;
        ref = std::max(ref, e.log_abs);
        lo = std::min(lo, e.row), hi = std::max(hi, e.row);
      }
      detail::LocalVector start{lo, std::vector<cdouble>(static_cast<std::size_t>(hi - lo + 1))};
      for (const auto& e : entries) {
        if (e.col != col) continue;
        start.v[e.row - lo] += e.phase * std::exp(e.log_abs - ref);
      }
      // Depth-first over words: prepending letter c to w gives c·w, whose
      // symbol applied to the column is σ_c (σ_w x).
      auto visit = [&](auto&& self, const detail::LocalVector& x, int len, std::size_t rank) -> void {
        double sq = 0.0;
        for (const auto& z : x.v) sq += std::norm(z);
        if (sq > 0.0) acc[level_offset[len] + rank].add(log_dim + 2.0 * ref + std::log(sq));
        if (len == max_len) return;
        std::size_t stride = 1;
        for (int i = 0; i < len; ++i) stride *= a;
        for (std::size_t c = 0; c < a; ++c) {
          self(self, detail::apply_ladder_combo(l, coeffs[c].first, coeffs[c].second, x), len + 1,
               c * stride + rank);
        }
      };
      visit(visit, start, 0, 0);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].log_norm = 0.5 * acc[i].value();
  return out;
}

struct GevreyFit {
  double s_hat = 0.0;
  double log_A = 0.0;
  double log_C = 0.0;
  double residual = 0.0;  ///< root-mean-square of the regression
  friend bool operator==(const GevreyFit&, const GevreyFit&) = default;
};

/// OLS of log n against (1, order, log Γ(order + 1)) for order >= 2.
inline GevreyFit fit_growth(const std::vector<int>& orders, const std::vector<double>& log_values) {
  std::vector<int> kept;
  std::vector<double> y;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 2) continue;
    if (!std::isfinite(log_values[i])) {
      throw Error(ErrorCode::DegenerateProfile, "a seminorm vanishes; the growth fit is undefined");
    }
    kept.push_back(orders[i]);
    y.push_back(log_values[i]);
  }
  if (kept.size() < 4) throw Error(ErrorCode::InvalidArgument, "order fit needs >= 4 points");
  Eigen::MatrixXd design(kept.size(), 3);
  Eigen::VectorXd rhs(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = kept[i];
    design(i, 2) = log_factorial(static_cast<std::uint64_t>(kept[i]));
    rhs[i] = y[i];
  }
  const LinearFit f = least_squares(design, rhs);
  return GevreyFit{f.coefficients[2], f.coefficients[1], f.coefficients[0], f.rms_residual};
}

/// Fits log ‖L^k φ‖ ≈ log C + 2k log A + s log (2k)! over k >= 2.
inline GevreyFit fit_order(const std::vector<double>& log_seminorms) {
  std::vector<int> orders;
  for (std::size_t k = 0; k < log_seminorms.size(); ++k) orders.push_back(static_cast<int>(2 * k));
  for (std::size_t k = 0; k < log_seminorms.size() && k < 2; ++k) orders[k] = -1;  // k = 0, 1 dropped
  return fit_growth(orders, log_seminorms);
}

struct RoumieuResult {
  double B = 0.0;
  double K = 0.0;
  bool pass = false;
  friend bool operator==(const RoumieuResult&, const RoumieuResult&) = default;
};

/// Relative slack allowed in the tail non-increase check (rounding only).
inline constexpr double kRoumieuSlack = 1e-12;

/// K = max_l ‖e^{B σ_L(l)^{1/(2s)}} φ̂(l)‖_HS; passes when the per-l values over
/// the top 20% of [0, l_max] never increase. Finite-range proxy for sup_l < ∞.
inline RoumieuResult roumieu_decay_test(const CoefficientProfile& profile, double B, double s,
                                        HalfInt l_max) {
  if (!(B > 0.0) || !(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "B and s must be positive");
  detail::check_range(profile, l_max);
  RoumieuResult r{B, 0.0, true};
  double max_log = detail::kNegInf;
  double prev = detail::kNegInf;
  bool have_prev = false;
  const double tail_from = 0.8 * l_max.value();
  for (std::uint32_t t = 0; t <= l_max.twice(); ++t) {
    const HalfInt l = HalfInt::from_twice(t);
    detail::LogSumExp acc;
    for (const auto& e : profile.entries(l)) {
      const double lam = su2::subl_eigenvalue(l, e.row);
      acc.add(2.0 * (B * std::pow(lam, 1.0 / (2.0 * s)) + e.log_abs));
    }
    const double log_h = 0.5 * acc.value();
    max_log = std::max(max_log, log_h);
    if (l.value() >= tail_from) {
      if (have_prev && log_h > prev + kRoumieuSlack) r.pass = false;
      prev = log_h;
      have_prev = true;
    }
  }
  r.K = std::exp(max_log);
  if (!std::isfinite(r.K) || std::isnan(max_log)) {
    r.K = std::numeric_limits<double>::infinity();
    r.pass = false;
  }
  return r;
}

/// ‖L^{b/2}φ‖ / (‖L^{a/2}φ‖^θ ‖L^{(a+2)/2}φ‖^{1-θ}) with b = aθ + (a+2)(1-θ).
/// Hölder's inequality bounds it by 1.
inline double interpolation_check(const CoefficientProfile& profile, int a, double theta) {
  if (a != 0 && a != 2 && a != 4) throw Error(ErrorCode::InvalidArgument, "a must be 0, 2 or 4");
  if (!(theta > 0.0 && theta < 1.0)) throw Error(ErrorCode::InvalidArgument, "theta must be in (0, 1)");
  const double b = a * theta + (a + 2) * (1.0 - theta);
  const auto logs = log_power_norms(profile, {b / 2.0, a / 2.0, (a + 2) / 2.0}, profile.band_limit());
  for (double x : logs) {
    if (!std::isfinite(x)) throw Error(ErrorCode::DegenerateProfile, "interpolation needs a nonzero profile");
  }
  return std::exp(logs[0] - theta * logs[1] - (1.0 - theta) * logs[2]);
}

struct BatteryOptions {
  int k_max = 12;
  std::vector<Letter> word_alphabet{Letter::R1, Letter::R2};
  int word_max_len = 6;
};

/// Tolerances of the battery verdicts, relative to the claimed order.
inline constexpr double kOrderTolerance = 0.2;
inline constexpr double kConsistencyTolerance = 0.15;

struct BatteryReport {
  double s_claim = 0.0;
  GevreyFit subl_fit;   ///< (iii): ‖L^k φ‖ against ((2k)!)^s
  GevreyFit word_fit;   ///< (ii): max_{|w|=n} ‖∂^w φ‖ against (n!)^s
  std::vector<RoumieuResult> roumieu;  ///< (iii)': B over 2^-4 .. 2^2 at s_claim
  bool subl_within_claim = false;
  bool word_within_claim = false;
  bool roumieu_pass = false;
  bool consistent = false;
  std::string proxy_note;
  friend bool operator==(const BatteryReport&, const BatteryReport&) = default;
};

inline const std::vector<double>& roumieu_grid() {
  static const std::vector<double> grid{0.0625, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0};
  return grid;
}

inline BatteryReport equivalence_battery(const CoefficientProfile& profile, double s_claim,
                                         const BatteryOptions& opts = {}) {
  if (!(s_claim > 0.0)) throw Error(ErrorCode::InvalidArgument, "s_claim must be positive");
  if (profile.band_limit().value() < 40.0) {
    throw Error(ErrorCode::InvalidArgument, "the battery needs band_limit >= 40");
  }
  BatteryReport r;
  r.s_claim = s_claim;
  r.subl_fit = fit_order(seminorm_sequence(profile, opts.k_max));

  const auto words = word_seminorms(profile, opts.word_alphabet, opts.word_max_len);
  std::vector<double> best(opts.word_max_len + 1, detail::kNegInf);
  for (const auto& w : words) best[w.length] = std::max(best[w.length], w.log_norm);
  std::vector<int> orders;
  for (int n = 0; n <= opts.word_max_len; ++n) orders.push_back(n);
  r.word_fit = fit_growth(orders, best);

  for (double B : roumieu_grid()) {
    r.roumieu.push_back(roumieu_decay_test(profile, B, s_claim, profile.band_limit()));
    r.roumieu_pass = r.roumieu_pass || r.roumieu.back().pass;
  }
  r.subl_within_claim = r.subl_fit.s_hat <= s_claim * (1.0 + kOrderTolerance);
  r.word_within_claim = r.word_fit.s_hat <= s_claim * (1.0 + kOrderTolerance);
  r.consistent = std::abs(r.word_fit.s_hat - r.subl_fit.s_hat) <= kConsistencyTolerance * s_claim &&
                 r.roumieu_pass;
  r.proxy_note =
      "finite-band proxies: order fits over k >= 2 and word lengths >= 2; (iii)' passes when the "
      "per-l HS norms over the top 20% of the band are non-increasing";
  return r;
}

}  // namespace gevcalc
