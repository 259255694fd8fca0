#pragma once

// Closed family of scalar spectral functions m(λ), applied entrywise to
// diagonal sub-Laplacian symbols, plus the two calculus facts built on them:
// the sup of λ^k e^{-Dλ^{1/(2s)}} and the Bessel-kernel Hilbert–Schmidt series.

#include <cmath>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "gevcalc/algebra.hpp"
#include "gevcalc/error.hpp"

namespace gevcalc {

namespace multiplier {

struct Power {
  int k = 1;
};
struct FracPower {
  double a = 1.0;
};
/// e^{D λ^{1/(2s)}}; D may be negative.
struct ExpFrac {
  double D = 1.0;
  double s = 1.0;
};
/// e^{-tλ}.
struct Heat {
  double t = 1.0;
};
/// (1 + λ)^{-N}.
struct Bessel {
  int N = 1;
};
/// λ^k e^{-D λ^{1/(2s)}}.
struct PowerExp {
  double k = 0.0;
  double D = 1.0;
  double s = 1.0;
};

}  // namespace multiplier

using MultiplierSpec = std::variant<multiplier::Power, multiplier::FracPower, multiplier::ExpFrac,
                                    multiplier::Heat, multiplier::Bessel, multiplier::PowerExp>;

/// Checks the parameter ranges of a spec; throws InvalidArgument.
inline void validate(const MultiplierSpec& spec) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        auto fail = [](const char* what) { throw Error(ErrorCode::InvalidArgument, what); };
        if constexpr (std::is_same_v<T, multiplier::FracPower>) {
          if (!std::isfinite(m.a)) fail("FracPower exponent must be finite");
        } else if constexpr (std::is_same_v<T, multiplier::ExpFrac>) {
          if (!std::isfinite(m.D) || !(m.s > 0.0)) fail("ExpFrac needs finite D and s > 0");
        } else if constexpr (std::is_same_v<T, multiplier::Heat>) {
          if (!(m.t > 0.0) || !std::isfinite(m.t)) fail("Heat needs t > 0");
        } else if constexpr (std::is_same_v<T, multiplier::Bessel>) {
          if (m.N < 1) fail("Bessel needs N >= 1");
        } else if constexpr (std::is_same_v<T, multiplier::PowerExp>) {
          if (!(m.k >= 0.0) || !(m.D > 0.0) || !(m.s > 0.0)) fail("PowerExp needs k >= 0, D > 0, s > 0");
        }
      },
      spec);
}

/// True when the spec is undefined at λ = 0.
inline bool singular_at_zero(const MultiplierSpec& spec) {
  if (auto p = std::get_if<multiplier::Power>(&spec)) return p->k < 0;
  if (auto p = std::get_if<multiplier::FracPower>(&spec)) return p->a < 0.0;
  return std::holds_alternative<multiplier::PowerExp>(spec);
}

inline double eval_multiplier(const MultiplierSpec& spec, double lam) {
  validate(spec);
  if (!(lam >= 0.0)) throw Error(ErrorCode::InvalidArgument, "multiplier argument must be >= 0");
  if (lam == 0.0 && singular_at_zero(spec)) {
    throw Error(ErrorCode::SingularAtZero, "multiplier is singular at 0");
  }
  return std::visit(
      [lam](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, multiplier::Power>) {
          return std::pow(lam, m.k);
        } else if constexpr (std::is_same_v<T, multiplier::FracPower>) {
          return m.a == 0.0 ? 1.0 : std::pow(lam, m.a);
        } else if constexpr (std::is_same_v<T, multiplier::ExpFrac>) {
          return std::exp(m.D * std::pow(lam, 1.0 / (2.0 * m.s)));
        } else if constexpr (std::is_same_v<T, multiplier::Heat>) {
          return std::exp(-m.t * lam);
        } else if constexpr (std::is_same_v<T, multiplier::Bessel>) {
          return std::pow(1.0 + lam, -m.N);
        } else {
          return std::exp(m.k * std::log(lam) - m.D * std::pow(lam, 1.0 / (2.0 * m.s)));
        }
      },
      spec);
}

struct PowerExpSup {
  double lam_star = 0.0;
  double sup_value = 0.0;
};

/// Maximiser λ_D = (2ks/D)^{2s} of λ^k e^{-Dλ^{1/(2s)}} and the maximum itself.
inline PowerExpSup power_exp_sup(double k, double D, double s) {
  validate(multiplier::PowerExp{k, D, s});
  PowerExpSup out;
  out.lam_star = std::pow(2.0 * k * s / D, 2.0 * s);
  if (k == 0.0) {
    out.sup_value = 1.0;  // 0^0 at λ = 0
  } else {
    // At λ_D the exponent D λ^{1/(2s)} equals 2ks exactly.
    out.sup_value = std::exp(k * std::log(out.lam_star) - 2.0 * k * s);
  }
  return out;
}

struct SeriesPoint {
  double l = 0.0;
  double partial_sum = 0.0;
};

/// Running partial sums of Σ_l (2l+1) Σ_m (1 + l(l+1) - m²)^{-2N} over
/// l = 0, ½, 1, ..., l_max, i.e. d_ξ ‖(I + L̂(ξ))^{-N}‖²_HS summed over the dual.
inline std::vector<SeriesPoint> bessel_hs_partial_sums(int N, HalfInt l_max) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
  std::vector<SeriesPoint> out;
  out.reserve(l_max.twice() + 1);
  double running = 0.0;
  for (std::uint32_t t = 0; t <= l_max.twice(); ++t) {
    const HalfInt l = HalfInt::from_twice(t);
    const double casimir = l.value() * (l.value() + 1.0);
    double term = 0.0;
    for (int i = 0; i < l.dim(); ++i) {
      const double m = l.weight(i);
      term += std::pow(1.0 + casimir - m * m, -2.0 * N);
    }
    running += l.dim() * term;
    out.push_back({l.value(), running});
  }
  return out;
}

/// Tail diagnostics of a partial-sum sequence.
struct SeriesTail {
  double total = 0.0;          ///< last partial sum
  double tail_fraction = 0.0;  ///< (S(l_max) - S(l_split)) / S(l_max)
  double term_slope = 0.0;     ///< log-log slope of the per-l increments over [l_max/2, l_max]
};

inline SeriesTail series_tail(const std::vector<SeriesPoint>& sums, double l_split) {
  if (sums.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two partial sums");
  SeriesTail tail;
  tail.total = sums.back().partial_sum;
  double at_split = sums.front().partial_sum;
  for (const auto& p : sums) {
    if (p.l <= l_split) at_split = p.partial_sum;
  }
  tail.tail_fraction = (tail.total - at_split) / tail.total;
  const double l_max = sums.back().l;
  std::vector<double> x, y;
  for (std::size_t i = 1; i < sums.size(); ++i) {
    if (sums[i].l < 0.5 * l_max) continue;
    const double inc = sums[i].partial_sum - sums[i - 1].partial_sum;
    if (inc > 0.0) {
      x.push_back(std::log(sums[i].l));
      y.push_back(std::log(inc));
    }
  }
  tail.term_slope = fit_slope(x, y);
  return tail;
}

inline std::string describe(const MultiplierSpec& spec) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, multiplier::Power>) {
          return "power:k=" + std::to_string(m.k);
        } else if constexpr (std::is_same_v<T, multiplier::FracPower>) {
          return "fracpower:a=" + std::to_string(m.a);
        } else if constexpr (std::is_same_v<T, multiplier::ExpFrac>) {
          return "expfrac:D=" + std::to_string(m.D) + ",s=" + std::to_string(m.s);
        } else if constexpr (std::is_same_v<T, multiplier::Heat>) {
          return "heat:t=" + std::to_string(m.t);
        } else if constexpr (std::is_same_v<T, multiplier::Bessel>) {
          return "bessel:N=" + std::to_string(m.N);
        } else {
          return "powerexp:k=" + std::to_string(m.k) + ",D=" + std::to_string(m.D) +
                 ",s=" + std::to_string(m.s);
        }
      },
      spec);
}

}  // namespace gevcalc
