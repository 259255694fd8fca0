#pragma once

// The numerical invariant suite behind `gevcalc check-all`. Each check
// returns a one-line verdict; thresholds are fixed here, not configurable.

#include <random>
#include <sstream>

#include "gevcalc/gevrey.hpp"
#include "gevcalc/heisenberg.hpp"
#include "gevcalc/multiplier.hpp"
#include "gevcalc/report.hpp"
#include "gevcalc/riesz.hpp"
#include "gevcalc/su2.hpp"

namespace gevcalc {

struct InvariantResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace invariants {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Random single-diagonal matrix with dimensions in [1, 200].
inline ComplexMatrix random_single_diagonal(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 200);
  const int rows = size(rng), cols = size(rng);
  const int band = std::uniform_int_distribution<int>(-cols + 1, rows - 1)(rng);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
  for (int j = 0; j < cols; ++j) {
    const int i = j + band;
    if (i >= 0 && i < rows) m(i, j) = cdouble(g(rng), g(rng));
  }
  return make_banded(m, band);
}

/// A pattern of 1 to 3 random complex entries per l, reproducible from the seed.
inline Pattern random_pattern(std::uint64_t seed) {
  return [seed](HalfInt l) {
    std::mt19937_64 rng(seed * 1000003u + l.twice());
    std::uniform_int_distribution<int> pos(0, l.dim() - 1);
    std::normal_distribution<double> g;
    std::vector<PatternEntry> out;
    const int count = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < count; ++i) out.push_back({pos(rng), pos(rng), cdouble(g(rng), g(rng))});
    return out;
  };
}

// 1. Order-one Riesz transforms of R1 and R2.
inline InvariantResult order_one_riesz(unsigned threads = 1) {
  InvariantResult r{1, "order-1 Riesz bound", true, {}};
  const auto range = su2_spin_range(0.5, 100.0);
  double worst = 0.0;
  for (Operator op : {Operator::SubL, Operator::Beltrami}) {
    for (const char* w : {"R1", "R2"}) {
      const auto s = riesz_sweep({Group::SU2, op, {}}, parse_word(w), range, threads);
      worst = std::max(worst, s.sup_norm);
    }
  }
  r.passed = worst <= 1.0 + 1e-12;
  r.detail = "max norm over l <= 100 = " + fmt(worst) + " (bound 1 + 1e-12)";
  return r;
}

// 2. Uniform boundedness of {P, M} Riesz transforms up to length 5.
inline InvariantResult pm_riesz_sweeps(unsigned threads = 1) {
  InvariantResult r{2, "{P,M} Riesz sweeps stabilize", true, {}};
  const auto range = su2_spin_range(0.5, 50.0);
  int bad = 0;
  std::string worst_word;
  double worst_dev = 0.0, worst_slope = 0.0;
  for (const auto& w : enumerate_words({Letter::P, Letter::M}, 5)) {
    const auto s = riesz_sweep({Group::SU2, Operator::SubL, {}}, w, range, threads);
    const double dev = std::abs(s.stabilization_ratio - 1.0);
    worst_slope = std::max(worst_slope, std::abs(s.growth_slope));
    if (std::abs(s.growth_slope) > 0.05 || dev > 1e-3) ++bad;
    if (dev > worst_dev) worst_dev = dev, worst_word = s.word;
  }
  const auto p = riesz_sweep({Group::SU2, Operator::SubL, {}}, parse_word("P"), range, threads);
  double p_dev = 0.0;
  for (const auto& s : p.samples) p_dev = std::max(p_dev, std::abs(s.norm - std::sqrt(2.0)));
  r.passed = bad == 0 && p_dev <= 1e-12;
  r.detail = std::to_string(bad) + "/62 words outside (|slope| <= 0.05, |ratio - 1| <= 1e-3); worst ratio " +
             "deviation " + fmt(worst_dev) + " (" + worst_word + "), max |slope| " + fmt(worst_slope) +
             "; [P] deviation from sqrt(2) " + fmt(p_dev);
  return r;
}

// 3. Growth rates of the factors in R_w = (σ L^-½)(L^½ σ L^-½)···(L^½ σ L^-n/2).
inline InvariantResult factor_scaling_rates() {
  InvariantResult r{3, "factor scaling slopes", true, {}};
  double worst2 = 0.0, worst3 = 0.0;
  std::string word3;
  for (const auto& w : enumerate_words({Letter::P, Letter::M}, 5)) {
    if (w.size() < 2) continue;
    const FactorScaling s = factor_scaling(w, 5.0, 50.0);
    for (double x : s.t2_slopes) worst2 = std::max(worst2, std::abs(x - 1.0));
    const double d3 = std::abs(s.t3_slope - (2.0 - static_cast<double>(w.size())));
    if (d3 > worst3) worst3 = d3, word3 = w.to_string() + " slope " + fmt(s.t3_slope);
  }
  r.passed = worst2 <= 0.1 && worst3 <= 0.1;
  r.detail = "type-2 max |slope - 1| = " + fmt(worst2) + "; type-3 max |slope - (2 - n)| = " + fmt(worst3) +
             (word3.empty() ? "" : " (" + word3 + ")");
  return r;
}

// 4. Beltrami Riesz transforms of {R1, R2} words.
inline InvariantResult elliptic_riesz(unsigned threads = 1) {
  InvariantResult r{4, "Beltrami Riesz bound", true, {}};
  const auto range = su2_spin_range(0.5, 50.0);
  double worst = 0.0;
  std::string word;
  for (const auto& w : enumerate_words({Letter::R1, Letter::R2}, 4)) {
    const auto s = riesz_sweep({Group::SU2, Operator::Beltrami, {}}, w, range, threads);
    if (s.sup_norm > worst) worst = s.sup_norm, word = s.word;
  }
  r.passed = worst <= 1.0 + 1e-12;
  r.detail = "max norm = " + fmt(worst) + " (" + word + "), bound 1 + 1e-12";
  return r;
}

// 5. Heisenberg Riesz symbols of {Z, Zb} words.
inline InvariantResult heisenberg_riesz(unsigned threads = 1) {
  InvariantResult r{5, "Heisenberg Riesz entries", true, {}};
  constexpr int kTrunc = 2048;
  const std::vector<GeneratorWord> words = enumerate_words({Letter::Z, Letter::Zb}, 6);
  std::vector<std::array<double, 3>> sup(words.size());
  const std::array<double, 3> lambdas{0.25, 1.0, 4.0};
  detail::parallel_for(words.size(), threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      const WindowedSymbol s = riesz_symbol_heis(words[i], {lambdas[j], kTrunc});
      sup[i][j] = s.matrix.entries.cwiseAbs().maxCoeff();
    }
  });
  int over = 0;
  double worst_ratio = 0.0, invariance = 0.0;
  std::string worst_word;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const double bound = std::ldexp(1.0, static_cast<int>(words[i].size()));
    if (sup[i][1] > bound) ++over;
    if (sup[i][1] / bound > worst_ratio) worst_ratio = sup[i][1] / bound, worst_word = words[i].to_string();
    for (std::size_t j : {0, 2}) invariance = std::max(invariance, std::abs(sup[i][j] - sup[i][1]) / sup[i][1]);
  }
  const double z = sup[0][1];  // words[0] is [Z]
  const double z_dev = std::abs(z - std::sqrt(2.0));
  r.passed = over == 0 && z_dev <= 1e-12 && invariance <= 1e-12;
  r.detail = std::to_string(over) + "/126 words exceed 2^|w| (worst " + worst_word + " at " + fmt(worst_ratio) +
             " x bound); [Z] = " + fmt(z) + "; relative lambda variation " + fmt(invariance);
  return r;
}

// 6. Exact commutation and Casimir identities.
inline InvariantResult operator_identities() {
  InvariantResult r{6, "operator identities", true, {}};
  constexpr int kTrunc = 64;
  const cdouble I(0.0, 1.0);
  double heis_worst = 0.0;  // in units of the tolerance
  for (double lambda : {0.5, 1.0, 2.0, -1.0}) {
    const HeisRep rep{lambda, kTrunc};
    const auto X = heis_symbol(HeisGenerator::X, rep).matrix.entries;
    const auto Y = heis_symbol(HeisGenerator::Y, rep).matrix.entries;
    const auto Z = heis_symbol(HeisGenerator::Z, rep).matrix.entries;
    const auto Zb = heis_symbol(HeisGenerator::Zb, rep).matrix.entries;
    const auto L = heis_symbol(HeisGenerator::SubL, rep).matrix.entries;
    const auto T = heis_symbol(HeisGenerator::T, rep).matrix.entries;
    const double tol = 1e-12 * std::abs(lambda) * kTrunc;
    const double centre_tol = 1e-12 * std::abs(lambda);
    // Two-letter products are exact on rows 1 .. N-2.
    auto window_diff = [&](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
      return max_abs_diff(a.middleRows(1, kTrunc - 2), b.middleRows(1, kTrunc - 2));
    };
    heis_worst = std::max(heis_worst, window_diff(-(X * X + Y * Y), L) / tol);
    heis_worst = std::max(heis_worst, window_diff(0.5 * I * (Z * Zb - Zb * Z), T) / centre_tol);
    heis_worst = std::max(heis_worst, window_diff(-0.5 * (Z * Zb + Zb * Z), L) / tol);
  }
  double su2_worst = 0.0;
  for (std::uint32_t t = 0; t <= 100; ++t) {
    const HalfInt l = HalfInt::from_twice(t);
    const auto P = su2_symbol(Su2Generator::P, l).matrix.entries;
    const auto M = su2_symbol(Su2Generator::M, l).matrix.entries;
    const auto R1 = su2_symbol(Su2Generator::R1, l).matrix.entries;
    const auto R2 = su2_symbol(Su2Generator::R2, l).matrix.entries;
    const auto L = su2_symbol(Su2Generator::SubL, l).matrix.entries;
    const auto B = su2_symbol(Su2Generator::Beltrami, l).matrix.entries;
    const Eigen::MatrixXcd R3 = R1 * R2 - R2 * R1;
    // Entries are of size l(l+1); residuals are measured on that scale.
    const double scale = std::max(1.0, su2::beltrami_eigenvalue(l));
    su2_worst = std::max(su2_worst, max_abs_diff(0.5 * (P * M + M * P), L) / scale);
    su2_worst = std::max(su2_worst, max_abs_diff(-(R1 * R1 + R2 * R2), L) / scale);
    su2_worst = std::max(su2_worst, max_abs_diff(-(R1 * R1 + R2 * R2 + R3 * R3), B) / scale);
  }
  r.passed = heis_worst <= 1.0 && su2_worst <= 1e-12;
  r.detail = "Heisenberg residual " + fmt(heis_worst) + " x tolerance; SU(2) residual " +
             fmt(su2_worst) + " x l(l+1) (bound 1e-12)";
  return r;
}

// 7. Single-diagonal norms.
inline InvariantResult single_diagonal_norm() {
  InvariantResult r{7, "single-diagonal op norm", true, {}};
  std::mt19937_64 rng(20240607);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const ComplexMatrix m = random_single_diagonal(rng);
    worst = std::max(worst, std::abs(op_norm(m) - diag_band_norm(m)));
  }
  r.passed = worst <= 1e-12;
  r.detail = "max |op_norm - max entry| over 100 matrices = " + fmt(worst);
  return r;
}

// 8. Closed-form multiplier supremum and interpolation.
inline InvariantResult multiplier_components() {
  InvariantResult r{8, "multiplier supremum and interpolation", true, {}};
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> uk(0.0, 6.0), uD(0.1, 5.0), us(0.5, 4.0);
  double sup_excess = 0.0;  // max grid value / closed form - 1
  for (int trial = 0; trial < 50; ++trial) {
    const double k = uk(rng), D = uD(rng), s = us(rng);
    const PowerExpSup sup = power_exp_sup(k, D, s);
    const multiplier::PowerExp f{k, D, s};
    // Log-spaced grid over twelve decades around λ_D, plus λ_D itself.
    const double centre = std::log(std::max(sup.lam_star, 1e-300));
    double best = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double lam = std::exp(centre + (i / 9999.0 - 0.5) * 12.0 * std::log(10.0));
      best = std::max(best, eval_multiplier(f, lam));
    }
    if (k > 0.0) best = std::max(best, eval_multiplier(f, sup.lam_star));
    sup_excess = std::max(sup_excess, best / sup.sup_value - 1.0);
  }

  double ratio = 0.0;
  std::uniform_real_distribution<double> uB(0.1, 2.0), uS(0.5, 3.0), uT(0.001, 0.1), uP(1.0, 6.0), uth(0.05, 0.95);
  std::uniform_int_distribution<int> band(2, 40), kind(0, 2), apick(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    ProfileKind pk;
    switch (kind(rng)) {
      case 0: pk = profile::ExpFrac{uB(rng), uS(rng)}; break;
      case 1: pk = profile::Heat{uT(rng)}; break;
      default: pk = profile::Polynomial{uP(rng)}; break;
    }
    const auto p = make_profile(pk, HalfInt::from_twice(2 * band(rng)), random_pattern(trial + 1));
    ratio = std::max(ratio, interpolation_check(p, 2 * apick(rng), uth(rng)));
  }

  double delta_dev = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const HalfInt l0 = HalfInt::from_twice(1 + trial);
    const int row = std::uniform_int_distribution<int>(0, l0.dim() - 1)(rng);
    const auto p = make_profile(profile::Delta{l0, row, 0, 1.0 + trial}, HalfInt::from_twice(40));
    delta_dev = std::max(delta_dev, std::abs(interpolation_check(p, 2 * apick(rng), uth(rng)) - 1.0));
  }
  r.passed = sup_excess <= 1e-10 && ratio <= 1.0 + 1e-12 && delta_dev <= 1e-14;
  r.detail = "grid max exceeds closed form by " + fmt(sup_excess) + " (rel); max interpolation ratio " +
             fmt(ratio) + "; Delta |ratio - 1| " + fmt(delta_dev);
  return r;
}

// 9. Bessel potential Hilbert-Schmidt series.
inline InvariantResult bessel_series() {
  InvariantResult r{9, "Bessel HS series", true, {}};
  const HalfInt l_max = HalfInt::from_twice(800);
  const SeriesTail two = series_tail(bessel_hs_partial_sums(2, l_max), 50.0);
  const SeriesTail one = series_tail(bessel_hs_partial_sums(1, l_max), 50.0);
  const bool cauchy = two.tail_fraction < 1e-6;
  const bool divergent = one.term_slope >= -1.1;
  r.passed = cauchy && divergent;
  r.detail = "N=2 tail fraction beyond l=50 = " + fmt(two.tail_fraction) + " (bound 1e-6); N=1 term slope " +
             fmt(one.term_slope) + " (bound >= -1.1)";
  return r;
}

// 10. Equivalence battery on ExpFrac and Polynomial profiles.
inline InvariantResult gevrey_battery() {
  InvariantResult r{10, "Gevrey equivalence battery", true, {}};
  struct Case {
    double s;
    std::uint32_t band;
    int k_max;
  };
  // The band must contain the peaks of λ^k e^{-λ^{1/(2s)}}, which move out like k^{2s}.
  const Case cases[] = {{1.0, 200, 12}, {2.0, 10000, 12}, {3.0, 100000, 8}};
  std::ostringstream os;
  for (const Case& c : cases) {
    const auto p = make_profile(profile::ExpFrac{1.0, c.s}, HalfInt::from_twice(2 * c.band));
    BatteryOptions opts;
    opts.k_max = c.k_max;
    const BatteryReport b = equivalence_battery(p, c.s, opts);
    const bool ok = std::abs(b.subl_fit.s_hat - c.s) <= 0.2 * c.s && std::abs(b.word_fit.s_hat - c.s) <= 0.2 * c.s &&
                    b.roumieu_pass;
    r.passed = r.passed && ok;
    os << "s=" << c.s << ": L^k " << fmt(b.subl_fit.s_hat) << ", words " << fmt(b.word_fit.s_hat)
       << ", Roumieu " << (b.roumieu_pass ? "pass" : "fail") << "; ";
  }
  const auto poly = make_profile(profile::Polynomial{4.0}, HalfInt::from_twice(200000));
  int poly_passes = 0;
  for (double B : roumieu_grid()) poly_passes += roumieu_decay_test(poly, B, 2.0, poly.band_limit()).pass;
  r.passed = r.passed && poly_passes == 0;
  os << "Polynomial(4) at s=2 passes for " << poly_passes << "/" << roumieu_grid().size() << " grid B";
  r.detail = os.str();
  return r;
}

// 11. Expansion of σ_L^k into square words.
inline InvariantResult subl_expansion() {
  InvariantResult r{11, "sub-Laplacian power expansion", true, {}};
  const HalfInt l = HalfInt::from_twice(6);
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) worst = std::max(worst, subl_power_residual(k, l));
  const double h2 = symmetrized_multinomial_residual(2, l);
  const double h3 = symmetrized_multinomial_residual(3, l);
  r.passed = worst <= 1e-12 && h2 <= 1e-12 && h3 > 1e-9;
  r.detail = "square-word residual k<=3 " + fmt(worst) + "; symmetrized multinomial residual h=2 " + fmt(h2) +
             ", h=3 " + fmt(h3) + " (nonzero)";
  return r;
}

// Reports are byte-stable and re-parse to equal records.
inline InvariantResult report_round_trip() {
  InvariantResult r{12, "report determinism and round-trip", true, {}};
  const auto range = su2_spin_range(0.5, 10.0);
  const auto s1 = riesz_sweep({Group::SU2, Operator::SubL, {}}, parse_word("PM"), range, 1);
  const auto s2 = riesz_sweep({Group::SU2, Operator::SubL, {}}, parse_word("PM"), range, 2);
  bool ok = dump(to_json(s1)) == dump(to_json(s2)) && to_csv(s1) == to_csv(s2);
  ok = ok && from_json<SweepReport>(json::parse(dump(to_json(s1)))) == s1;
  const auto h = riesz_sweep({Group::Heis, Operator::SubL, HeisRep{1.0, 64}}, parse_word("ZZb"), {0.5, 1.0}, 1);
  ok = ok && from_json<SweepReport>(json::parse(dump(to_json(h)))) == h;
  const auto p = make_profile(profile::ExpFrac{1.0, 1.0}, HalfInt::from_twice(120));
  const auto b = equivalence_battery(p, 1.0, {8, {Letter::R1, Letter::R2}, 5});
  ok = ok && from_json<BatteryReport>(json::parse(dump(to_json(b)))) == b;
  const PowerExpSup sup = power_exp_sup(2.0, 1.0, 2.0);
  ok = ok && from_json<PowerExpSup>(json::parse(dump(to_json(sup)))) == sup;
  r.passed = ok;
  r.detail = ok ? "sweep, battery and supremum reports stable" : "report mismatch";
  return r;
}

}  // namespace invariants

/// Runs the selected checks (all when `only` is empty) in id order.
inline std::vector<InvariantResult> run_invariants(const std::vector<int>& only = {}, unsigned threads = 1) {
  using Fn = std::function<InvariantResult()>;
  const std::vector<std::pair<int, Fn>> all{
      {1, [=] { return invariants::order_one_riesz(threads); }},
      {2, [=] { return invariants::pm_riesz_sweeps(threads); }},
      {3, [] { return invariants::factor_scaling_rates(); }},
      {4, [=] { return invariants::elliptic_riesz(threads); }},
      {5, [=] { return invariants::heisenberg_riesz(threads); }},
      {6, [] { return invariants::operator_identities(); }},
      {7, [] { return invariants::single_diagonal_norm(); }},
      {8, [] { return invariants::multiplier_components(); }},
      {9, [] { return invariants::bessel_series(); }},
      {10, [] { return invariants::gevrey_battery(); }},
      {11, [] { return invariants::subl_expansion(); }},
      {12, [] { return invariants::report_round_trip(); }},
  };
  std::vector<InvariantResult> out;
  for (const auto& [id, fn] : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({id, "check " + std::to_string(id), false, std::string("error: ") + e.what()});
    }
  }
  return out;
}

inline std::string format_result(const InvariantResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail;
}

}  // namespace gevcalc
