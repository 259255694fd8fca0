#pragma once

// JSON and CSV encodings of the analysis records. JSON keys are snake_case;
// non-finite numbers are written as the strings "inf", "-inf" and "nan" so
// every report re-parses to an equal record.

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "gevcalc/gevrey.hpp"
#include "gevcalc/multiplier.hpp"
#include "gevcalc/riesz.hpp"

namespace gevcalc {

using json = nlohmann::ordered_json;

/// 17 significant digits, enough to round-trip any double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace report_detail {

inline json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

inline double read_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw Error(ErrorCode::InvalidArgument, "not a number: " + s);
}

inline Group read_group(const json& j) {
  const std::string s = j.get<std::string>();
  if (s == "su2") return Group::SU2;
  if (s == "heis") return Group::Heis;
  throw Error(ErrorCode::InvalidArgument, "unknown group " + s);
}

inline Operator read_operator(const json& j) {
  const std::string s = j.get<std::string>();
  if (s == "subl") return Operator::SubL;
  if (s == "beltrami") return Operator::Beltrami;
  throw Error(ErrorCode::InvalidArgument, "unknown operator " + s);
}

}  // namespace report_detail

/// Output of the bessel-series command.
struct BesselReport {
  int N = 1;
  double l_split = 0.0;
  std::vector<SeriesPoint> points;
  SeriesTail tail;
};

inline bool operator==(const SeriesPoint& a, const SeriesPoint& b) {
  return a.l == b.l && a.partial_sum == b.partial_sum;
}
inline bool operator==(const SeriesTail& a, const SeriesTail& b) {
  return a.total == b.total && a.tail_fraction == b.tail_fraction && a.term_slope == b.term_slope;
}
inline bool operator==(const BesselReport& a, const BesselReport& b) {
  return a.N == b.N && a.l_split == b.l_split && a.points == b.points && a.tail == b.tail;
}
inline bool operator==(const PowerExpSup& a, const PowerExpSup& b) {
  return a.lam_star == b.lam_star && a.sup_value == b.sup_value;
}

/// Output of the factor-bounds command.
struct FactorReport {
  std::string word;
  double l = 0.0;
  FactorBounds bounds;
  double l_min = 0.0;
  double l_max = 0.0;
  FactorScaling scaling;
};

inline bool operator==(const FactorReport& a, const FactorReport& b) {
  return a.word == b.word && a.l == b.l && a.bounds.t1 == b.bounds.t1 && a.bounds.t2 == b.bounds.t2 &&
         a.bounds.t3 == b.bounds.t3 && a.l_min == b.l_min && a.l_max == b.l_max &&
         a.scaling.t2_slopes == b.scaling.t2_slopes && a.scaling.t3_slope == b.scaling.t3_slope;
}

// --- to_json ---------------------------------------------------------------

inline json to_json(const SweepReport& r) {
  using report_detail::number;
  json samples = json::array();
  for (const auto& s : r.samples) samples.push_back({{"index", number(s.index)}, {"norm", number(s.norm)}});
  json j;
  j["word"] = r.word;
  j["group"] = std::string(to_string(r.group));
  j["operator"] = std::string(to_string(r.op));
  j["samples"] = std::move(samples);
  j["sup_norm"] = number(r.sup_norm);
  j["growth_slope"] = number(r.growth_slope);
  j["stabilization_ratio"] = number(r.stabilization_ratio);
  if (r.window) {
    j["window"] = {{"trunc", r.window->trunc}, {"row_begin", r.window->row_begin}, {"row_end", r.window->row_end}};
  } else {
    j["window"] = nullptr;
  }
  return j;
}

inline json to_json(const GevreyFit& f) {
  using report_detail::number;
  return {{"s_hat", number(f.s_hat)},
          {"log_a", number(f.log_A)},
          {"log_c", number(f.log_C)},
          {"residual", number(f.residual)}};
}

inline json to_json(const RoumieuResult& r) {
  using report_detail::number;
  return {{"b", number(r.B)}, {"k", number(r.K)}, {"pass", r.pass}};
}

inline json to_json(const BatteryReport& r) {
  json roumieu = json::array();
  for (const auto& x : r.roumieu) roumieu.push_back(to_json(x));
  return {{"s_claim", report_detail::number(r.s_claim)},
          {"subl_fit", to_json(r.subl_fit)},
          {"word_fit", to_json(r.word_fit)},
          {"roumieu", std::move(roumieu)},
          {"subl_within_claim", r.subl_within_claim},
          {"word_within_claim", r.word_within_claim},
          {"roumieu_pass", r.roumieu_pass},
          {"consistent", r.consistent},
          {"proxy_note", r.proxy_note}};
}

inline json to_json(const PowerExpSup& p) {
  return {{"lam_star", report_detail::number(p.lam_star)}, {"sup_value", report_detail::number(p.sup_value)}};
}

inline json to_json(const BesselReport& r) {
  using report_detail::number;
  json points = json::array();
  for (const auto& p : r.points) points.push_back({{"l", number(p.l)}, {"partial_sum", number(p.partial_sum)}});
  return {{"n", r.N},
          {"l_split", number(r.l_split)},
          {"points", std::move(points)},
          {"total", number(r.tail.total)},
          {"tail_fraction", number(r.tail.tail_fraction)},
          {"term_slope", number(r.tail.term_slope)}};
}

inline json to_json(const FactorReport& r) {
  using report_detail::number;
  json t2 = json::array(), slopes = json::array();
  for (double v : r.bounds.t2) t2.push_back(number(v));
  for (double v : r.scaling.t2_slopes) slopes.push_back(number(v));
  return {{"word", r.word},
          {"l", number(r.l)},
          {"t1", number(r.bounds.t1)},
          {"t2", std::move(t2)},
          {"t3", number(r.bounds.t3)},
          {"product", number(r.bounds.product())},
          {"l_min", number(r.l_min)},
          {"l_max", number(r.l_max)},
          {"t2_slopes", std::move(slopes)},
          {"t3_slope", number(r.scaling.t3_slope)}};
}

// --- from_json -------------------------------------------------------------

template <class T>
T from_json(const json& j);

template <>
inline SweepReport from_json<SweepReport>(const json& j) {
  using report_detail::read_number;
  SweepReport r;
  r.word = j.at("word").get<std::string>();
  r.group = report_detail::read_group(j.at("group"));
  r.op = report_detail::read_operator(j.at("operator"));
  for (const auto& s : j.at("samples")) r.samples.push_back({read_number(s.at("index")), read_number(s.at("norm"))});
  r.sup_norm = read_number(j.at("sup_norm"));
  r.growth_slope = read_number(j.at("growth_slope"));
  r.stabilization_ratio = read_number(j.at("stabilization_ratio"));
  if (const auto& w = j.at("window"); !w.is_null()) {
    r.window = SweepWindow{w.at("trunc").get<int>(), w.at("row_begin").get<int>(), w.at("row_end").get<int>()};
  }
  return r;
}

template <>
inline GevreyFit from_json<GevreyFit>(const json& j) {
  using report_detail::read_number;
  return {read_number(j.at("s_hat")), read_number(j.at("log_a")), read_number(j.at("log_c")),
          read_number(j.at("residual"))};
}

template <>
inline RoumieuResult from_json<RoumieuResult>(const json& j) {
  using report_detail::read_number;
  return {read_number(j.at("b")), read_number(j.at("k")), j.at("pass").get<bool>()};
}

template <>
inline BatteryReport from_json<BatteryReport>(const json& j) {
  BatteryReport r;
  r.s_claim = report_detail::read_number(j.at("s_claim"));
  r.subl_fit = from_json<GevreyFit>(j.at("subl_fit"));
  r.word_fit = from_json<GevreyFit>(j.at("word_fit"));
  for (const auto& x : j.at("roumieu")) r.roumieu.push_back(from_json<RoumieuResult>(x));
  r.subl_within_claim = j.at("subl_within_claim").get<bool>();
  r.word_within_claim = j.at("word_within_claim").get<bool>();
  r.roumieu_pass = j.at("roumieu_pass").get<bool>();
  r.consistent = j.at("consistent").get<bool>();
  r.proxy_note = j.at("proxy_note").get<std::string>();
  return r;
}

template <>
inline PowerExpSup from_json<PowerExpSup>(const json& j) {
  return {report_detail::read_number(j.at("lam_star")), report_detail::read_number(j.at("sup_value"))};
}

template <>
inline BesselReport from_json<BesselReport>(const json& j) {
  using report_detail::read_number;
  BesselReport r;
  r.N = j.at("n").get<int>();
  r.l_split = read_number(j.at("l_split"));
  for (const auto& p : j.at("points")) r.points.push_back({read_number(p.at("l")), read_number(p.at("partial_sum"))});
  r.tail = {read_number(j.at("total")), read_number(j.at("tail_fraction")), read_number(j.at("term_slope"))};
  return r;
}

template <>
inline FactorReport from_json<FactorReport>(const json& j) {
  using report_detail::read_number;
  FactorReport r;
  r.word = j.at("word").get<std::string>();
  r.l = read_number(j.at("l"));
  r.bounds.t1 = read_number(j.at("t1"));
  for (const auto& v : j.at("t2")) r.bounds.t2.push_back(read_number(v));
  r.bounds.t3 = read_number(j.at("t3"));
  r.l_min = read_number(j.at("l_min"));
  r.l_max = read_number(j.at("l_max"));
  for (const auto& v : j.at("t2_slopes")) r.scaling.t2_slopes.push_back(read_number(v));
  r.scaling.t3_slope = read_number(j.at("t3_slope"));
  return r;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- CSV -------------------------------------------------------------------

/// Header `<index>,norm`, one row per sample, then sup/slope/stab_ratio rows.
inline std::string to_csv(const SweepReport& r) {
  std::ostringstream os;
  os << (r.group == Group::SU2 ? "l" : "lambda") << ",norm\n";
  for (const auto& s : r.samples) os << format_double(s.index) << ',' << format_double(s.norm) << '\n';
  os << "sup," << format_double(r.sup_norm) << '\n';
  os << "slope," << format_double(r.growth_slope) << '\n';
  os << "stab_ratio," << format_double(r.stabilization_ratio) << '\n';
  return os.str();
}

inline std::string to_csv(const BesselReport& r) {
  std::ostringstream os;
  os << "l,partial_sum\n";
  for (const auto& p : r.points) os << format_double(p.l) << ',' << format_double(p.partial_sum) << '\n';
  os << "total," << format_double(r.tail.total) << '\n';
  os << "tail_fraction," << format_double(r.tail.tail_fraction) << '\n';
  os << "term_slope," << format_double(r.tail.term_slope) << '\n';
  return os.str();
}

}  // namespace gevcalc
