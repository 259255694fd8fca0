#pragma once

// `gevcalc` command-line front end. Exit codes: 0 success, 1 numerical or
// I/O failure (or a failed invariant under check-all), 2 invalid input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "gevcalc/invariants.hpp"
#include "gevcalc/report.hpp"

namespace gevcalc::cli {

inline constexpr const char* kGrammar = R"(Words are letter strings: SU(2) letters P M R1 R2, Heisenberg letters X Y Z Zb
(Zb and R1/R2 are two-character tokens), e.g. PMPM, ZZbZ, R1R2.
Profiles are kind:key=value,... with kinds
  expfrac:B=<b>,s=<s>        e^{-B L^{1/(2s)}} envelope, b > 0, s > 0
  heat:t=<t>                 e^{-t L} envelope, t > 0
  polynomial:p=<p>           (1+l)^{-p} envelope, p > 0
  delta:l0=<l>,row=<i>,col=<j>[,scale=<x>]
Environment: GEVCALC_THREADS (positive integer) caps sweep parallelism.)";

namespace detail {

/// Half-integers >= lo.
inline CLI::Validator half_integer(double lo) {
  return CLI::Validator(
      [lo](std::string& s) -> std::string {
        double v = 0.0;
        try {
          v = std::stod(s);
        } catch (...) {
          return "not a number: " + s;
        }
        if (!std::isfinite(v) || v < lo || std::abs(2.0 * v - std::round(2.0 * v)) > 0.0) {
          return "must be a half-integer >= " + format_double(lo);
        }
        return {};
      },
      "HALF-INTEGER");
}

inline CLI::Validator positive_finite() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        double v = 0.0;
        try {
          v = std::stod(s);
        } catch (...) {
          return "not a number: " + s;
        }
        if (!std::isfinite(v) || !(v > 0.0)) return "must be finite and > 0";
        return {};
      },
      "POSITIVE");
}

inline CLI::Validator nonzero_finite() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        double v = 0.0;
        try {
          v = std::stod(s);
        } catch (...) {
          return "not a number: " + s;
        }
        if (!std::isfinite(v) || v == 0.0) return "must be finite and nonzero";
        return {};
      },
      "NONZERO");
}

inline GeneratorWord word_flag(const std::string& text, Group group, const std::string& flag) {
  try {
    GeneratorWord w = parse_word(text, group);
    if (w.empty()) throw CLI::ValidationError(flag, "word must be non-empty");
    return w;
  } catch (const Error& e) {
    throw CLI::ValidationError(flag, e.what());
  }
}

inline std::map<std::string, double> key_values(const std::string& body, const std::string& flag) {
  std::map<std::string, double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError(flag, "expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item.substr(eq + 1), &used);
    } catch (...) {
      used = 0;
    }
    if (used == 0 || used != item.size() - eq - 1) throw CLI::ValidationError(flag, "bad number in '" + item + "'");
    if (!out.emplace(key, v).second) throw CLI::ValidationError(flag, "duplicate key " + key);
  }
  return out;
}

inline ProfileKind parse_profile(const std::string& text, const std::string& flag = "--profile") {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError(flag, "expected kind:key=value,...");
  const std::string kind = text.substr(0, colon);
  auto kv = key_values(text.substr(colon + 1), flag);
  auto take = [&](const std::string& key, std::optional<double> fallback = {}) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (fallback) return *fallback;
      throw CLI::ValidationError(flag, kind + " needs " + key);
    }
    const double v = it->second;
    kv.erase(it);
    return v;
  };
  auto integer = [&](double v, const std::string& key) {
    if (v < 0.0 || v != std::floor(v)) throw CLI::ValidationError(flag, key + " must be a non-negative integer");
    return static_cast<int>(v);
  };
  ProfileKind out;
  if (kind == "expfrac") {
    const double B = take("B"), s = take("s");
    out = profile::ExpFrac{B, s};
  } else if (kind == "heat") {
    out = profile::Heat{take("t")};
  } else if (kind == "polynomial") {
    out = profile::Polynomial{take("p")};
  } else if (kind == "delta") {
    const double l0 = take("l0");
    const int row = integer(take("row"), "row"), col = integer(take("col"), "col");
    const double scale = take("scale", 1.0);
    try {
      out = profile::Delta{HalfInt::from_double(l0), row, col, scale};
    } catch (const Error& e) {
      throw CLI::ValidationError(flag, e.what());
    }
  } else {
    throw CLI::ValidationError(flag, "unknown profile kind '" + kind + "'");
  }
  if (!kv.empty()) throw CLI::ValidationError(flag, "unknown key '" + kv.begin()->first + "' for " + kind);
  return out;
}

inline CoefficientProfile profile_flag(const std::string& text, double band) {
  ProfileKind kind = parse_profile(text);
  try {
    return make_profile(std::move(kind), HalfInt::from_double(band));
  } catch (const Error& e) {
    throw CLI::ValidationError("--profile", e.what());
  }
}

inline unsigned thread_cap() {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GEVCALC_THREADS")) {
    const std::string s(env);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (...) {
      used = 0;
    }
    if (used == 0 || used != s.size() || v < 1) {
      throw CLI::ValidationError("GEVCALC_THREADS", "must be a positive integer, got '" + s + "'");
    }
    threads = std::min<unsigned long>(threads, static_cast<unsigned long>(v));
  }
  return threads;
}

/// Writes to a sibling temporary file and renames it over the target.
inline void write_atomic(const std::string& path, const std::string& data) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << data;
    os.flush();
    if (!os) {
      os.close();
      fs::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename to " + path + ": " + ec.message());
  }
}

}  // namespace detail

/// Parses argv, runs one subcommand and writes its report.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Symbol calculus, Riesz transforms and Gevrey order estimation on SU(2) and H1", "gevcalc"};
  app.footer(kGrammar);
  app.require_subcommand(1, 1);

  std::string format, output, word, op = "subl", profile_text, alphabet = "R1R2";
  double l_min = 0.5, l_max = 50.0, l = 5.0, band = 60.0, s_claim = 1.0, k_pow = 1.0, D = 1.0, s = 1.0;
  double l_split = 50.0, bessel_l_max = 400.0;
  int trunc = 1024, k_max = 12, word_max_len = 6, bessel_n = 1;
  std::vector<double> lambdas{1.0};
  std::vector<int> only;

  std::map<const CLI::App*, std::string> default_format;
  auto add_output = [&](CLI::App* sub, std::vector<std::string> formats) {
    default_format[sub] = formats.front();
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember(formats));
    sub->add_option("--output", output, "Write the report here (atomically) instead of stdout");
  };

  auto* su2 = app.add_subcommand("su2-riesz", "Sweep the SU(2) Riesz transform norm of a word over l");
  su2->add_option("--word", word, "Word over {P, M, R1, R2}")->required();
  su2->add_option("--l-min", l_min, "Smallest spin")->check(detail::half_integer(0.5));
  su2->add_option("--l-max", l_max, "Largest spin")->check(detail::half_integer(0.5));
  su2->add_option("--operator", op, "subl or beltrami")->check(CLI::IsMember({"subl", "beltrami"}));
  add_output(su2, {"csv", "json"});

  auto* heis = app.add_subcommand("heis-riesz", "Windowed Heisenberg Riesz transform norms of a word");
  heis->add_option("--word", word, "Word over {X, Y, Z, Zb}")->required();
  heis->add_option("--lambda", lambdas, "Representation parameters")->check(detail::nonzero_finite());
  heis->add_option("--trunc", trunc, "Hermite truncation N")->check(CLI::Range(2, 1 << 16));
  add_output(heis, {"json", "csv"});

  auto* factor = app.add_subcommand("factor-bounds", "Factor norms of a {P, M} Riesz transform");
  factor->add_option("--word", word, "Word over {P, M}, length >= 2")->required();
  factor->add_option("--l", l, "Spin for the factor norms")->check(detail::half_integer(0.5));
  factor->add_option("--l-min", l_min, "Scaling fit range start")->check(detail::half_integer(0.5));
  factor->add_option("--l-max", l_max, "Scaling fit range end")->check(detail::half_integer(0.5));
  add_output(factor, {"json"});

  auto* fit = app.add_subcommand("gevrey-fit", "Fit the Gevrey order of ||L^k phi|| for a profile");
  fit->add_option("--profile", profile_text, "Profile as kind:key=value,...")->required();
  fit->add_option("--band", band, "Band limit")->check(detail::half_integer(1.0));
  fit->add_option("--k-max", k_max, "Largest power of L")->check(CLI::Range(5, 64));
  add_output(fit, {"json"});

  auto* battery = app.add_subcommand("gevrey-battery", "Run the Gevrey equivalence battery on a profile");
  battery->add_option("--profile", profile_text, "Profile as kind:key=value,...")->required();
  battery->add_option("--band", band, "Band limit")->check(detail::half_integer(40.0));
  battery->add_option("--s-claim", s_claim, "Claimed Gevrey order")->check(detail::positive_finite());
  battery->add_option("--k-max", k_max, "Largest power of L")->check(CLI::Range(5, 64));
  battery->add_option("--word-max-len", word_max_len, "Longest derivative word")->check(CLI::Range(5, 8));
  battery->add_option("--alphabet", alphabet, "Derivative letters, e.g. R1R2 or PM");
  add_output(battery, {"json"});

  auto* sup = app.add_subcommand("multiplier-sup", "Closed-form supremum of lambda^k exp(-D lambda^{1/(2s)})");
  sup->add_option("--k", k_pow, "Power k >= 0")->check(CLI::Range(0.0, 1e6));
  sup->add_option("--D", D, "Decay rate D > 0")->check(detail::positive_finite());
  sup->add_option("--s", s, "Gevrey order s > 0")->check(detail::positive_finite());
  add_output(sup, {"json"});

  auto* bessel = app.add_subcommand("bessel-series", "Partial sums of the Bessel potential HS series");
  bessel->add_option("--n", bessel_n, "Bessel order N")->check(CLI::Range(1, 64));
  bessel->add_option("--l-max", bessel_l_max, "Largest spin")->check(detail::half_integer(1.0));
  bessel->add_option("--l-split", l_split, "Tail starts after this spin")->check(detail::half_integer(0.0));
  add_output(bessel, {"csv", "json"});

  auto* check = app.add_subcommand("check-all", "Run the invariant suite");
  check->add_option("--only", only, "Run only these invariant ids")->check(CLI::Range(1, 12));

  std::string report;
  std::vector<InvariantResult> results;
  unsigned threads = 1;
  try {
    app.parse(argc, argv);
    threads = detail::thread_cap();
    if (l_min > l_max && (su2->parsed() || factor->parsed())) {
      throw CLI::ValidationError("--l-min", "must not exceed --l-max");
    }
    if (bessel->parsed() && l_split >= bessel_l_max) throw CLI::ValidationError("--l-split", "must be below --l-max");

    // Inputs are validated before any computation starts.
    std::function<std::string()> job;
    if (format.empty()) {
      for (const auto& [sub, fallback] : default_format) {
        if (sub->parsed()) format = fallback;
      }
    }
    const bool json_out = format == "json";
    if (su2->parsed()) {
      const GeneratorWord w = detail::word_flag(word, Group::SU2, "--word");
      const RieszContext ctx{Group::SU2, op == "subl" ? Operator::SubL : Operator::Beltrami, {}};
      job = [=] {
        const auto r = riesz_sweep(ctx, w, su2_spin_range(l_min, l_max), threads);
        return json_out ? dump(to_json(r)) : to_csv(r);
      };
    } else if (heis->parsed()) {
      const GeneratorWord w = detail::word_flag(word, Group::Heis, "--word");
      if (2 * static_cast<long>(w.size()) >= trunc) {
        throw CLI::ValidationError("--trunc", "must exceed 2 * word length");
      }
      std::sort(lambdas.begin(), lambdas.end());
      const RieszContext ctx{Group::Heis, Operator::SubL, HeisRep{lambdas.front(), trunc}};
      job = [=] {
        const auto r = riesz_sweep(ctx, w, lambdas, threads);
        return json_out ? dump(to_json(r)) : to_csv(r);
      };
    } else if (factor->parsed()) {
      const GeneratorWord w = detail::word_flag(word, Group::SU2, "--word");
      if (!w.uses_only({Letter::P, Letter::M})) throw CLI::ValidationError("--word", "must be over {P, M}");
      if (w.size() < 2) throw CLI::ValidationError("--word", "needs length >= 2");
      job = [=] {
        FactorReport r{w.to_string(), l, factor_decomposition(w, HalfInt::from_double(l)), l_min, l_max,
                       factor_scaling(w, l_min, l_max)};
        return dump(to_json(r));
      };
    } else if (fit->parsed()) {
      const CoefficientProfile p = detail::profile_flag(profile_text, band);
      job = [=] { return dump(to_json(fit_order(seminorm_sequence(p, k_max)))); };
    } else if (battery->parsed()) {
      const CoefficientProfile p = detail::profile_flag(profile_text, band);
      const GeneratorWord letters = detail::word_flag(alphabet, Group::SU2, "--alphabet");
      try {
        enumerate_words(letters.letters(), 1);
      } catch (const Error& e) {
        throw CLI::ValidationError("--alphabet", e.what());
      }
      const BatteryOptions opts{k_max, letters.letters(), word_max_len};
      job = [=] { return dump(to_json(equivalence_battery(p, s_claim, opts))); };
    } else if (sup->parsed()) {
      job = [=] { return dump(to_json(power_exp_sup(k_pow, D, s))); };
    } else if (bessel->parsed()) {
      job = [=] {
        BesselReport r;
        r.N = bessel_n;
        r.l_split = l_split;
        r.points = bessel_hs_partial_sums(bessel_n, HalfInt::from_double(bessel_l_max));
        r.tail = series_tail(r.points, l_split);
        return json_out ? dump(to_json(r)) : to_csv(r);
      };
    } else if (check->parsed()) {
      job = [&] {
        results = run_invariants(only, threads);
        return std::string();
      };
    }

    try {
      report = job();
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  }

  if (check->parsed()) {
    bool all = true;
    for (const auto& r : results) {
      out << format_result(r) << '\n';
      all = all && r.passed;
    }
    return all ? 0 : 1;
  }
  try {
    if (output.empty()) {
      out << report;
    } else {
      detail::write_atomic(output, report);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace gevcalc::cli
