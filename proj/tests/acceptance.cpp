// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fail.
#include <iostream>
#include <sstream>

#include "gevcalc/cli.hpp"
#include "gevcalc/invariants.hpp"

using namespace gevcalc;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gevcalc");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

template <class T>
bool round_trips(const std::string& text) {
  const T record = from_json<T>(json::parse(text));
  return dump(to_json(record)) == text && from_json<T>(json::parse(dump(to_json(record)))) == record;
}

InvariantResult cli_criterion() {
  InvariantResult r{12, "CLI determinism, round-trip and check-all", true, {}};

  const std::vector<std::vector<std::string>> specs{
      {"su2-riesz", "--word", "PMP", "--l-max", "30", "--format", "json"},
      {"heis-riesz", "--word", "ZZb", "--lambda", "0.25", "1", "4", "--trunc", "256"},
      {"factor-bounds", "--word", "PPM", "--l", "5"},
      {"gevrey-fit", "--profile", "expfrac:B=1,s=1", "--band", "200"},
      {"gevrey-battery", "--profile", "expfrac:B=1,s=1", "--band", "200", "--s-claim", "1"},
      {"multiplier-sup", "--k", "3", "--D", "1.5", "--s", "2"},
      {"bessel-series", "--n", "2", "--format", "json"},
  };
  std::vector<CliRun> first;
  bool deterministic = true;
  for (const auto& spec : specs) {
    const CliRun a = run_cli(spec), b = run_cli(spec);
    deterministic = deterministic && a.code == 0 && a.out == b.out;
    first.push_back(a);
  }

  bool trips = true;
  try {
    trips = round_trips<SweepReport>(first[0].out) && round_trips<SweepReport>(first[1].out) &&
            round_trips<FactorReport>(first[2].out) && round_trips<GevreyFit>(first[3].out) &&
            round_trips<BatteryReport>(first[4].out) && round_trips<PowerExpSup>(first[5].out) &&
            round_trips<BesselReport>(first[6].out);
  } catch (const std::exception&) {
    trips = false;
  }

  const CliRun all = run_cli({"check-all"});
  std::size_t failing = 0;
  std::istringstream lines(all.out);
  for (std::string line; std::getline(lines, line);) failing += line.rfind("FAIL", 0) == 0;

  r.passed = deterministic && trips && all.code == 0;
  r.detail = std::string("byte-identical reruns ") + (deterministic ? "yes" : "no") + "; JSON round-trip " +
             (trips ? "yes" : "no") + "; check-all exit " + std::to_string(all.code) + " (" +
             std::to_string(failing) + " failing)";
  return r;
}

}  // namespace

int main() {
  bool ok = true;
  auto report = [&](const InvariantResult& r) {
    std::cout << "criterion " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << "  " << r.name << ": "
              << r.detail << std::endl;
    ok = ok && r.passed;
  };
  for (const auto& r : run_invariants({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11})) report(r);
  report(cli_criterion());
  return ok ? 0 : 1;
}
