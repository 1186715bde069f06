// derand: run, verify, and simulate de-randomized mechanisms.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "derand/error.hpp"
#include "derand/instance.hpp"
#include "derand/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

derand::io::InstanceFile load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return derand::io::parse_instance(buffer.str());
}

// "a.b.0   value" lines, keys in document order.
void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out << prefix << "\t" << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    flatten(j, "", std::cout);
  }
}

int emit_verdicts(const std::vector<derand::Verdict>& verdicts, const std::string& format) {
  bool all = true;
  json list = json::array();
  for (const auto& v : verdicts) {
    all = all && v.passed;
    list.push_back(v.to_json());
  }
  if (format == "json") {
    std::cout << json{{"passed", all}, {"verdicts", list}}.dump(2) << "\n";
  } else {
    for (const auto& v : verdicts) {
      std::cout << (v.passed ? "PASS  " : "FAIL  ") << v.check;
      if (!v.passed) std::cout << ": " << v.message << "\n      witness " << v.witness.dump();
      std::cout << "\n";
    }
  }
  return all ? kExitPass : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run and check mechanisms whose randomness comes from a modular arithmetic game."};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));

  std::string file;
  auto* run = app.add_subcommand("run", "Execute the mechanism in an instance file; print outcome and transcript");
  run->add_option("file", file, "Instance file")->required();

  std::string suite;
  std::optional<int> n;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "Suite name, or \"all\"")->required();
  verify->add_option("--n", n, "Instance size");
  verify->add_option("--samples", samples, "Random instances per check");
  verify->add_option("--seed", seed, "Master seed")->capture_default_str();

  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> sim_seed;
  unsigned workers = 1;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo over the embedded game");
  simulate->add_option("file", file, "Instance file")->required();
  simulate->add_option("--trials", trials, "Number of trials (default: the file's)");
  simulate->add_option("--seed", sim_seed, "Master seed (default: the file's)");
  simulate->add_option("--workers", workers, "Worker threads; tallies do not depend on it")->capture_default_str();

  auto* exact = app.add_subcommand("exact-dist", "Exact distribution of the embedded game and outcome");
  exact->add_option("file", file, "Instance file")->required();

  for (auto* sub : {run, verify, simulate, exact}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*run) {
      emit(derand::io::run(load(file)), format);
      return kExitPass;
    }
    if (*verify) {
      const derand::verify::SuiteOptions options{n, samples, seed};
      std::vector<derand::Verdict> verdicts;
      if (suite == "all") {
        for (const auto& name : derand::verify::suite_names()) {
          for (auto& v : derand::verify::run_suite(name, options)) verdicts.push_back(std::move(v));
        }
      } else {
        verdicts = derand::verify::run_suite(suite, options);
      }
      return emit_verdicts(verdicts, format);
    }
    if (*simulate) {
      const auto instance = load(file);
      const auto count = trials ? trials : instance.trials;
      const auto master = sim_seed ? sim_seed : instance.seed;
      if (!count) throw UsageError("simulate needs --trials or a \"trials\" field");
      if (!master) throw UsageError("simulate needs --seed or a \"seed\" field");
      const auto mechanism = derand::io::sim_mechanism(instance);
      const auto policies = derand::io::effective_policies(instance);
      std::optional<derand::sim::Distribution> reference;
      try {
        reference = derand::sim::exact_distribution(mechanism, policies);
      } catch (const derand::CapacityError&) {
      }
      const auto report = derand::sim::run_trials(mechanism, policies, *count, *master, reference, workers);
      emit(derand::io::to_json(report), format);
      return kExitPass;
    }
    emit(derand::io::exact_dist(load(file)), format);
    return kExitPass;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const derand::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}
