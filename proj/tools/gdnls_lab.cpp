// gdnls-lab: run estimate cases from a JSON config and write a run record.
//
// Exit status: 0 every case passed, 1 some contracted case failed,
// 2 usage or configuration error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>

#include <CLI11.hpp>

#include "gdnls/errors.hpp"
#include "gdnls/estimate_lab.hpp"
#include "gdnls/run.hpp"

namespace {

constexpr int kUsage = 2;
constexpr const char* kOutputRootEnv = "GDNLS_LAB_OUTPUT_ROOT";

std::string default_output() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
  const char* root = std::getenv(kOutputRootEnv);
  return std::string(root && *root ? root : "runs") + "/run-" + stamp;
}

void summarize(const gdnls::RunRecord& rec) {
  for (const auto& r : rec.results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.estimate.id();
    if (r.fit) std::cout << "  exponent " << r.measured_exponent << " (claimed " << r.claimed_exponent << ")";
    std::cout << "  max/median " << r.max_over_median;
    if (!r.contracted) std::cout << "  [no contract]";
    std::cout << "\n";
  }
  std::cout << "wrote " << rec.directory.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for derivative NLS estimates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gdnls::artifact_version());

  auto* run = app.add_subcommand("run", "Execute the cases of a config and write a run record");
  std::string config_path, output;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::vector<std::string> extra_cases;
  run->add_option("-c,--config", config_path, "JSON run config")->check(CLI::ExistingFile);
  run->add_option("-o,--output", output, "Output directory (default $" + std::string(kOutputRootEnv) + "/run-<time>)");
  run->add_option("--seed", seed, "Base seed override");
  run->add_option("-j,--jobs", jobs, "Parameters measured concurrently")->check(CLI::PositiveNumber);
  run->add_option("--case", extra_cases, "Case id to append (repeatable)");

  app.add_subcommand("list-cases", "Print every case family with its reference");
  auto* describe = app.add_subcommand("describe", "Print the reference of a case");
  std::string describe_id;
  describe->add_option("id", describe_id, "Case family or id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (app.got_subcommand("list-cases")) {
      for (const auto& line : gdnls::list_cases()) std::cout << line << "\n";
      return 0;
    }
    if (app.got_subcommand("describe")) {
      std::cout << gdnls::describe_case(describe_id) << "\n";
      return 0;
    }

    gdnls::RunConfig cfg;
    if (!config_path.empty()) cfg = gdnls::RunConfig::load(config_path);
    for (const auto& id : extra_cases) cfg.cases.push_back({id, std::nullopt, std::nullopt});
    if (seed) cfg.base_seed = *seed;
    if (jobs) cfg.jobs = *jobs;
    if (!output.empty()) cfg.output_dir = output;
    cfg.validate();
    if (cfg.output_dir.empty()) cfg.output_dir = default_output();
    const gdnls::RunRecord rec = gdnls::run(cfg);
    summarize(rec);
    return rec.passed() ? 0 : 1;
  } catch (const gdnls::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
