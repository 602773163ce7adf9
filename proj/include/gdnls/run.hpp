#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gdnls/estimate_lab.hpp"
#include "gdnls/grid.hpp"
#include "gdnls/norms.hpp"

namespace gdnls {

// One requested estimate case; unset fields fall back to the run-wide
// override and then to the case defaults.
struct CaseRequest {
  std::string id;
  std::optional<std::vector<double>> sweep;
  std::optional<int> seeds;
  bool operator==(const CaseRequest&) const = default;
};

struct RunConfig {
  GridSpec grid;
  std::string polynomial = "i*dx(|u|^2*u)";
  NormVariant variant = NormVariant::sec4();
  std::vector<CaseRequest> cases;
  std::optional<std::vector<double>> sweep;  // applies to every case without its own
  std::optional<int> seeds;
  std::uint64_t base_seed = 1;
  std::string output_dir;
  int jobs = 1;

  // Throws ConfigError naming the offending field. Runs before any compute.
  void validate() const;
  // Cases with every override applied, validated.
  std::vector<EstimateCase> resolved_cases() const;

  std::string to_json() const;
  // Unknown keys are rejected. Missing keys take the defaults above.
  static RunConfig from_json(const std::string& text);
  static RunConfig load(const std::filesystem::path& path);
  bool operator==(const RunConfig&) const = default;
};

struct RunRecord {
  RunConfig config;
  std::vector<CaseResult> results;
  std::string version;
  std::string timestamp;  // UTC, ISO 8601
  std::filesystem::path directory;
  bool passed() const;  // every case passed its contract
};

// CSV column order, fixed.
inline constexpr const char* kCsvHeader = "case_id,parameter,seed,ratio,lhs,rhs";

// Sample rows then one fit row (parameter "fit", seed empty, ratio = fitted
// slope, lhs = measured exponent, rhs = claimed exponent).
std::string case_table_csv(const CaseResult& r);

// File name of the table for the i-th case.
std::string case_table_name(std::size_t index, const EstimateCase& c);

// Validates, executes every case in order and writes into config.output_dir:
//   config.json   effective configuration (re-running it reproduces the tables)
//   case_NN_<family>.csv
//   record.json   fits, verdicts and provenance
RunRecord run(const RunConfig& config);

std::string artifact_version();

}  // namespace gdnls
