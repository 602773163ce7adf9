#include "gdnls/run.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gdnls/errors.hpp"
#include "gdnls/nonlinearity.hpp"

#ifndef GDNLS_VERSION
#define GDNLS_VERSION "0.0.0"
#endif

namespace gdnls {
namespace {

using json = nlohmann::ordered_json;

// Shortest text that parses back to the same double.
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw ConfigError(field + ": " + why);
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, _] : j.items())
    if (!ok.count(k)) bad(where.empty() ? k : where + "." + k, "unknown key");
}

template <class T>
T get(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    bad(field, "wrong type");
  }
}

std::vector<double> get_sweep(const json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) bad(field, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

json fit_json(const CaseResult& r) {
  json j;
  j["case_id"] = r.estimate.id();
  j["anchor"] = r.anchor;
  j["parameters"] = r.estimate.sweep;
  j["seeds"] = r.estimate.seeds;
  j["base_seed"] = r.estimate.base_seed;
  if (r.fit) {
    j["fit"] = {{"slope", r.fit->slope}, {"intercept", r.fit->intercept}, {"max_residual", r.fit->max_residual}};
  } else {
    j["fit"] = nullptr;
  }
  j["claimed_exponent"] = r.claimed_exponent;
  j["measured_exponent"] = r.measured_exponent;
  j["tolerance"] = r.tolerance;
  j["max_ratio"] = r.max_ratio;
  j["max_over_median"] = r.max_over_median;
  j["slope_contracted"] = r.slope_contracted;
  j["contracted"] = r.contracted;
  j["scale_invariant"] = r.scale_invariant;
  j["passed"] = r.passed;
  j["note"] = r.note;
  return j;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
  if (!f) throw Error("cannot write " + p.string());
}

}  // namespace

std::string artifact_version() { return GDNLS_VERSION; }

void RunConfig::validate() const {
  try {
    grid.validate();
  } catch (const Error& e) {
    bad("grid", e.what());
  }
  try {
    parse_polynomial(polynomial);
  } catch (const Error& e) {
    bad("polynomial", e.what());
  }
  try {
    variant.validate();
  } catch (const Error& e) {
    bad("variant", e.what());
  }
  if (seeds && *seeds < 1) bad("seeds", "must be positive");
  if (jobs < 1) bad("jobs", "must be positive");
  resolved_cases();
}

std::vector<EstimateCase> RunConfig::resolved_cases() const {
  std::vector<EstimateCase> out;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const std::string field = "cases[" + std::to_string(i) + "]";
    const CaseRequest& req = cases[i];
    EstimateCase c;
    try {
      c = EstimateCase::parse(req.id);
    } catch (const Error& e) {
      bad(field + ".id", e.what());
    }
    if (req.sweep) c.sweep = *req.sweep;
    else if (sweep) c.sweep = *sweep;
    if (req.seeds) c.seeds = *req.seeds;
    else if (seeds) c.seeds = *seeds;
    c.base_seed = base_seed;
    try {
      c.validate();
    } catch (const Error& e) {
      bad(field, e.what());
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string RunConfig::to_json() const {
  json j;
  j["grid"] = {{"box_length", grid.box_length}, {"nx", grid.nx}, {"t_min", grid.t_min},
               {"t_max", grid.t_max},           {"nt", grid.nt}};
  j["polynomial"] = polynomial;
  j["variant"] = variant.name();
  j["cases"] = json::array();
  for (const auto& c : cases) {
    json e = {{"id", c.id}};
    if (c.sweep) e["sweep"] = *c.sweep;
    if (c.seeds) e["seeds"] = *c.seeds;
    j["cases"].push_back(e);
  }
  if (sweep) j["sweep"] = *sweep;
  if (seeds) j["seeds"] = *seeds;
  j["base_seed"] = base_seed;
  j["output_dir"] = output_dir;
  j["jobs"] = jobs;
  return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  check_keys(j, "", {"grid", "polynomial", "variant", "cases", "sweep", "seeds", "base_seed", "output_dir", "jobs"});
  RunConfig c;
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_object()) bad("grid", "expected an object");
    check_keys(g, "grid", {"box_length", "nx", "t_min", "t_max", "nt"});
    if (g.contains("box_length")) c.grid.box_length = get<double>(g["box_length"], "grid.box_length");
    if (g.contains("nx")) c.grid.nx = get<int>(g["nx"], "grid.nx");
    if (g.contains("t_min")) c.grid.t_min = get<double>(g["t_min"], "grid.t_min");
    if (g.contains("t_max")) c.grid.t_max = get<double>(g["t_max"], "grid.t_max");
    if (g.contains("nt")) c.grid.nt = get<int>(g["nt"], "grid.nt");
  }
  if (j.contains("polynomial")) c.polynomial = get<std::string>(j["polynomial"], "polynomial");
  if (j.contains("variant")) {
    const auto name = get<std::string>(j["variant"], "variant");
    try {
      c.variant = NormVariant::parse(name);
    } catch (const Error& e) {
      bad("variant", e.what());
    }
  }
  if (j.contains("cases")) {
    if (!j["cases"].is_array()) bad("cases", "expected an array");
    for (std::size_t i = 0; i < j["cases"].size(); ++i) {
      const json& e = j["cases"][i];
      const std::string field = "cases[" + std::to_string(i) + "]";
      CaseRequest r;
      if (e.is_string()) {
        r.id = e.get<std::string>();
      } else if (e.is_object()) {
        check_keys(e, field, {"id", "sweep", "seeds"});
        if (!e.contains("id")) bad(field + ".id", "missing");
        r.id = get<std::string>(e["id"], field + ".id");
        if (e.contains("sweep")) r.sweep = get_sweep(e["sweep"], field + ".sweep");
        if (e.contains("seeds")) r.seeds = get<int>(e["seeds"], field + ".seeds");
      } else {
        bad(field, "expected a case id or an object");
      }
      c.cases.push_back(std::move(r));
    }
  }
  if (j.contains("sweep")) c.sweep = get_sweep(j["sweep"], "sweep");
  if (j.contains("seeds")) c.seeds = get<int>(j["seeds"], "seeds");
  if (j.contains("base_seed")) c.base_seed = get<std::uint64_t>(j["base_seed"], "base_seed");
  if (j.contains("output_dir")) c.output_dir = get<std::string>(j["output_dir"], "output_dir");
  if (j.contains("jobs")) c.jobs = get<int>(j["jobs"], "jobs");
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return from_json(ss.str());
}

bool RunRecord::passed() const {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

std::string case_table_csv(const CaseResult& r) {
  std::string out = std::string(kCsvHeader) + "\n";
  const std::string id = "\"" + r.estimate.id() + "\"";  // ids contain commas
  for (const Sample& s : r.samples)
    out += id + "," + num(s.parameter) + "," + std::to_string(s.seed) + "," + num(s.ratio) + "," + num(s.lhs) + "," +
           num(s.rhs) + "\n";
  out += id + ",fit,," + (r.fit ? num(r.fit->slope) : "") + "," + num(r.measured_exponent) + "," +
         num(r.claimed_exponent) + "\n";
  return out;
}

std::string case_table_name(std::size_t index, const EstimateCase& c) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "case_%02zu_", index);
  return buf + family_name(c.family) + ".csv";
}

RunRecord run(const RunConfig& config) {
  config.validate();
  const auto cases = config.resolved_cases();
  if (config.output_dir.empty()) throw ConfigError("output_dir: not set");
  const std::filesystem::path dir = config.output_dir;
  std::filesystem::create_directories(dir);

  RunRecord rec;
  rec.config = config;
  rec.version = artifact_version();
  rec.timestamp = utc_now();
  rec.directory = dir;
  write_file(dir / "config.json", config.to_json());

  json out;
  out["config"] = json::parse(config.to_json());
  out["provenance"] = {{"artifact", "gdnls-lab"},
                       {"version", rec.version},
                       {"timestamp", rec.timestamp},
                       {"base_seed", config.base_seed}};
  out["cases"] = json::array();
  // cases run one after another; each case parallelises over its parameters
  for (std::size_t i = 0; i < cases.size(); ++i) {
    CaseResult r = measure(cases[i], config.jobs);
    const std::string table = case_table_name(i, cases[i]);
    write_file(dir / table, case_table_csv(r));
    json j = fit_json(r);
    j["table"] = table;
    out["cases"].push_back(j);
    rec.results.push_back(std::move(r));
  }
  out["passed"] = rec.passed();
  write_file(dir / "record.json", out.dump(2) + "\n");
  return rec;
}

}  // namespace gdnls
