#include "tumorsim/cli.hpp"

#include <fstream>
#include <future>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "tumorsim/driver.hpp"
#include "tumorsim/errors.hpp"
#include "tumorsim/oracles.hpp"

namespace tumorsim {
namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct Job {
  RunConfig cfg;
  std::filesystem::path out_dir;
};

struct JobResult {
  int code = kExitOk;
  std::string message;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

int verify(std::ostream& out) {
  bool ok = true;
  for (const auto& r : oracles::run_verify_suite()) {
    char line[256];
    std::snprintf(line, sizeof line, "%s  %-48s  err=%.3e  tol=%.1e", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.max_error, r.tolerance);
    out << line << '\n';
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tumor interface simulator"};
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string sweep;
  bool run_verify = false;
  app.add_option("--config", config_path, "Configuration file");
  app.add_option("--out", out_dir, "Output directory (overrides output.dir)");
  app.add_option("--seed", seed, "Random seed (overrides initial.seed)");
  app.add_option("--sweep", sweep, "KEY=v1,v2,... runs one configuration per value");
  app.add_flag("--verify", run_verify, "Run the oracle suite and exit");
  app.set_version_flag("--version", kVersion);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (run_verify) return verify(out);
  if (config_path.empty()) {
    err << "error: --config is required\n";
    return kExitConfig;
  }

  std::string text;
  {
    std::ifstream in(config_path);
    if (!in) {
      err << "error: cannot read " << config_path << '\n';
      return kExitConfig;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }

  Overrides base;
  if (seed) base.emplace_back("initial.seed", std::to_string(*seed));

  std::vector<Job> jobs;
  try {
    if (sweep.empty()) {
      RunConfig cfg = parse_config(text, base);
      cfg.base_dir = std::filesystem::path(config_path).parent_path();
      jobs.push_back({cfg, out_dir.empty() ? std::filesystem::path(cfg.output_dir) : std::filesystem::path(out_dir)});
    } else {
      const auto eq = sweep.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("--sweep", "--sweep: expected KEY=v1,v2,...");
      const std::string key = sweep.substr(0, eq);
      const auto values = split(sweep.substr(eq + 1), ',');
      if (values.empty()) throw ConfigError("--sweep", "--sweep: no values given");
      for (const auto& value : values) {
        Overrides overrides = base;
        overrides.emplace_back(key, value);
        RunConfig cfg = parse_config(text, overrides);
        cfg.base_dir = std::filesystem::path(config_path).parent_path();
        const std::filesystem::path root = out_dir.empty() ? std::filesystem::path(cfg.output_dir) : std::filesystem::path(out_dir);
        jobs.push_back({cfg, root / (key + "=" + value)});
      }
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  const auto execute = [&text](const Job& job) {
    JobResult r;
    try {
      const RunOutcome outcome = execute_run(job.cfg, job.out_dir, text);
      if (outcome.status == RunOutcome::Status::BlowUp) {
        r.code = kExitBlowUp;
        r.message = job.out_dir.string() + ": blow-up: " + outcome.message;
      } else {
        r.message = job.out_dir.string() + ": completed " + std::to_string(outcome.steps) + " steps";
      }
    } catch (const ConfigError& e) {
      r.code = kExitConfig;
      r.message = job.out_dir.string() + ": config error: " + e.what();
    } catch (const std::exception& e) {
      r.code = kExitFailure;
      r.message = job.out_dir.string() + ": error: " + e.what();
    }
    return r;
  };

  std::vector<std::future<JobResult>> running;
  for (const auto& job : jobs) running.push_back(std::async(std::launch::async, execute, std::cref(job)));

  int code = kExitOk;
  for (auto& f : running) {
    const JobResult r = f.get();
    (r.code == kExitOk ? out : err) << r.message << '\n';
    if (r.code == kExitConfig || code == kExitConfig) {
      code = kExitConfig;
    } else if (r.code == kExitBlowUp || code == kExitBlowUp) {
      code = kExitBlowUp;
    } else if (r.code != kExitOk) {
      code = r.code;
    }
  }
  return code;
}

}  // namespace tumorsim
