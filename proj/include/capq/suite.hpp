#ifndef CAPQ_SUITE_HPP
#define CAPQ_SUITE_HPP

#include <map>
#include <string>
#include <vector>

namespace capq {

/// Batch-runner configuration. Defaults run the full symbolic n=2, N=2
/// matrix of checks.
struct RunConfig {
  std::string suite = "all";   // rmatrix|classical|idempotents|quantum|
                               // immanants|all
  int N = 2;
  int n = 2;
  std::string q = "auto";      // "auto", "symbolic", or a rational like "2"
  std::string rmatrix = "dj";  // "dj" or a path in the R-matrix file format
  int bound = 0;               // degree-bound override; 0 keeps defaults
  std::string cache_dir;       // empty falls back to $CAPQ_CACHE_DIR
  std::string report = "text";  // "json" | "text"
  std::string out;             // report path; empty means stdout
  int jobs = 1;
  bool force = false;          // lift the symbolic-mode size guards
};

/// One row of a suite run: an identity verification or a property check.
struct CheckResult {
  std::string id;
  std::map<std::string, std::string> params;
  std::string status;  // "verified" | "failed"
  std::string residual;  // nonempty only when failed
  long long ms = 0;
  bool cache_hit = false;

  bool verified() const { return status == "verified"; }
};

/// Config echo plus the executed checks. Content is deterministic for a
/// given config: parallelism and caching may only change timing fields.
struct SuiteReport {
  RunConfig config;
  std::vector<CheckResult> checks;
  int exit_code = 0;  // 0 all verified, 1 any failure

  size_t verified_count() const;
  std::string render_json() const;
  std::string render_text() const;
};

/// Resolved default cache directory: the config value, else $CAPQ_CACHE_DIR,
/// else empty (caching disabled).
std::string effective_cache_dir(const RunConfig& config);

/// Execute the selected suite in dependency order (R-matrix validation
/// before anything R-dependent). Throws ConfigError on invalid
/// configuration or guard violations; check failures are reported, not
/// thrown.
SuiteReport run(const RunConfig& config);

}  // namespace capq

#endif
