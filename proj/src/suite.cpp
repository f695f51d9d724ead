#include "capq/suite.hpp"

#include <chrono>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "capq/capelli.hpp"
#include "capq/errors.hpp"
#include "json.hpp"

namespace capq {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

std::string partition_str(const Partition& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

QField parse_q(const std::string& q) {
  if (q == "symbolic") return QField::symbolic();
  try {
    Rational v(q);
    if (v.get_den() == 0)
      throw ConfigError("q value '" + q + "' has a zero denominator");
    v.canonicalize();
    return QField::specialized(v);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse q value '" + q +
                      "': use \"symbolic\" or a rational like 2 or 3/2");
  }
}

CheckResult from_report(const IdentityReport& rep) {
  CheckResult c;
  c.id = rep.id;
  c.params["N"] = std::to_string(rep.N);
  if (rep.n > 0) c.params["n"] = std::to_string(rep.n);
  if (!rep.lambda.empty()) c.params["lambda"] = partition_str(rep.lambda);
  if (!rep.tableau.empty()) c.params["tableau"] = rep.tableau;
  c.params["q"] = rep.q_mode;
  for (const auto& [key, value] : rep.extra) c.params[key] = value;
  c.status = rep.status;
  c.residual = rep.residual;
  c.ms = rep.ms;
  c.cache_hit = rep.cache_hit;
  return c;
}

/// Fold one sub-run into a merged check (a shape's tableaux, both trace
/// modes): timings add, the first failure wins, informational extras
/// propagate.
void fold(CheckResult& c, const IdentityReport& rep) {
  c.ms += rep.ms;
  c.cache_hit = c.cache_hit || rep.cache_hit;
  auto info = rep.extra.find("untraced_i_independence");
  if (info != rep.extra.end()) c.params["untraced_i_independence"] = info->second;
  if (!rep.verified() && c.verified()) {
    c.status = "failed";
    c.residual = rep.residual;
    if (!rep.tableau.empty()) c.params["failed_tableau"] = rep.tableau;
    for (const auto& [key, value] : rep.extra)
      if (value != "holds") c.params[key] = value;
  }
}

CheckResult eq3_check(const Partition& lambda, int N, const QField& f,
                      const VerifyOptions& opts) {
  CheckResult c;
  c.id = "eq3-immanant";
  c.status = "verified";
  c.params["N"] = std::to_string(N);
  c.params["lambda"] = partition_str(lambda);
  c.params["q"] = f.describe();
  c.params["with_trace"] = "both";
  size_t tabs = standard_tableaux(lambda).size();
  c.params["tableaux"] = std::to_string(tabs);
  for (size_t t = 0; t < tabs; ++t)
    for (bool with_trace : {false, true})
      fold(c, verify_imm(lambda, static_cast<int>(t), N, with_trace, f, opts));
  return c;
}

CheckResult eq7_check(const RMatrix& R, const Partition& lambda,
                      const VerifyOptions& opts) {
  CheckResult c;
  c.id = "eq7-corcap";
  c.status = "verified";
  c.params["N"] = std::to_string(R.N());
  c.params["lambda"] = partition_str(lambda);
  c.params["q"] = R.field().describe();
  size_t tabs = standard_tableaux(lambda).size();
  c.params["tableaux"] = std::to_string(tabs);
  for (size_t t = 0; t < tabs; ++t)
    fold(c, verify_corcap(R, lambda, static_cast<int>(t), opts));
  return c;
}

CheckResult validation_check(const RMatrix& R, const std::string& source,
                             long long ms) {
  CheckResult c;
  c.id = "rmatrix-validation";
  c.params["N"] = std::to_string(R.N());
  c.params["q"] = R.field().describe();
  c.params["source"] = source;
  c.params["braid_ok"] = R.braid_ok() ? "true" : "false";
  c.params["hecke_ok"] = R.hecke_ok() ? "true" : "false";
  c.params["skew_ok"] = R.skew_ok() ? "true" : "false";
  c.status = R.valid() ? "verified" : "failed";
  c.residual = R.failure_witness();
  c.ms = ms;
  return c;
}

/// Family invariants over all standard tableaux of all shapes of n:
/// completeness, pairwise orthogonality, and the two-sided eigenvalue
/// property of the Jucys-Murphy elements.
CheckResult idempotent_family_check(bool hecke_carrier, int n, int N,
                                    const QField& f,
                                    const std::optional<RMatrix>& R) {
  auto start = Clock::now();
  CheckResult c;
  c.id = hecke_carrier ? "idempotents-hecke" : "idempotents-classical";
  c.status = "verified";
  c.params["N"] = std::to_string(N);
  c.params["n"] = std::to_string(n);
  c.params["q"] = f.describe();
  auto fail = [&](const std::string& why) {
    if (c.verified()) {
      c.status = "failed";
      c.residual = why;
    }
  };

  std::vector<TensorMat> es;
  std::vector<StdTableau> ts;
  for (const Partition& lambda : partitions(n))
    for (const StdTableau& T : standard_tableaux(lambda)) {
      es.push_back(hecke_carrier ? idempotent_hecke(T, *R)
                                 : idempotent_classical(T, N, f));
      ts.push_back(T);
    }
  c.params["idempotents"] = std::to_string(es.size());

  TensorMat sum = es[0];
  for (size_t i = 1; i < es.size(); ++i) sum = sum + es[i];
  if (sum != TensorMat::identity(N, n, f))
    fail("completeness: sum over all tableaux differs from the identity");

  for (size_t a = 0; a < es.size() && c.verified(); ++a)
    for (size_t b = 0; b < es.size(); ++b) {
      if (a == b) continue;
      if (!tmul(es[a], es[b]).is_zero()) {
        fail("orthogonality: " + ts[a].str() + " * " + ts[b].str() +
             " is nonzero");
        break;
      }
    }

  for (size_t a = 0; a < es.size() && c.verified(); ++a)
    for (int k = 1; k <= n; ++k) {
      TensorMat jk = hecke_carrier ? jm_hecke(k, n, *R)
                                   : jm_classical(k, n, N, f);
      int content = ts[a].content(k);
      QScalar eps = hecke_carrier ? f.jm_eigenvalue(content)
                                  : f.integer(content);
      TensorMat scaled = es[a].scaled(eps);
      if (tmul(jk, es[a]) != scaled || tmul(es[a], jk) != scaled) {
        fail("eigenvalue: tableau " + ts[a].str() + " at k=" +
             std::to_string(k));
        break;
      }
    }

  c.ms = ms_since(start);
  return c;
}

}  // namespace

std::string effective_cache_dir(const RunConfig& config) {
  if (!config.cache_dir.empty()) return config.cache_dir;
  const char* env = std::getenv("CAPQ_CACHE_DIR");
  return env ? std::string(env) : std::string();
}

size_t SuiteReport::verified_count() const {
  size_t v = 0;
  for (const CheckResult& c : checks)
    if (c.verified()) ++v;
  return v;
}

std::string SuiteReport::render_json() const {
  nlohmann::json j;
  // jobs and out are execution-only knobs: they must not change report
  // content, so they are not echoed.
  j["config"] = {{"suite", config.suite},   {"N", config.N},
                 {"n", config.n},           {"q", config.q},
                 {"rmatrix", config.rmatrix}, {"bound", config.bound},
                 {"cache_dir", config.cache_dir}, {"force", config.force}};
  j["checks"] = nlohmann::json::array();
  long long total_ms = 0;
  for (const CheckResult& c : checks) {
    nlohmann::json jc = {{"id", c.id},
                         {"params", c.params},
                         {"status", c.status},
                         {"ms", c.ms},
                         {"cache_hit", c.cache_hit}};
    if (!c.residual.empty()) jc["residual"] = c.residual;
    j["checks"].push_back(std::move(jc));
    total_ms += c.ms;
  }
  size_t v = verified_count();
  j["summary"] = {{"checks", checks.size()},
                  {"verified", v},
                  {"failed", checks.size() - v},
                  {"total_ms", total_ms},
                  {"exit_code", exit_code}};
  return j.dump(2) + "\n";
}

std::string SuiteReport::render_text() const {
  std::ostringstream out;
  out << "capq suite '" << config.suite << "'  N=" << config.N
      << " n=" << config.n << " q=" << config.q << " rmatrix="
      << config.rmatrix;
  if (config.bound) out << " bound=" << config.bound;
  out << " cache="
      << (config.cache_dir.empty() ? std::string("off") : config.cache_dir)
      << "\n";
  long long total_ms = 0;
  for (const CheckResult& c : checks) {
    out << (c.verified() ? "  [ ok ] " : "  [FAIL] ") << c.id << " (";
    bool first = true;
    for (const auto& [key, value] : c.params) {
      if (!first) out << ", ";
      out << key << "=" << value;
      first = false;
    }
    out << ") " << c.ms << " ms" << (c.cache_hit ? " [cached]" : "") << "\n";
    if (!c.residual.empty()) out << "         residual: " << c.residual << "\n";
    total_ms += c.ms;
  }
  size_t v = verified_count();
  out << "summary: " << checks.size() << " checks, " << v << " verified, "
      << checks.size() - v << " failed, " << total_ms << " ms\n";
  return out.str();
}

SuiteReport run(const RunConfig& config_in) {
  RunConfig cfg = config_in;

  bool is_rmx = cfg.suite == "rmatrix";
  bool is_all = cfg.suite == "all";
  bool wants_classical = is_all || cfg.suite == "classical";
  bool wants_idem = is_all || cfg.suite == "idempotents";
  bool wants_quantum = is_all || cfg.suite == "quantum";
  bool wants_imm = is_all || cfg.suite == "immanants";
  if (!is_rmx && !wants_classical && !wants_idem && !wants_quantum &&
      !wants_imm)
    throw ConfigError(
        "unknown suite '" + cfg.suite +
        "': choose rmatrix, classical, idempotents, quantum, immanants or "
        "all");

  if (cfg.N < 1 || cfg.N > 4)
    throw ConfigError("N must be between 1 and 4");
  if (cfg.n < 1 || cfg.n > 4)
    throw ConfigError("n must be between 1 and 4");
  if (cfg.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (cfg.bound != 0 && cfg.bound < 2)
    throw ConfigError("bound must be at least 2");
  if (cfg.report != "json" && cfg.report != "text")
    throw ConfigError("report must be 'json' or 'text'");

  if (cfg.q == "auto") cfg.q = cfg.n <= 2 ? "symbolic" : "2";
  QField f = parse_q(cfg.q);
  if (f.mode() == QMode::symbolic && cfg.n > 2 && !cfg.force)
    throw ConfigError(
        "symbolic q is limited to n <= 2: specialize q (e.g. --q 2) or pass "
        "--force");

  // Mirror the per-identity guards up front so a bad configuration exits
  // before any completion work starts.
  if (wants_classical) {
    if (cfg.N > 3)
      throw ConfigError("classical checks require N <= 3" +
                        std::string(is_all ? " (try --suite classical "
                                             "only with N <= 3)"
                                           : ""));
    if (cfg.n > 3) throw ConfigError("classical checks require n <= 3");
    if (cfg.n == 3 && cfg.N > 2)
      throw ConfigError("immanant checks at n = 3 require N <= 2");
  }
  if (wants_quantum || wants_imm) {
    if (cfg.N > 2)
      throw ConfigError("quantum checks require N <= 2" +
                        std::string(is_all ? " (use --suite classical or "
                                             "idempotents for larger N)"
                                           : ""));
    if (cfg.n > 3) throw ConfigError("quantum checks require n <= 3");
  }
  if (wants_idem && cfg.n > 3)
    throw ConfigError("idempotent checks require n <= 3");

  cfg.cache_dir = effective_cache_dir(cfg);
  VerifyOptions opts;
  opts.cache_dir = cfg.cache_dir;
  opts.jobs = cfg.jobs;
  opts.bound_override = cfg.bound;
  opts.force = cfg.force;

  SuiteReport report;
  report.config = cfg;

  bool need_r = is_rmx || wants_idem || wants_quantum || wants_imm;
  std::optional<RMatrix> R;
  if (need_r) {
    auto t0 = Clock::now();
    R = cfg.rmatrix == "dj" ? dj_rmatrix(cfg.N, f)
                            : load_rmatrix(cfg.rmatrix, f);
    if (R->N() != cfg.N)
      throw ConfigError("R-matrix file has N=" + std::to_string(R->N()) +
                        " but the run is configured with N=" +
                        std::to_string(cfg.N) + "; pass --N " +
                        std::to_string(R->N()));
    report.checks.push_back(validation_check(*R, cfg.rmatrix, ms_since(t0)));
  }
  bool r_ok = !need_r || R->valid();

  if (wants_classical) {
    report.checks.push_back(from_report(verify_cdet_capelli(cfg.N, f, opts)));
    report.checks.push_back(
        from_report(verify_capelli_classical(cfg.N, cfg.n, f, opts)));
    for (const Partition& lambda : partitions(cfg.n))
      report.checks.push_back(eq3_check(lambda, cfg.N, f, opts));
  }
  if (wants_idem && r_ok) {
    report.checks.push_back(
        idempotent_family_check(false, cfg.n, cfg.N, f, R));
    report.checks.push_back(idempotent_family_check(true, cfg.n, cfg.N, f, R));
  }
  if (wants_quantum && r_ok) {
    report.checks.push_back(from_report(verify_mrea_embedding(*R, opts)));
    report.checks.push_back(
        from_report(verify_capelli_quantum(*R, cfg.n, opts)));
    for (const Partition& lambda : partitions(cfg.n))
      report.checks.push_back(eq7_check(*R, lambda, opts));
  }
  if (wants_imm && r_ok)
    for (const Partition& lambda : partitions(cfg.n))
      report.checks.push_back(
          from_report(verify_immanant_properties(*R, lambda, opts)));

  report.exit_code = report.verified_count() == report.checks.size() ? 0 : 1;
  return report;
}

}  // namespace capq
