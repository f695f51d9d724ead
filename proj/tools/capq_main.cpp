#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "capq/errors.hpp"
#include "capq/suite.hpp"

int main(int argc, char** argv) {
  capq::RunConfig cfg;
  CLI::App app{
      "capq: exact symbolic verifier for matrix Capelli identities over "
      "classical and quantum Weyl algebras"};
  app.add_option("--suite", cfg.suite,
                 "rmatrix|classical|idempotents|quantum|immanants|all")
      ->capture_default_str();
  app.add_option("--N", cfg.N, "matrix size (1..4)")->capture_default_str();
  app.add_option("--n", cfg.n, "tensor width (1..4)")->capture_default_str();
  app.add_option("--q", cfg.q,
                 "\"symbolic\", a rational like 2 or 3/2, or \"auto\" "
                 "(symbolic when n <= 2, q=2 otherwise)")
      ->capture_default_str();
  app.add_option("--rmatrix", cfg.rmatrix,
                 "\"dj\" or a path to an R-matrix file")
      ->capture_default_str();
  app.add_option("--bound", cfg.bound,
                 "degree-bound override (>= 2); 0 keeps per-check defaults")
      ->capture_default_str();
  app.add_option("--cache-dir", cfg.cache_dir,
                 "rewrite-system cache directory (default: $CAPQ_CACHE_DIR)");
  app.add_option("--report", cfg.report, "json|text")->capture_default_str();
  app.add_option("--out", cfg.out,
                 "write the report to this path instead of stdout");
  app.add_option("--jobs", cfg.jobs, "worker threads per check")
      ->capture_default_str();
  app.add_flag("--force", cfg.force, "lift the symbolic-mode size guards");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    capq::SuiteReport report = capq::run(cfg);
    std::string body = cfg.report == "json" ? report.render_json()
                                            : report.render_text();
    if (cfg.out.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(cfg.out);
      if (!out) {
        std::cerr << "capq: cannot write report to " << cfg.out << "\n";
        return 2;
      }
      out << body;
    }
    return report.exit_code;
  } catch (const capq::ConfigError& e) {
    std::cerr << "capq: configuration error: " << e.what() << "\n";
    return 2;
  } catch (const capq::Error& e) {
    std::cerr << "capq: error: " << e.what() << "\n";
    return 2;
  }
}
