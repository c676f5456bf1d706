// cesaro_lab: command-line driver for the summability experiments.
//
//   cesaro_lab sweep-alpha --alphas 0.6,0.75,1 --ns 10,100,1000 [--tol 1e-10]
//   cesaro_lab growth --ns 10,100,1000,10000
//   cesaro_lab equality --n 20 --Ns 40,200,2000
//   cesaro_lab witness --n 100 --N 400 --out f.json
//   cesaro_lab equivalence --series inv-square --alpha 0.5 --ns 100,1000,10000
//   cesaro_lab report --format csv --out path
//
// Every experiment prints its report as CSV on stdout and stores it in the
// session file read by `report`. Exit status: 0 if every asserted row passes,
// 1 if some row fails, 2 on invalid input or a numerical error.
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cesaro/cesaro.hpp"

namespace {

std::uint64_t seed_from_env() {
  if (const char* env = std::getenv("SEED"); env != nullptr && *env != '\0') {
    return std::stoull(env, nullptr, 0);
  }
  return cesaro::kDefaultSeed;
}

cesaro::SummabilityProfile make_profile(const std::string& kind, std::size_t n, double alpha) {
  if (kind == "riesz") return cesaro::riesz_weights(n, alpha);
  if (kind == "cesaro") return cesaro::cesaro_weights(n, alpha);
  if (kind == "fejer") return cesaro::fejer_weights(n);
  if (kind == "partial-sum") return cesaro::partial_sum_weights(n);
  throw std::invalid_argument("unknown profile '" + kind + "'");
}

int finish(const cesaro::ExperimentReport& report, const std::filesystem::path& session) {
  cesaro::write_csv(std::cout, report);
  if (!session.empty()) cesaro::write_report(session, report, cesaro::ReportFormat::json);
  for (const auto& f : report.metadata.failures) std::cerr << "FAIL " << f << '\n';
  std::cerr << (report.metadata.passed ? "PASS" : "FAIL") << " (" << report.rows.size()
            << " rows)\n";
  return report.metadata.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cesaro/Riesz summability and weighted Dirichlet-space norm experiments"};
  app.require_subcommand(1);

  cesaro::ExperimentConfig cfg;
  cfg.seed = seed_from_env();
  std::filesystem::path session = "cesaro_session.json";
  app.add_option("--tol", cfg.tol, "Power-iteration residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", cfg.max_iterations, "Power-iteration iteration budget");
  app.add_option("--session", session, "Session file holding the last report");
  app.add_flag("--timing", cfg.record_timing, "Record wall_time_ms (makes output nondeterministic)");

  const std::vector<std::size_t> default_ns{10, 100, 1000, 10000};

  auto* sweep = app.add_subcommand("sweep-alpha", "Uniform bound alpha^2/(2alpha-1) for alpha > 1/2");
  std::vector<double> alphas{0.6, 0.75, 1.0};
  std::vector<std::size_t> sweep_ns = default_ns;
  sweep->add_option("--alphas", alphas)->delimiter(',');
  sweep->add_option("--ns", sweep_ns)->delimiter(',');
  sweep->add_option("--tol", cfg.tol)->check(CLI::PositiveNumber);

  auto* growth = app.add_subcommand("growth", "Logarithmic growth at alpha = 1/2");
  std::vector<std::size_t> growth_ns = default_ns;
  growth->add_option("--ns", growth_ns)->delimiter(',');

  auto* equality = app.add_subcommand("equality", "Restricted multiplier norms vs the operator norm");
  std::size_t eq_n = 20;
  std::vector<std::size_t> eq_Ns{40, 200, 2000};
  std::string eq_profile = "riesz";
  double eq_alpha = 0.5;
  equality->add_option("--n", eq_n);
  equality->add_option("--Ns", eq_Ns)->delimiter(',');
  equality->add_option("--profile", eq_profile)
      ->check(CLI::IsMember({"riesz", "cesaro", "fejer", "partial-sum"}));
  equality->add_option("--alpha", eq_alpha);

  auto* witness = app.add_subcommand("witness", "Maximizing polynomial for the restricted norm");
  std::size_t w_n = 100;
  std::size_t w_N = 400;
  std::filesystem::path w_out = "f.json";
  std::string w_profile = "riesz";
  double w_alpha = 0.5;
  witness->add_option("--n", w_n);
  witness->add_option("--N", w_N);
  witness->add_option("--out", w_out);
  witness->add_option("--profile", w_profile)
      ->check(CLI::IsMember({"riesz", "cesaro", "fejer", "partial-sum"}));
  witness->add_option("--alpha", w_alpha);

  auto* equivalence = app.add_subcommand("equivalence", "Cesaro vs Riesz means of a scalar series");
  std::string series_id = "inv-square";
  double eqv_alpha = 0.5;
  std::vector<std::size_t> eqv_ns = default_ns;
  equivalence->add_option("--series", series_id)
      ->check(CLI::IsMember({"inv-square", "alt-harmonic", "geometric"}));
  equivalence->add_option("--alpha", eqv_alpha);
  equivalence->add_option("--ns", eqv_ns)->delimiter(',');

  auto* report = app.add_subcommand("report", "Re-emit the session report");
  std::string format = "csv";
  std::filesystem::path report_out;
  report->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  report->add_option("--out", report_out, "Output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; usage errors exit 2 like runtime errors.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sweep) return finish(cesaro::cmd_sweep_alpha(alphas, sweep_ns, cfg), session);
    if (*growth) return finish(cesaro::cmd_growth(growth_ns, cfg), session);
    if (*equality) {
      return finish(cesaro::cmd_equality(make_profile(eq_profile, eq_n, eq_alpha), eq_Ns, cfg),
                    session);
    }
    if (*witness) {
      const auto result =
          cesaro::cmd_witness(make_profile(w_profile, w_n, w_alpha), w_N, w_out, cfg);
      std::cerr << "ratio " << cesaro::format_double(result.ratio) << " restricted norm "
                << cesaro::format_double(result.restricted.value) << " -> " << w_out.string()
                << '\n';
      return finish(result.report, session);
    }
    if (*equivalence) {
      return finish(cesaro::cmd_equivalence(cesaro::parse_scalar_series(series_id), eqv_alpha,
                                            eqv_ns, cfg),
                    session);
    }
    if (*report) {
      const auto stored = cesaro::read_report_json(session);
      const auto fmt = format == "csv" ? cesaro::ReportFormat::csv : cesaro::ReportFormat::json;
      if (report_out.empty()) {
        std::cout << (fmt == cesaro::ReportFormat::csv ? cesaro::to_csv(stored)
                                                       : cesaro::to_json_string(stored));
      } else {
        cesaro::write_report(report_out, stored, fmt);
      }
      return stored.metadata.passed ? 0 : 1;
    }
  } catch (const cesaro::convergence_error& e) {
    std::cerr << "error: " << e.what() << " (best estimate "
              << cesaro::format_double(e.best_estimate().value) << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
