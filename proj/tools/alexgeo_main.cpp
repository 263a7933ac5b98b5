#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "alexgeo/comparison.hpp"
#include "alexgeo/jensen.hpp"

namespace {

using nlohmann::json;

int run_jensen(const std::string& config, const std::string& out, const std::string& csv,
               int jobs) {
  const int code = alexgeo::run_campaign(config, out, csv, jobs);
  if (code == 0) {
    std::cout << "jensen: all verdicts hold; report written to " << out << "\n";
  } else if (code == 1) {
    std::cout << "jensen: violated verdicts found; see " << out << "\n";
  }
  return code;
}

int run_barycenter(const std::string& measure_path, const std::string& out, double tol) {
  std::ifstream in(measure_path);
  if (!in) {
    std::cerr << "barycenter: cannot open measure file: " << measure_path << "\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const alexgeo::DiscreteMeasure measure = alexgeo::measure_from_json(buffer.str());

  alexgeo::BarycenterOptions options;
  options.tol = tol;
  const alexgeo::BarycenterResult result = alexgeo::solve_barycenter(measure, options);

  json coords = json::array();
  for (Eigen::Index i = 0; i < result.point.coords().size(); ++i) {
    coords.push_back(result.point.coords()(i));
  }
  const json report{{"point", coords},
                    {"variance", result.variance_at_point},
                    {"iterations", result.iterations},
                    {"residual", result.residual},
                    {"first_order_report", result.first_order_report}};
  std::ofstream os(out, std::ios::binary);
  if (!os) {
    std::cerr << "barycenter: cannot write " << out << "\n";
    return 2;
  }
  os << report.dump(2) << "\n";
  std::cout << "barycenter: converged in " << result.iterations << " iterations, residual "
            << alexgeo::format_double(result.residual) << "\n";
  return 0;
}

int run_curv_audit(const std::string& matrix_path, double kappa_min, double kappa_max, long budget,
                   std::uint64_t seed, const std::string& out) {
  const Eigen::MatrixXd matrix = alexgeo::load_distance_matrix_csv(matrix_path);
  const alexgeo::ModelSpace space = alexgeo::ModelSpace::finite_metric(matrix);

  alexgeo::CurvatureAuditOptions options;
  options.budget = budget;
  options.seed = seed;
  const alexgeo::CurvatureAuditReport report =
      alexgeo::estimate_curvature_lower_bound(space.dmatrix(), kappa_min, kappa_max, options);

  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back(json{{"quadruple", v.quadruple},
                              {"angle_sum", v.angle_sum},
                              {"excess", v.excess}});
  }
  const json j{{"kappa_tested", report.kappa_tested},
               {"quadruples_checked", report.quadruples_checked},
               {"violations", violations},
               {"kappa_max_estimate", report.kappa_max_estimate},
               {"inconclusive", report.inconclusive},
               {"kappa_min", kappa_min},
               {"kappa_max", kappa_max}};
  std::ofstream os(out, std::ios::binary);
  if (!os) {
    std::cerr << "curv-audit: cannot write " << out << "\n";
    return 2;
  }
  os << j.dump(2) << "\n";
  std::cout << "curv-audit: kappa_max_estimate = " << alexgeo::format_double(report.kappa_max_estimate)
            << " (" << report.quadruples_checked << " quadruples checked)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesic geometry toolkit: barycenters, curvature audits and Jensen certification"};
  app.require_subcommand(1);

  auto* jensen = app.add_subcommand("jensen", "Run a Jensen certification campaign");
  std::string config_path, report_path, csv_path;
  int jobs = 1;
  jensen->add_option("--config", config_path, "Scenario config (JSON)")->required();
  jensen->add_option("--out", report_path, "Report output path (JSON)")->required();
  jensen->add_option("--csv", csv_path, "Summary output path (CSV)");
  jensen->add_option("--jobs", jobs, "Concurrent trial workers")->check(CLI::PositiveNumber);

  auto* barycenter = app.add_subcommand("barycenter", "Solve the barycenter of a discrete measure");
  std::string measure_path, barycenter_out;
  double tol = 1e-10;
  barycenter->add_option("--measure", measure_path, "Measure file (JSON)")->required();
  barycenter->add_option("--tol", tol, "Residual tolerance");
  barycenter->add_option("--out", barycenter_out, "Result output path (JSON)")->required();

  auto* audit = app.add_subcommand("curv-audit", "Estimate a curvature lower bound from distances");
  std::string matrix_path, audit_out;
  double kappa_min = -1.0, kappa_max = 1.0;
  long budget = 50000;
  std::uint64_t seed = 0;
  audit->add_option("--matrix", matrix_path, "Distance matrix (CSV, no header)")->required();
  audit->add_option("--kappa-min", kappa_min, "Lower end of the bisection range")->required();
  audit->add_option("--kappa-max", kappa_max, "Upper end of the bisection range")->required();
  audit->add_option("--budget", budget, "Quadruples per candidate (when not exhaustive)");
  audit->add_option("--seed", seed, "Seed for the quadruple sample");
  audit->add_option("--out", audit_out, "Report output path (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (jensen->parsed()) return run_jensen(config_path, report_path, csv_path, jobs);
    if (barycenter->parsed()) return run_barycenter(measure_path, barycenter_out, tol);
    if (audit->parsed()) {
      return run_curv_audit(matrix_path, kappa_min, kappa_max, budget, seed, audit_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "alexgeo: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
