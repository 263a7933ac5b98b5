#include "alexgeo/jensen.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "alexgeo/detail/numerics.hpp"
#include "alexgeo/sampling.hpp"
#include "alexgeo/tangent_cone.hpp"

namespace alexgeo {

using nlohmann::json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Violated: return "Violated";
    case Verdict::AlphaRefuted: return "AlphaRefuted";
  }
  return "unknown";
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

Eigen::VectorXd vector_from_json(const json& j) {
  if (!j.is_array()) throw std::runtime_error("config: expected an array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

/// Rescales near-manifold coordinates exactly onto the sphere / hyperboloid;
/// file inputs are allowed a loose 1e-6 drift.
Point project_to_manifold(const ModelSpace& space, Eigen::VectorXd coords) {
  switch (space.kind()) {
    case SpaceKind::Euclidean:
    case SpaceKind::FiniteMetric:
      return Point(space, std::move(coords));
    case SpaceKind::Sphere: {
      const double target = 1.0 / space.kappa();
      const double norm_sq = coords.squaredNorm();
      if (!(norm_sq > 0.0) || std::abs(norm_sq - target) > 1e-6 * std::max(1.0, target)) {
        throw std::runtime_error("point: coordinates too far from the sphere |x|^2 = 1/kappa");
      }
      coords *= std::sqrt(target / norm_sq);
      return Point(space, std::move(coords));
    }
    case SpaceKind::Hyperbolic: {
      const double target = 1.0 / space.kappa();
      const double q = minkowski_dot(coords, coords);
      if (!(q < 0.0) || std::abs(q - target) > 1e-6 * std::max(1.0, -target) || !(coords(0) > 0.0)) {
        throw std::runtime_error("point: coordinates too far from the hyperboloid <x,x> = 1/kappa");
      }
      coords *= std::sqrt(target / q);
      return Point(space, std::move(coords));
    }
  }
  throw std::logic_error("project_to_manifold: unreachable");
}

ModelSpace space_from(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "euclidean") return ModelSpace::euclidean(j.at("dim").get<int>());
  if (kind == "sphere") return ModelSpace::sphere(j.at("dim").get<int>(), j.value("kappa", 1.0));
  if (kind == "hyperbolic") {
    return ModelSpace::hyperbolic(j.at("dim").get<int>(), j.value("kappa", -1.0));
  }
  throw std::runtime_error("config: unknown space kind '" + kind + "'");
}

json space_to(const ModelSpace& space) {
  return json{{"kind", to_string(space.kind())}, {"dim", space.dim()}, {"kappa", space.kappa()}};
}

double default_alpha_claim(const std::string& name, const ModelSpace& space) {
  if (name == "squared_distance") return space.kind() == SpaceKind::Sphere ? 0.0 : 2.0;
  if (name == "neg_squared_distance") return -2.0;
  return 0.0;
}

FieldSpec field_from(const json& j, const ModelSpace& space) {
  FieldSpec spec;
  spec.name = j.value("name", std::string("squared_distance"));
  if (j.contains("anchor")) {
    if (j["anchor"].is_string() && j["anchor"].get<std::string>() == "random") {
      spec.random_anchor = true;
    } else {
      spec.anchor = vector_from_json(j["anchor"]);
    }
  }
  if (j.contains("coefficients")) spec.coefficients = vector_from_json(j["coefficients"]);
  spec.constant_value = j.value("value", 0.0);
  spec.alpha = j.contains("alpha") ? j["alpha"].get<double>()
                                   : default_alpha_claim(spec.name, space);
  return spec;
}

ScenarioOptions options_from(const json& j) {
  ScenarioOptions opts;
  opts.solver_tol = j.value("solver_tol", opts.solver_tol);
  opts.solver_max_iter = j.value("solver_max_iter", opts.solver_max_iter);
  opts.solver_step = j.value("solver_step", opts.solver_step);
  opts.certify_budget = j.value("certify_budget", opts.certify_budget);
  opts.certify_depth = j.value("certify_depth", opts.certify_depth);
  opts.gradient_budget = j.value("gradient_budget", opts.gradient_budget);
  opts.gradient_multistarts = j.value("gradient_multistarts", opts.gradient_multistarts);
  opts.audit_probes = j.value("audit_probes", opts.audit_probes);
  opts.diagnostic = j.value("diagnostic", opts.diagnostic);
  opts.gap_rel_tol = j.value("gap_rel_tol", opts.gap_rel_tol);
  return opts;
}

Scenario scenario_from(const json& j, int index) {
  const ModelSpace space = space_from(j.at("space"));
  Scenario s{.name = j.value("name", "scenario-" + std::to_string(index)),
             .space = space,
             .measure = {},
             .field = field_from(j.at("field"), space),
             .options = j.contains("options") ? options_from(j["options"]) : ScenarioOptions{},
             .seed = j.value("seed", static_cast<std::uint64_t>(0)),
             .trials = j.value("trials", 1)};
  const json& m = j.at("measure");
  if (m.contains("random")) {
    const json& r = m["random"];
    RandomMeasureSpec spec;
    spec.count = r.value("count", 5);
    spec.radius = r.value("radius", 1.0);
    if (r.contains("center")) spec.center = vector_from_json(r["center"]);
    spec.random_weights = r.value("weights", std::string("uniform")) == "random";
    if (s.space.kind() == SpaceKind::Sphere && !(spec.radius <= 0.25 * s.space.diameter_bound())) {
      throw std::runtime_error("config: sphere measure radius must stay within the safe zone");
    }
    s.measure.random = spec;
  } else {
    std::vector<Point> points;
    for (const auto& row : m.at("points")) points.push_back(project_to_manifold(s.space, vector_from_json(row)));
    std::vector<double> weights;
    if (m.contains("weights")) {
      weights = m["weights"].get<std::vector<double>>();
      s.measure.fixed = DiscreteMeasure(std::move(points), std::move(weights));
    } else {
      s.measure.fixed = DiscreteMeasure::uniform(std::move(points));
    }
  }
  if (s.trials < 1) throw std::runtime_error("config: trials must be positive");
  return s;
}

ScalarField build_field(const FieldSpec& spec, const ModelSpace& space,
                        const std::optional<Point>& random_anchor) {
  if (spec.name == "squared_distance" || spec.name == "neg_squared_distance" ||
      spec.name == "distance") {
    Point anchor = random_anchor
                       ? *random_anchor
                       : project_to_manifold(space, spec.anchor ? *spec.anchor
                                                                : canonical_base_point(space).coords());
    if (spec.name == "squared_distance") return ScalarField::squared_distance_to(anchor, spec.alpha);
    if (spec.name == "neg_squared_distance") {
      return ScalarField::neg_squared_distance_to(anchor, spec.alpha);
    }
    return ScalarField::distance_to(anchor, spec.alpha);
  }
  if (spec.name == "linear") {
    if (!spec.coefficients) throw std::runtime_error("config: linear field needs coefficients");
    return ScalarField::linear(space, *spec.coefficients, spec.alpha);
  }
  if (spec.name == "constant") return ScalarField::constant(spec.constant_value, spec.alpha);
  throw std::runtime_error("config: unknown field '" + spec.name + "'");
}

/// Concavity modulus for -f, valid on the region the gradient search and the
/// per-point linearization explore (all within `reach` of the field anchor).
double diagnostic_concavity_modulus(const ScalarField& f, const ModelSpace& space, double reach) {
  const std::string& name = f.name();
  if (name == "linear" || name == "constant") return 0.0;
  if (name == "squared_distance") {  // -f = -d^2
    if (space.kind() != SpaceKind::Sphere) return -2.0;
    const double theta = reach * std::sqrt(space.kappa());
    if (theta >= std::numbers::pi - 0.05) {
      throw std::runtime_error("diagnostic: region reaches the anchor antipode");
    }
    const double transverse = -2.0 * theta * std::cos(theta) / std::sin(theta);
    const double bound = std::max(-2.0, transverse);
    return bound + 0.05 * (1.0 + std::abs(bound));
  }
  if (name == "neg_squared_distance") {  // -f = d^2
    if (space.kind() != SpaceKind::Hyperbolic) return 2.0;
    const double theta = reach * std::sqrt(-space.kappa());
    const double transverse = theta < 1e-8 ? 2.0 : 2.0 * theta * std::cosh(theta) / std::sinh(theta);
    return transverse + 0.05 * (1.0 + transverse);
  }
  if (name == "distance") {  // -f = -d
    if (space.kind() != SpaceKind::Sphere) return 0.0;
    const double theta = reach * std::sqrt(space.kappa());
    if (theta >= std::numbers::pi - 0.05) {
      throw std::runtime_error("diagnostic: region reaches the anchor antipode");
    }
    const double sk = std::sqrt(space.kappa());
    const double bound = std::max(0.0, -sk * std::cos(theta) / std::sin(theta));
    return bound + 0.05 * (1.0 + bound);
  }
  throw std::runtime_error("diagnostic: no concavity modulus known for field '" + name + "'");
}

}  // namespace

TrialInputs materialize_trial(const Scenario& scenario, std::uint64_t trial_seed) {
  Rng rng = make_rng(trial_seed);
  if (scenario.measure.fixed) {
    const DiscreteMeasure& mu = *scenario.measure.fixed;
    // Region: the least-variance support point covers the support within the
    // largest distance to it.
    std::size_t best = 0;
    double best_v = variance(mu, mu.support()[0]);
    for (std::size_t i = 1; i < mu.size(); ++i) {
      const double v = variance(mu, mu.support()[i]);
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    const Point center = mu.support()[best];
    double radius = 0.0;
    for (const Point& p : mu.support()) radius = std::max(radius, distance(center, p));
    std::optional<Point> anchor;
    if (scenario.field.random_anchor) {
      anchor = random_point_in_ball(center, std::max(radius, 0.1), rng);
    }
    return TrialInputs{mu, build_field(scenario.field, scenario.space, anchor), center,
                       std::max(radius, 0.05)};
  }

  if (!scenario.measure.random) {
    throw std::runtime_error("scenario: measure spec is empty");
  }
  const RandomMeasureSpec& spec = *scenario.measure.random;
  const Point center = spec.center
                           ? project_to_manifold(scenario.space, *spec.center)
                           : canonical_base_point(scenario.space);
  std::vector<Point> points;
  points.reserve(spec.count);
  for (int i = 0; i < spec.count; ++i) points.push_back(random_point_in_ball(center, spec.radius, rng));
  std::vector<double> weights;
  if (spec.random_weights) {
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    double total = 0.0;
    for (int i = 0; i < spec.count; ++i) {
      weights.push_back(unif(rng));
      total += weights.back();
    }
    double partial = 0.0;
    for (int i = 0; i + 1 < spec.count; ++i) {
      weights[i] /= total;
      partial += weights[i];
    }
    weights[spec.count - 1] = 1.0 - partial;
  }
  DiscreteMeasure mu = weights.empty() ? DiscreteMeasure::uniform(points)
                                       : DiscreteMeasure(points, weights);
  std::optional<Point> anchor;
  if (scenario.field.random_anchor) anchor = random_point_in_ball(center, spec.radius, rng);
  double radius = spec.radius;
  for (const Point& p : mu.support()) radius = std::max(radius, distance(center, p));
  return TrialInputs{std::move(mu), build_field(scenario.field, scenario.space, anchor), center,
                     radius};
}

JensenReport jensen_check(const ModelSpace& space, const DiscreteMeasure& measure,
                          const ScalarField& field, const Point& region_center,
                          double region_radius, const ScenarioOptions& options,
                          std::uint64_t seed) {
  JensenReport report;
  report.alpha = field.alpha_claim();

  CertifyOptions certify_options{options.certify_budget, options.certify_depth,
                                 detail::mix_seed(seed, 1)};
  double certify_radius = region_radius * 1.05 + 1e-6;
  if (space.kind() == SpaceKind::Sphere) {
    certify_radius = std::min(certify_radius, 0.45 * space.diameter_bound());
  }
  const CertifyResult cert = certify_alpha(field, region_center, certify_radius, report.alpha,
                                           CertifyMode::Convex, certify_options);
  report.alpha_certified = cert.certified;
  if (!cert.certified) {
    report.verdict = Verdict::AlphaRefuted;
    if (cert.witness) {
      report.refutation = RefutationInfo{cert.witness->geodesic_start.coords(),
                                         cert.witness->geodesic_end.coords(), cert.witness->t1,
                                         cert.witness->tmid, cert.witness->t2,
                                         cert.witness->defect};
    }
    return report;
  }

  BarycenterOptions solver_options;
  solver_options.step = options.solver_step;
  solver_options.tol = options.solver_tol;
  solver_options.max_iter = options.solver_max_iter;
  solver_options.audit_probes = options.audit_probes;
  solver_options.audit_seed = detail::mix_seed(seed, 2);
  const BarycenterResult bary = solve_barycenter(measure, solver_options);

  report.f_at_barycenter = field(bary.point);
  double integral = 0.0;
  for (std::size_t i = 0; i < measure.size(); ++i) {
    integral += measure.weights()[i] * field(measure.support()[i]);
  }
  report.integral_f = integral;
  report.variance_star = bary.variance_at_point;
  report.bound = report.integral_f - 0.5 * report.alpha * report.variance_star;
  report.gap = report.bound - report.f_at_barycenter;
  report.first_order_audit_value = bary.first_order_report;
  report.solver_residual = bary.residual;
  report.solver_iterations = bary.iterations;
  report.barycenter_coords = bary.point.coords();
  report.verdict = report.gap >= -options.gap_rel_tol * (1.0 + std::abs(report.bound))
                       ? Verdict::Holds
                       : Verdict::Violated;

  if (options.diagnostic) {
    // The only region where the concavity modulus matters is the one the
    // gradient search walks: within the search tau of the barycenter.
    double reach = gradient_search_tau(space) + 0.1;
    if (field.anchor()) {
      reach += distance(bary.point, *field.anchor());
    }
    const double alpha_concave = diagnostic_concavity_modulus(field, space, reach);
    const LinearizationDiagnostic diag = linearization_diagnostic(
        field, report.alpha, alpha_concave, measure, bary.point, options, detail::mix_seed(seed, 3));
    report.per_point_checks = diag.residuals;
  }
  return report;
}

JensenReport jensen_check(const Scenario& scenario, std::uint64_t trial_seed) {
  const TrialInputs inputs = materialize_trial(scenario, trial_seed);
  return jensen_check(scenario.space, inputs.measure, inputs.field, inputs.region_center,
                      inputs.region_radius, scenario.options, trial_seed);
}

LinearizationDiagnostic linearization_diagnostic(const ScalarField& f, double alpha,
                                                 double alpha_concave, const DiscreteMeasure& mu,
                                                 const Point& x_star,
                                                 const ScenarioOptions& options,
                                                 std::uint64_t seed) {
  const ScalarField neg_f = f.negated();
  GradientOptions gopts{options.gradient_multistarts, options.gradient_budget, seed};
  const TangentVector grad = gradient(neg_f, x_star, alpha_concave, gopts);

  const double f_star = f(x_star);
  LinearizationDiagnostic diag{{}, 0.0, grad};
  diag.residuals.reserve(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const Point& xi = mu.support()[i];
    const double d = distance(x_star, xi);
    const double r = f(xi) + inner_product(log_map(x_star, xi), grad) - 0.5 * alpha * d * d - f_star;
    diag.residuals.push_back(r);
    diag.weighted_residual_sum += mu.weights()[i] * r;
  }
  return diag;
}

std::vector<Scenario> parse_campaign_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config: JSON parse error: ") + e.what());
  }
  if (!j.contains("scenarios") || !j["scenarios"].is_array() || j["scenarios"].empty()) {
    throw std::runtime_error("config: top-level 'scenarios' array is required");
  }
  std::vector<Scenario> scenarios;
  int index = 0;
  for (const auto& sj : j["scenarios"]) scenarios.push_back(scenario_from(sj, index++));

  if (const char* env = std::getenv("ALEXGEO_SEED")) {
    const std::uint64_t override_seed = std::strtoull(env, nullptr, 10);
    for (Scenario& s : scenarios) s.seed = override_seed;
  }
  return scenarios;
}

CampaignResult run_scenarios(const std::vector<Scenario>& scenarios, int jobs) {
  std::vector<TrialRecord> records;
  std::vector<std::pair<int, int>> tasks;  // (scenario index, trial)
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    for (int t = 0; t < scenarios[s].trials; ++t) tasks.emplace_back(static_cast<int>(s), t);
  }
  records.resize(tasks.size());

  auto run_task = [&](std::size_t task_index) {
    const auto [s, t] = tasks[task_index];
    const Scenario& scenario = scenarios[s];
    TrialRecord& record = records[task_index];
    record.scenario_index = s;
    record.scenario_name = scenario.name;
    record.trial = t;
    record.seed = detail::mix_seed(scenario.seed, static_cast<std::uint64_t>(t));
    record.space_kind = to_string(scenario.space.kind());
    record.kappa = scenario.space.kappa();
    record.dim = scenario.space.dim();
    record.field_name = scenario.field.name;
    record.alpha = scenario.field.alpha;
    try {
      record.report = jensen_check(scenario, record.seed);
      record.alpha = record.report.alpha;
    } catch (const std::exception& e) {
      record.error = e.what();
    }
  };

  if (jobs <= 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) break;
        run_task(i);
      }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(jobs, static_cast<int>(tasks.size()));
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CampaignResult result;
  result.records = std::move(records);
  for (const TrialRecord& r : result.records) {
    if (r.error) {
      ++result.errors;
    } else if (r.report.verdict == Verdict::Violated) {
      ++result.violated;
    } else if (r.report.verdict == Verdict::AlphaRefuted) {
      ++result.refuted;
    }
  }
  result.exit_code = result.errors > 0 ? 2 : (result.violated > 0 ? 1 : 0);
  return result;
}

namespace {

std::string csv_escape(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string campaign_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "scenario,trial,seed,space,kappa,dim,field,alpha,f_star,integral_f,variance_star,gap,verdict\r\n";
  for (const TrialRecord& r : records) {
    out << csv_escape(r.scenario_name) << ',' << r.trial << ',' << r.seed << ','
        << csv_escape(r.space_kind) << ',' << format_double(r.kappa) << ',' << r.dim << ','
        << csv_escape(r.field_name) << ',' << format_double(r.alpha) << ','
        << format_double(r.report.f_at_barycenter) << ',' << format_double(r.report.integral_f)
        << ',' << format_double(r.report.variance_star) << ',' << format_double(r.report.gap)
        << ',' << (r.error ? std::string("Error") : to_string(r.report.verdict)) << "\r\n";
  }
  return out.str();
}

std::string campaign_json(const std::vector<TrialRecord>& records) {
  json out = json::array();
  for (const TrialRecord& r : records) {
    json entry{{"scenario", r.scenario_name},
               {"scenario_index", r.scenario_index},
               {"trial", r.trial},
               {"seed", r.seed},
               {"space", {{"kind", r.space_kind}, {"dim", r.dim}, {"kappa", r.kappa}}},
               {"field", {{"name", r.field_name}, {"alpha", r.alpha}}}};
    if (r.error) {
      entry["error"] = *r.error;
    } else {
      const JensenReport& rep = r.report;
      json report{{"f_at_barycenter", rep.f_at_barycenter},
                  {"integral_f", rep.integral_f},
                  {"variance_star", rep.variance_star},
                  {"alpha", rep.alpha},
                  {"bound", rep.bound},
                  {"gap", rep.gap},
                  {"alpha_certified", rep.alpha_certified},
                  {"verdict", to_string(rep.verdict)},
                  {"first_order_audit", rep.first_order_audit_value},
                  {"solver_residual", rep.solver_residual},
                  {"solver_iterations", rep.solver_iterations},
                  {"per_point_checks", rep.per_point_checks}};
      if (rep.barycenter_coords.size() > 0) {
        report["barycenter"] = vector_to_json(rep.barycenter_coords);
      }
      if (rep.refutation) {
        report["refutation"] = json{{"geodesic_start", vector_to_json(rep.refutation->geodesic_start)},
                                    {"geodesic_end", vector_to_json(rep.refutation->geodesic_end)},
                                    {"t1", rep.refutation->t1},
                                    {"tmid", rep.refutation->tmid},
                                    {"t2", rep.refutation->t2},
                                    {"defect", rep.refutation->defect}};
      }
      entry["report"] = std::move(report);
    }
    out.push_back(std::move(entry));
  }
  return out.dump(2) + "\n";
}

int run_campaign(const std::string& config_path, const std::string& json_out_path,
                 const std::string& csv_out_path, int jobs) {
  std::vector<Scenario> scenarios;
  try {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config file: " + config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    scenarios = parse_campaign_config(buffer.str());
  } catch (const std::exception& e) {
    std::cerr << "alexgeo jensen: " << e.what() << "\n";
    return 2;
  }

  const CampaignResult result = run_scenarios(scenarios, jobs);

  try {
    std::ofstream out(json_out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report file: " + json_out_path);
    out << campaign_json(result.records);
    if (!csv_out_path.empty()) {
      std::ofstream csv(csv_out_path, std::ios::binary);
      if (!csv) throw std::runtime_error("cannot write summary file: " + csv_out_path);
      csv << campaign_csv(result.records);
    }
  } catch (const std::exception& e) {
    std::cerr << "alexgeo jensen: " << e.what() << "\n";
    return 2;
  }

  for (const TrialRecord& r : result.records) {
    if (r.error) {
      std::cerr << "alexgeo jensen: trial error in '" << r.scenario_name << "' trial " << r.trial
                << ": " << *r.error << "\n";
    }
  }
  return result.exit_code;
}

std::string space_to_json(const ModelSpace& space) { return space_to(space).dump(); }

ModelSpace space_from_json(const std::string& json_text) {
  return space_from(json::parse(json_text));
}

DiscreteMeasure measure_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("measure: JSON parse error: ") + e.what());
  }
  const ModelSpace space = space_from(j.at("space"));
  std::vector<Point> points;
  for (const auto& row : j.at("points")) {
    points.push_back(project_to_manifold(space, vector_from_json(row)));
  }
  if (j.contains("weights")) {
    return DiscreteMeasure(std::move(points), j["weights"].get<std::vector<double>>());
  }
  return DiscreteMeasure::uniform(std::move(points));
}

std::string measure_to_json(const DiscreteMeasure& measure) {
  json points = json::array();
  for (const Point& p : measure.support()) points.push_back(vector_to_json(p.coords()));
  json j{{"space", space_to(measure.space())}, {"points", points}, {"weights", measure.weights()}};
  return j.dump(2) + "\n";
}

}  // namespace alexgeo
