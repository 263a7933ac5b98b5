#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "alexgeo/barycenter.hpp"
#include "alexgeo/model_space.hpp"
#include "alexgeo/semiconcave.hpp"

namespace alexgeo {

/// Recipe for a seeded random measure: `count` points drawn from the ball of
/// the given radius (center defaults to the canonical base point of the
/// space), with uniform or seeded random weights.
struct RandomMeasureSpec {
  int count = 5;
  std::optional<Eigen::VectorXd> center;
  double radius = 1.0;
  bool random_weights = false;
};

struct MeasureSpec {
  std::optional<DiscreteMeasure> fixed;
  std::optional<RandomMeasureSpec> random;
};

/// Catalog field reference: name, anchor or coefficients, and the claimed
/// geodesic convexity modulus. A missing anchor with `random_anchor` set
/// draws the anchor from the measure ball per trial.
struct FieldSpec {
  std::string name = "squared_distance";
  std::optional<Eigen::VectorXd> anchor;
  bool random_anchor = false;
  std::optional<Eigen::VectorXd> coefficients;
  double constant_value = 0.0;
  double alpha = 0.0;
};

struct ScenarioOptions {
  double solver_tol = 1e-10;
  int solver_max_iter = 10000;
  double solver_step = 1.0;
  int certify_budget = 64;
  int certify_depth = 4;
  int gradient_budget = 40000;
  int gradient_multistarts = 32;
  int audit_probes = 32;
  bool diagnostic = true;
  double gap_rel_tol = 1e-7;
};

struct Scenario {
  std::string name;
  ModelSpace space;
  MeasureSpec measure;
  FieldSpec field;
  ScenarioOptions options;
  std::uint64_t seed = 0;
  int trials = 1;
};

enum class Verdict { Holds, Violated, AlphaRefuted };

std::string to_string(Verdict v);

struct RefutationInfo {
  Eigen::VectorXd geodesic_start;
  Eigen::VectorXd geodesic_end;
  double t1, tmid, t2;
  double defect;
};

struct JensenReport {
  double f_at_barycenter = std::numeric_limits<double>::quiet_NaN();
  double integral_f = std::numeric_limits<double>::quiet_NaN();
  double variance_star = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double bound = std::numeric_limits<double>::quiet_NaN();  // integral_f - (alpha/2) * variance_star
  double gap = std::numeric_limits<double>::quiet_NaN();    // bound - f_at_barycenter
  bool alpha_certified = false;
  Verdict verdict = Verdict::AlphaRefuted;
  std::vector<double> per_point_checks;
  double first_order_audit_value = std::numeric_limits<double>::quiet_NaN();
  double solver_residual = std::numeric_limits<double>::quiet_NaN();
  int solver_iterations = 0;
  std::optional<RefutationInfo> refutation;
  Eigen::VectorXd barycenter_coords;
};

/// Materialized trial inputs: the measure and field a seed produces.
struct TrialInputs {
  DiscreteMeasure measure;
  ScalarField field;
  Point region_center;
  double region_radius;
};

TrialInputs materialize_trial(const Scenario& scenario, std::uint64_t trial_seed);

/// Full pipeline on materialized inputs: certify the convexity claim on a
/// ball covering the support, solve the barycenter, audit the first-order
/// condition, evaluate the bound and classify the verdict.
JensenReport jensen_check(const ModelSpace& space, const DiscreteMeasure& measure,
                          const ScalarField& field, const Point& region_center,
                          double region_radius, const ScenarioOptions& options,
                          std::uint64_t seed);

JensenReport jensen_check(const Scenario& scenario, std::uint64_t trial_seed);

struct LinearizationDiagnostic {
  std::vector<double> residuals;       // one per support point
  double weighted_residual_sum = 0.0;  // equals the gap up to the audit value
  TangentVector gradient_neg_f;
};

/// Per-support-point linearization residuals
///   r_i = f(x_i) + <log_{x*}(x_i), grad(-f)(x*)> - (alpha/2) d^2(x*, x_i) - f(x*).
/// `alpha_concave` is a concavity modulus for -f valid on the region the
/// gradient search explores.
LinearizationDiagnostic linearization_diagnostic(const ScalarField& f, double alpha,
                                                 double alpha_concave, const DiscreteMeasure& mu,
                                                 const Point& x_star,
                                                 const ScenarioOptions& options,
                                                 std::uint64_t seed);

/// Campaign record: one row per trial, assembled in canonical order.
struct TrialRecord {
  int scenario_index = 0;
  std::string scenario_name;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string space_kind;
  double kappa = 0.0;
  int dim = 0;
  std::string field_name;
  double alpha = 0.0;
  JensenReport report;
  std::optional<std::string> error;
};

struct CampaignResult {
  std::vector<TrialRecord> records;
  int violated = 0;
  int refuted = 0;
  int errors = 0;
  int exit_code = 0;  // 1 when any verdict is Violated, 2 on errors
};

std::vector<Scenario> parse_campaign_config(const std::string& json_text);

CampaignResult run_scenarios(const std::vector<Scenario>& scenarios, int jobs = 1);

std::string campaign_csv(const std::vector<TrialRecord>& records);
std::string campaign_json(const std::vector<TrialRecord>& records);

/// Reads the config, runs every scenario, writes the JSON report and the
/// optional CSV summary. Returns 0 when no verdict is Violated, 1 otherwise,
/// and 2 on configuration or IO errors (partial reports are still written).
int run_campaign(const std::string& config_path, const std::string& json_out_path,
                 const std::string& csv_out_path = "", int jobs = 1);

// --- JSON serialization of the external file formats ---

std::string space_to_json(const ModelSpace& space);
ModelSpace space_from_json(const std::string& json_text);

/// Measure file: {"space": {...}, "points": [[...], ...], "weights": [...]}.
DiscreteMeasure measure_from_json(const std::string& json_text);
std::string measure_to_json(const DiscreteMeasure& measure);

/// 17-significant-digit float formatting used by the CSV/JSON emitters.
std::string format_double(double value);

}  // namespace alexgeo
