#include "pgmlab/report.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "pgmlab/gelfand.hpp"
#include "pgmlab/group_spec.hpp"
#include "pgmlab/reps.hpp"
#include "pgmlab/states.hpp"

namespace pgmlab {

namespace {

constexpr double kProbSlack = 1e-9;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

double power_mean_spot_check(const Mixture& m, std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto n = static_cast<Eigen::Index>(m.op.dim());
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = {normal(rng), normal(rng)};
    v = m.factors.image_proj.matrix() * v;
    const double norm4 = std::pow(v.squaredNorm(), 2);
    const PowerMeanResult r = power_mean_gap(m.op, v);
    worst = std::min(worst, r.gap / norm4);
  }
  return worst;
}

}  // namespace

bool ExperimentReport::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

ExperimentReport run_experiment(const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.options = options;

  const GroupPtr g = parse_group_spec(options.group_spec, options.max_dim);
  const Subgroup h = parse_subgroup_spec(g, options.subgroup_spec);
  const DensityFamily fam = density_family(h, options.registers, options.max_dim);
  const Ensemble& ens = fam.ensemble;

  r.group_order = g->order();
  r.subgroup_order = h.order();
  r.conjugates = fam.conjugates.size();
  r.normalizer_order = normalizer(h).order();
  r.core_order = normal_core(h).order();
  r.dim = ens.dim();

  const Povm povm = options.uniform_guess ? uniform_guess(ens.size(), ens.dim()) : build_pgm(ens);
  r.p_success_measured = success_probability(povm, ens);
  r.completeness = completeness_residual(povm);

  const Prediction pred = predict(h, options.registers, options.max_dim);
  r.gelfand = pred.gelfand;
  r.core_bound = pred.core_bound;
  r.multiregister_bounds = pred.multiregister;
  r.planch_SH = pred.planch_SH;
  r.planch_source = pred.source;
  r.planch_irrep = pred.planch_irrep;
  if (options.registers == 1) r.p_success_predicted = pred.p_success_formula;

  const double tol = options.tol.value_or(default_optimality_tolerance(options.registers, r.dim));
  r.optimality = verify_optimality(povm, ens, tol);
  r.optimality_claimed = options.registers == 1 || r.gelfand;

  r.capacity = capacity_check(povm, ens, isotypic_projectors(*g, options.registers, options.max_dim));
  r.power_mean_min_gap = power_mean_spot_check(mixture(ens), options.seed, 32);

  auto check = [&r](std::string name, bool pass, double value, double limit) {
    r.checks.push_back({std::move(name), pass, value, limit});
  };
  check("completeness", r.completeness <= 1e-9, r.completeness, 1e-9);
  check("probability_range",
        r.p_success_measured >= -kProbSlack && r.p_success_measured <= 1.0 + kProbSlack,
        r.p_success_measured, 1.0);
  if (r.optimality_claimed) {
    const double worst = std::max({r.optimality.eq4_residual, r.optimality.eq5_residual,
                                   -r.optimality.eq6_witness});
    check("optimality", r.optimality.pass, worst, tol);
    check("capacity_bound", r.capacity.holds, r.capacity.mean_success, r.capacity.bound);
  }
  if (r.p_success_predicted) {
    const double gap = std::abs(r.p_success_measured - *r.p_success_predicted);
    check("success_matches_formula", gap <= 1e-9, gap, 1e-9);
    check("core_bound", r.p_success_measured <= r.core_bound + kProbSlack, r.p_success_measured,
          r.core_bound);
  }
  if (r.gelfand) {
    const MultiregisterBound& b = r.multiregister_bounds.back();
    check("multiregister_bound", r.p_success_measured <= b.planch_form + kProbSlack,
          r.p_success_measured, b.planch_form);
    check("bound_ordering", b.planch_form <= b.core_form + kProbSlack, b.planch_form,
          b.core_form);
  }
  if (!pred.sources_agree()) {
    check("planch_sources_agree", false, *pred.planch_rank, *pred.planch_irrep);
  }
  check("power_mean", r.power_mean_min_gap >= -1e-9, r.power_mean_min_gap, -1e-9);

  r.duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::json to_json(const ExperimentReport& r, bool include_duration) {
  using nlohmann::json;
  json bounds = json::array();
  for (const auto& b : r.multiregister_bounds) {
    bounds.push_back({{"k", b.registers},
                      {"planch_form", b.planch_form},
                      {"core_form", b.core_form},
                      {"proven", b.proven}});
  }
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"limit", c.limit}});
  }
  json j{
      {"schema_version", kReportSchemaVersion},
      {"group", r.options.group_spec},
      {"subgroup", r.options.subgroup_spec},
      {"k", r.options.registers},
      {"seed", r.options.seed},
      {"uniform_guess", r.options.uniform_guess},
      {"orders",
       {{"group", r.group_order},
        {"subgroup", r.subgroup_order},
        {"conjugates", r.conjugates},
        {"normalizer", r.normalizer_order},
        {"core", r.core_order}}},
      {"dim", r.dim},
      {"gelfand", r.gelfand},
      {"p_success_measured", r.p_success_measured},
      {"p_success_predicted", r.p_success_predicted ? json(*r.p_success_predicted) : json()},
      {"core_bound", r.core_bound},
      {"multiregister_bounds", bounds},
      {"planch_SH", {{"value", r.planch_SH}, {"source", to_string(r.planch_source)}}},
      {"optimality",
       {{"eq4_residual", r.optimality.eq4_residual},
        {"eq5_residual", r.optimality.eq5_residual},
        {"eq6_witness", r.optimality.eq6_witness},
        {"tol", r.optimality.tol},
        {"pass", r.optimality.pass},
        {"claimed", r.optimality_claimed}}},
      {"completeness_residual", r.completeness},
      {"capacity",
       {{"structured", r.capacity.structured},
        {"mean_success", r.capacity.mean_success},
        {"bound", r.capacity.bound},
        {"blocks", r.capacity.blocks.size()},
        {"holds", r.capacity.holds}}},
      {"power_mean_min_gap", r.power_mean_min_gap},
      {"checks", checks},
      {"pass", r.pass()},
  };
  if (r.planch_irrep) j["planch_SH"]["irrep_table"] = *r.planch_irrep;
  if (include_duration) j["duration_ms"] = r.duration_ms;
  return j;
}

nlohmann::json prediction_json(const std::string& group_spec, const std::string& subgroup_spec,
                               int registers, std::size_t max_dim) {
  using nlohmann::json;
  const GroupPtr g = parse_group_spec(group_spec, max_dim);
  const Subgroup h = parse_subgroup_spec(g, subgroup_spec);
  // With closed-form irreps the rank path is only a cross-check on small groups.
  const std::size_t rank_limit = has_irrep_table(*g) ? 256 : max_dim;
  const Prediction p = predict(h, registers, rank_limit);

  json bounds = json::array();
  for (const auto& b : p.multiregister) {
    bounds.push_back({{"k", b.registers},
                      {"planch_form", b.planch_form},
                      {"core_form", b.core_form},
                      {"proven", b.proven}});
  }
  json j{{"schema_version", kReportSchemaVersion},
         {"group", group_spec},
         {"subgroup", subgroup_spec},
         {"k", registers},
         {"gelfand", p.gelfand},
         {"p_success_predicted", p.p_success_formula},
         {"core_bound", p.core_bound},
         {"multiregister_bounds", bounds},
         {"planch_SH", {{"value", p.planch_SH}, {"source", to_string(p.source)}}},
         {"sources_agree", p.sources_agree()}};
  const FamilyTag& f = g->family();
  if (f.exponent == 1 && f.kind == Family::Dihedral && subgroup_spec == "reflection") {
    j["closed_form"] = dihedral_closed_form(f.param);
  } else if (f.exponent == 1 && f.kind == Family::Affine && subgroup_spec == "zp_star") {
    j["closed_form"] = affine_closed_form(f.param);
  }
  return j;
}

std::string csv_header() {
  return "group,subgroup,k,order,subgroup_order,conjugates,normalizer_order,core_order,dim,"
         "gelfand,p_measured,p_predicted,core_bound,planch_bound,core_power_bound,eq4,eq5,eq6,"
         "planch_SH,planch_source,pass";
}

std::string to_csv_row(const ExperimentReport& r) {
  const MultiregisterBound& b = r.multiregister_bounds.back();
  std::ostringstream os;
  os << csv_field(r.options.group_spec) << ',' << csv_field(r.options.subgroup_spec) << ',' << r.options.registers << ','
     << r.group_order << ',' << r.subgroup_order << ',' << r.conjugates << ','
     << r.normalizer_order << ',' << r.core_order << ',' << r.dim << ','
     << (r.gelfand ? "true" : "false") << ',' << fmt(r.p_success_measured) << ','
     << (r.p_success_predicted ? fmt(*r.p_success_predicted) : "") << ',' << fmt(r.core_bound)
     << ',' << fmt(b.planch_form) << ',' << fmt(b.core_form) << ','
     << fmt(r.optimality.eq4_residual) << ',' << fmt(r.optimality.eq5_residual) << ','
     << fmt(r.optimality.eq6_witness) << ',' << fmt(r.planch_SH) << ','
     << to_string(r.planch_source) << ',' << (r.pass() ? "true" : "false");
  return os.str();
}

}  // namespace pgmlab
