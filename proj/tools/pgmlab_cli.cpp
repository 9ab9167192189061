// pgmlab: hidden conjugate experiments from the command line.
//
//   pgmlab run --group dihedral:n=5 --subgroup reflection --k 1
//   pgmlab gelfand --group symmetric:n=4 --subgroup hyperoctahedral
//   pgmlab predict --group affine:p=7 --subgroup zp_star
//   pgmlab suite [--inject-uniform]
//   pgmlab group-info --group heisenberg:p=3 [--subgroup gens=[9]]
//
// Exit codes: 0 pass, 1 verification failure, 2 bad input.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "pgmlab/error.hpp"
#include "pgmlab/gelfand.hpp"
#include "pgmlab/group_spec.hpp"
#include "pgmlab/report.hpp"
#include "pgmlab/reps.hpp"
#include "pgmlab/suite.hpp"

namespace {

using nlohmann::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kBadInput = 2;

struct Args {
  std::string group;
  std::string subgroup;
  int k = 1;
  std::optional<double> tol;
  std::size_t max_dim = pgmlab::kDefaultMaxDim;
  std::string format = "json";
  std::uint64_t seed = 20240601;
  std::string out;
  bool inject_uniform = false;
};

void emit(const Args& a, const std::string& text) {
  if (a.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(a.out);
  if (!f) throw pgmlab::InputError("cannot open output file " + a.out);
  f << text;
}

int cmd_run(const Args& a) {
  pgmlab::RunOptions o;
  o.group_spec = a.group;
  o.subgroup_spec = a.subgroup;
  o.registers = a.k;
  o.tol = a.tol;
  o.max_dim = a.max_dim;
  o.seed = a.seed;
  const pgmlab::ExperimentReport r = pgmlab::run_experiment(o);
  if (a.format == "csv") {
    emit(a, pgmlab::csv_header() + "\n" + pgmlab::to_csv_row(r) + "\n");
  } else {
    emit(a, pgmlab::to_json(r).dump(2) + "\n");
  }
  return r.pass() ? kPass : kFail;
}

int cmd_gelfand(const Args& a) {
  const pgmlab::GroupPtr g = pgmlab::parse_group_spec(a.group, a.max_dim);
  const pgmlab::Subgroup h = pgmlab::parse_subgroup_spec(g, a.subgroup);
  const pgmlab::HeckeAlgebra alg = pgmlab::hecke_algebra(h);
  const bool decision = pgmlab::is_gelfand(alg);
  std::optional<bool> multiplicity;
  if (pgmlab::has_irrep_table(*g)) {
    multiplicity = pgmlab::gelfand_multiplicity_check(pgmlab::irrep_table(g), h);
  }
  const bool agree = !multiplicity || *multiplicity == decision;
  if (a.format == "csv") {
    std::ostringstream os;
    os << "group,subgroup,gelfand,double_cosets,multiplicity_check,agree\n"
       << a.group << ',' << '"' << a.subgroup << '"' << ',' << (decision ? "true" : "false")
       << ',' << alg.size() << ','
       << (multiplicity ? (*multiplicity ? "true" : "false") : "") << ','
       << (agree ? "true" : "false") << '\n';
    emit(a, os.str());
  } else {
    json j{{"schema_version", pgmlab::kReportSchemaVersion},
           {"group", a.group},
           {"subgroup", a.subgroup},
           {"gelfand", decision},
           {"double_cosets", alg.size()},
           {"multiplicity_check", multiplicity ? json(*multiplicity) : json()},
           {"agree", agree}};
    emit(a, j.dump(2) + "\n");
  }
  return agree ? kPass : kFail;
}

int cmd_predict(const Args& a) {
  const json j = pgmlab::prediction_json(a.group, a.subgroup, a.k, a.max_dim);
  if (a.format == "csv") {
    const json& last = j["multiregister_bounds"].back();
    std::ostringstream os;
    os.precision(17);
    os << "group,subgroup,k,gelfand,p_predicted,core_bound,planch_bound,core_power_bound,"
          "planch_SH,planch_source\n"
       << a.group << ',' << '"' << a.subgroup << '"' << ',' << a.k << ','
       << (j["gelfand"].get<bool>() ? "true" : "false") << ','
       << j["p_success_predicted"].get<double>() << ',' << j["core_bound"].get<double>() << ','
       << last["planch_form"].get<double>() << ',' << last["core_form"].get<double>() << ','
       << j["planch_SH"]["value"].get<double>() << ','
       << j["planch_SH"]["source"].get<std::string>() << '\n';
    emit(a, os.str());
  } else {
    emit(a, j.dump(2) + "\n");
  }
  return j["sources_agree"].get<bool>() ? kPass : kFail;
}

int cmd_suite(const Args& a) {
  pgmlab::SuiteOptions o;
  o.seed = a.seed;
  o.inject_uniform = a.inject_uniform;
  const std::vector<pgmlab::SuiteRow> rows = pgmlab::run_suite(o);
  bool all = true;
  std::ostringstream os;
  if (a.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      all = all && r.pass;
      arr.push_back({{"criterion", r.criterion},
                     {"fixture", r.fixture},
                     {"measured", r.measured},
                     {"expected", r.expected},
                     {"residual", r.residual},
                     {"limit", r.limit},
                     {"pass", r.pass},
                     {"note", r.note}});
    }
    os << json{{"schema_version", pgmlab::kReportSchemaVersion},
               {"seed", a.seed},
               {"inject_uniform", a.inject_uniform},
               {"rows", arr},
               {"pass", all}}
              .dump(2)
       << '\n';
  } else {
    os << pgmlab::suite_csv_header() << '\n';
    for (const auto& r : rows) {
      all = all && r.pass;
      os << pgmlab::to_csv_row(r) << '\n';
    }
  }
  emit(a, os.str());
  return all ? kPass : kFail;
}

int cmd_group_info(const Args& a) {
  const pgmlab::GroupPtr g = pgmlab::parse_group_spec(a.group, a.max_dim);
  const pgmlab::Partition classes = pgmlab::conjugacy_classes(*g);
  json j{{"schema_version", pgmlab::kReportSchemaVersion},
         {"group", a.group},
         {"family", g->family().to_string()},
         {"order", g->order()},
         {"conjugacy_classes", classes.size()},
         {"abelian", classes.size() == g->order()},
         {"irrep_table", pgmlab::has_irrep_table(*g)}};
  if (!a.subgroup.empty()) {
    const pgmlab::Subgroup h = pgmlab::parse_subgroup_spec(g, a.subgroup);
    json elems = json::array();
    for (pgmlab::Element x : h.elements()) elems.push_back(g->label(x));
    j["subgroup"] = {{"spec", a.subgroup},
                     {"order", h.order()},
                     {"elements", elems},
                     {"conjugates", pgmlab::conjugate_family(h).conjugates.size()},
                     {"normalizer", pgmlab::normalizer(h).order()},
                     {"core", pgmlab::normal_core(h).order()},
                     {"normal", pgmlab::is_normal(h)},
                     {"double_cosets", pgmlab::double_cosets(h).size()}};
  }
  emit(a, j.dump(2) + "\n");
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pretty good measurement experiments for the hidden conjugate problem"};
  app.require_subcommand(1);
  Args a;

  auto add_common = [&a](CLI::App* sub, bool needs_subgroup) {
    sub->add_option("--group", a.group, "group spec, e.g. dihedral:n=5")->required();
    auto* s = sub->add_option("--subgroup", a.subgroup, "subgroup spec, e.g. reflection");
    if (needs_subgroup) s->required();
    sub->add_option("--max-dim", a.max_dim, "dimension guard")->check(CLI::PositiveNumber);
    sub->add_option("--format", a.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", a.out, "write output to a file");
  };

  auto* run = app.add_subcommand("run", "build the PGM and verify it");
  add_common(run, true);
  run->add_option("--k", a.k, "number of registers")->check(CLI::Range(1, 8));
  run->add_option("--tol", a.tol, "optimality tolerance")->check(CLI::PositiveNumber);
  run->add_option("--seed", a.seed, "seed for randomized checks");

  auto* gelfand = app.add_subcommand("gelfand", "decide whether (G, H) is a Gel'fand pair");
  add_common(gelfand, true);

  auto* predict = app.add_subcommand("predict", "closed forms and bounds without the PGM");
  add_common(predict, true);
  predict->add_option("--k", a.k, "number of registers")->check(CLI::Range(1, 64));

  auto* suite = app.add_subcommand("suite", "run the acceptance fixture table");
  suite->add_option("--format", a.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  suite->add_option("--seed", a.seed, "seed for randomized checks");
  suite->add_option("--out", a.out, "write output to a file");
  suite->add_flag("--inject-uniform", a.inject_uniform,
                  "self-test: replace the PGM by uniform guessing");
  suite->callback([&a, suite] {
    if (suite->count("--format") == 0) a.format = "csv";
  });

  auto* info = app.add_subcommand("group-info", "orders, classes and subgroup data");
  add_common(info, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kBadInput;
  }

  try {
    if (*run) return cmd_run(a);
    if (*gelfand) return cmd_gelfand(a);
    if (*predict) return cmd_predict(a);
    if (*suite) return cmd_suite(a);
    if (*info) return cmd_group_info(a);
  } catch (const pgmlab::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const pgmlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kBadInput;
}
