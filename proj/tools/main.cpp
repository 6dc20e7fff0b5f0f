// Copyright 2026 the exclusion toolkit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes, so shell pipelines can branch on
// verdicts without parsing JSON:
//   0  success / "excludable"
//   1  usage or validation error
//   2  numerical failure (solver status not optimal, restarts not converged)
//   3  "not excludable" / validation verdict negative

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "exclusion/config.hpp"
#include "exclusion/json_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitNegative = 3;

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw exclusion::ValidationError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw exclusion::ValidationError("cannot write file: " + path.string());
  out << text;
}

void emit(const exclusion::Json& j) { std::cout << j.dump(2) << "\n"; }

struct CliState {
  exclusion::CliConfig config;
  std::string config_path;

  void load() {
    if (!config_path.empty()) config = exclusion::load_cli_config(read_file(config_path));
  }
};

int run_cfs(CliState& state, const std::string& instance_path,
            const std::vector<double>& overlaps) {
  state.load();
  exclusion::CfsReport report;
  if (!overlaps.empty()) {
    if (overlaps.size() != 3) {
      throw exclusion::ValidationError("cfs: --overlaps needs exactly three values");
    }
    report = exclusion::cfs_report_from_overlaps(overlaps[0], overlaps[1], overlaps[2],
                                                 state.config.eps_zero);
  } else if (!instance_path.empty()) {
    const exclusion::Json j = exclusion::parse_json_text(read_file(instance_path), "instance");
    if (j.is_object() && j.contains("overlaps")) {
      const auto& o = j["overlaps"];
      if (!o.is_array() || o.size() != 3) {
        throw exclusion::ValidationError("cfs: \"overlaps\" must be [j1, j2, j3]");
      }
      report = exclusion::cfs_report_from_overlaps(o[0].get<double>(), o[1].get<double>(),
                                                   o[2].get<double>(), state.config.eps_zero);
    } else {
      const exclusion::ExclusionInstance instance = exclusion::instance_from_json(j);
      if (!instance.has_pure_states() || instance.n_states() != 3) {
        throw exclusion::ValidationError("cfs: instance must contain exactly three pure states");
      }
      const auto& s = instance.pure_states();
      report = exclusion::cfs_excludable(s[0], s[1], s[2], state.config.eps_zero);
    }
  } else {
    throw exclusion::ValidationError("cfs: provide an instance file or --overlaps");
  }
  emit(exclusion::cfs_report_to_json(report));
  return report.excludable ? kExitOk : kExitNegative;
}

int run_sdp(CliState& state, const std::string& instance_path) {
  state.load();
  const exclusion::Json j = exclusion::parse_json_text(read_file(instance_path), "instance");
  const exclusion::ExclusionInstance instance = exclusion::instance_from_json(j);
  exclusion::SolverConfig solver;
  solver.gap_tol = state.config.gap_tol;
  const exclusion::SdpSolution solution = exclusion::solve_exclusion_sdp(instance, solver);
  exclusion::Json out = exclusion::sdp_solution_to_json(solution);
  const bool excludable = solution.status == exclusion::SolveStatus::optimal &&
                          solution.primal_value <= state.config.eps_zero &&
                          solution.dual_value <= state.config.eps_zero;
  out["excludable"] = excludable;
  emit(out);
  if (solution.status != exclusion::SolveStatus::optimal) return kExitNumerical;
  return excludable ? kExitOk : kExitNegative;
}

int run_proj(CliState& state, const std::string& instance_path) {
  state.load();
  const exclusion::Json j = exclusion::parse_json_text(read_file(instance_path), "instance");
  const exclusion::ExclusionInstance instance = exclusion::instance_from_json(j);
  if (!instance.has_pure_states()) {
    throw exclusion::ValidationError("proj: instance must contain pure states");
  }
  exclusion::QcqpConfig qcqp;
  qcqp.restarts = state.config.restarts;
  qcqp.seed = state.config.seed;
  const exclusion::MinOverAssignmentsResult result =
      exclusion::min_over_assignments(instance.pure_states(), qcqp);
  exclusion::Json out = exclusion::min_over_assignments_to_json(result);
  const bool excludable = result.value <= state.config.eps_zero;
  out["excludable"] = excludable;
  emit(out);
  if (!result.all_converged) return kExitNumerical;
  return excludable ? kExitOk : kExitNegative;
}

int run_validate(CliState& state, const std::string& povm_path) {
  state.load();
  const exclusion::Json j = exclusion::parse_json_text(read_file(povm_path), "povm");
  const exclusion::Povm povm = exclusion::povm_from_json(j);
  const exclusion::ValidationReport report = exclusion::validate_povm(povm);
  emit(exclusion::validation_report_to_json(report));
  return report.valid ? kExitOk : kExitNegative;
}

struct FamilyBuildArgs {
  double x = 0.5;
  double r = 1.0;
  double theta = 0.0;
  std::optional<double> b1;
  std::optional<double> c1;
  double vartheta = 0.0;
  std::optional<double> gamma;
};

exclusion::CVec basis_e1() {
  exclusion::CVec a = exclusion::CVec::Zero(3);
  a[0] = 1.0;
  return a;
}

int run_family_build(CliState& state, const FamilyBuildArgs& args) {
  state.load();
  const exclusion::FamilyParams params{args.x, args.r, args.theta};
  const exclusion::Povm povm = exclusion::build_family_povm(params);

  // Default excluded states sit halfway to their bounds, at the worst-case
  // phase pair gamma = vartheta + pi.
  const double b1 = args.b1.value_or(0.5 * exclusion::b1_bound(params));
  const double c1 = args.c1.value_or(0.5 * exclusion::c1_bound(params));
  const double vartheta = args.vartheta;
  const double gamma = args.gamma.value_or(std::fmod(vartheta + kTwoPi / 2.0, kTwoPi));

  const exclusion::PureState b = exclusion::excluded_state_b(params, b1, vartheta);
  const exclusion::PureState c = exclusion::excluded_state_c(params, c1, gamma);
  const double j3 = exclusion::j3_worst_case(params, b1, c1);
  const double f = exclusion::f_lhs(params, b1, c1);
  const exclusion::CfsReport cfs =
      exclusion::family_cfs_check(params, {b1, c1, vartheta, gamma}, state.config.eps_zero);

  exclusion::Json out;
  out["schema"] = exclusion::kSchemaTag;
  out["params"] = exclusion::Json{{"x", args.x}, {"r", args.r}, {"theta", args.theta}};
  out["povm"] = exclusion::povm_to_json(povm);
  out["validation"] = exclusion::validation_report_to_json(exclusion::validate_povm(povm));
  out["excluded_states"] = exclusion::Json{
      {"a", exclusion::vec_to_json(basis_e1())},
      {"b", exclusion::vec_to_json(b.vec())},
      {"c", exclusion::vec_to_json(c.vec())},
  };
  out["excluded_params"] =
      exclusion::Json{{"b1", b1}, {"c1", c1}, {"vartheta", vartheta}, {"gamma", gamma}};
  out["j3_worst_case"] = j3;
  out["f"] = f;
  out["cfs"] = exclusion::cfs_report_to_json(cfs);
  emit(out);
  return kExitOk;
}

int run_family_scan(CliState& state, const exclusion::GridSpec& grid, const std::string& out_path,
                    const std::string& table_path) {
  state.load();
  std::vector<exclusion::ScanRow> rows;
  const bool want_table = !table_path.empty();
  const exclusion::FamilyScanReport report =
      exclusion::run_family_theorem_scan(grid, 0, want_table ? &rows : nullptr);
  const exclusion::Json j = exclusion::family_scan_report_to_json(report);
  if (!out_path.empty()) {
    write_file(out_path, j.dump(2) + "\n");
  }
  if (want_table) {
    std::string csv = "x,r,b1,c1,f,margin,is_max\n";
    char line[256];
    for (const auto& row : rows) {
      const bool is_max = row.f == report.max_f && row.x == report.argmax_x &&
                          row.r == report.argmax_r && row.b1 == report.argmax_b1 &&
                          row.c1 == report.argmax_c1;
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", row.x, row.r,
                    row.b1, row.c1, row.f, 1.0 - row.f, is_max ? 1 : 0);
      csv += line;
    }
    write_file(table_path, csv);
  }
  emit(j);
  return kExitOk;
}

int run_experiment(CliState& state, const std::string& name, int trials, std::uint64_t seed,
                   bool seed_set, const std::string& out_dir) {
  state.load();
  const std::uint64_t used_seed = seed_set ? seed : state.config.seed;
  exclusion::RunConfig rc = state.config.run_config();

  exclusion::Json summary;
  exclusion::Json instances = exclusion::Json::array();
  if (name == "equiv3x3") {
    const exclusion::EquivalenceReport report = exclusion::run_equivalence_3x3(trials, used_seed, rc);
    summary = exclusion::equivalence_report_to_json(report);
    for (const auto& t : report.disagreements) {
      exclusion::Json line = exclusion::equivalence_trial_to_json(t);
      line["kind"] = "disagreement";
      instances.push_back(std::move(line));
    }
    for (const auto& t : report.boundary_cases) {
      exclusion::Json line = exclusion::equivalence_trial_to_json(t);
      line["kind"] = "boundary";
      instances.push_back(std::move(line));
    }
    for (const auto& t : report.unconverged_audit) {
      exclusion::Json line = exclusion::equivalence_trial_to_json(t);
      line["kind"] = "unconverged";
      instances.push_back(std::move(line));
    }
  } else if (name == "gap2d") {
    const exclusion::Gap2dReport report = exclusion::run_2d_gap(trials, used_seed, rc);
    summary = exclusion::gap2d_report_to_json(report);
    for (const auto& t : report.gap_instances) {
      exclusion::Json line = exclusion::gap_trial_to_json(t);
      line["kind"] = "gap";
      instances.push_back(std::move(line));
    }
    for (const auto& t : report.pair_disagreement_instances) {
      exclusion::Json line = exclusion::gap_trial_to_json(t);
      line["kind"] = "pair_disagreement";
      instances.push_back(std::move(line));
    }
  } else if (name == "familyscan") {
    const exclusion::FamilyScanReport report = exclusion::run_family_theorem_scan({});
    summary = exclusion::family_scan_report_to_json(report);
  } else {
    throw exclusion::ValidationError("experiment: --name must be equiv3x3, gap2d, or familyscan");
  }

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_file(std::filesystem::path(out_dir) / "summary.json", summary.dump(2) + "\n");
    std::string lines;
    for (const auto& line : instances) lines += line.dump() + "\n";
    write_file(std::filesystem::path(out_dir) / "instances.jsonl", lines);
  }
  emit(summary);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exclusion -- perfect quantum state exclusion toolkit"};
  app.require_subcommand(1);

  CliState state;
  app.add_option("--config", state.config_path, "JSON config file (tolerances, restarts, seed)");

  // cfs
  std::string cfs_instance;
  std::vector<double> cfs_overlaps;
  auto* cfs = app.add_subcommand("cfs", "closed-form projective excludability criterion");
  cfs->add_option("instance", cfs_instance, "instance JSON file with three 3D pure states");
  cfs->add_option("--overlaps", cfs_overlaps, "overlap magnitudes j1 j2 j3")->expected(3);

  // sdp
  std::string sdp_instance;
  auto* sdp = app.add_subcommand("sdp", "exclusion SDP with dual certificate");
  sdp->add_option("instance", sdp_instance, "instance JSON file")->required();

  // proj
  std::string proj_instance;
  auto* proj = app.add_subcommand("proj", "projective exclusion via the QCQP family");
  proj->add_option("instance", proj_instance, "instance JSON file")->required();

  // validate
  std::string validate_povm_path;
  auto* validate = app.add_subcommand("validate", "POVM completeness/positivity/rank report");
  validate->add_option("povm", validate_povm_path, "POVM JSON file")->required();

  // family build / scan
  auto* family = app.add_subcommand("family", "extremal POVM family tools");
  family->require_subcommand(1);
  FamilyBuildArgs build_args;
  double opt_b1 = -1.0, opt_c1 = -1.0, opt_gamma = -1.0;
  auto* build = family->add_subcommand("build", "construct the family POVM and excluded states");
  build->add_option("--x", build_args.x, "weight split in (0,1)")->required();
  build->add_option("--r", build_args.r, "balance parameter in (0,inf)")->required();
  build->add_option("--theta", build_args.theta, "common phase in [0,2pi)");
  auto* b1_opt = build->add_option("--b1", opt_b1, "first coordinate of b (default: half bound)");
  auto* c1_opt = build->add_option("--c1", opt_c1, "first coordinate of c (default: half bound)");
  build->add_option("--vartheta", build_args.vartheta, "phase of b3");
  auto* gamma_opt = build->add_option("--gamma", opt_gamma, "phase of c3 (default: vartheta+pi)");

  exclusion::GridSpec grid;
  std::string scan_out, scan_table;
  auto* scan = family->add_subcommand("scan", "grid scan of f over (x, r, b1, c1)");
  scan->add_option("--nx", grid.nx, "x grid points");
  scan->add_option("--nr", grid.nr, "r grid points (log-spaced)");
  scan->add_option("--nb", grid.nb, "b1-fraction grid points");
  scan->add_option("--nc", grid.nc, "c1-fraction grid points");
  scan->add_option("--r-min", grid.r_min, "smallest r");
  scan->add_option("--r-max", grid.r_max, "largest r");
  scan->add_option("--stride", grid.stride, "evaluate every stride-th grid point");
  scan->add_option("--out", scan_out, "also write the report to this file");
  scan->add_option("--table", scan_table,
                   "write every evaluated point as CSV (x,r,b1,c1,f,margin,is_max)");

  // experiment
  std::string exp_name, exp_out;
  int exp_trials = 1000;
  std::uint64_t exp_seed = 0;
  auto* experiment = app.add_subcommand("experiment", "randomized / grid experiment harness");
  experiment->add_option("--name", exp_name, "equiv3x3 | gap2d | familyscan")->required();
  experiment->add_option("--trials", exp_trials, "number of trials");
  auto* seed_opt = experiment->add_option("--seed", exp_seed, "base seed");
  experiment->add_option("--out", exp_out, "output directory (summary.json, instances.jsonl)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cfs) return run_cfs(state, cfs_instance, cfs_overlaps);
    if (*sdp) return run_sdp(state, sdp_instance);
    if (*proj) return run_proj(state, proj_instance);
    if (*validate) return run_validate(state, validate_povm_path);
    if (*build) {
      if (b1_opt->count() > 0) build_args.b1 = opt_b1;
      if (c1_opt->count() > 0) build_args.c1 = opt_c1;
      if (gamma_opt->count() > 0) build_args.gamma = opt_gamma;
      return run_family_build(state, build_args);
    }
    if (*scan) return run_family_scan(state, grid, scan_out, scan_table);
    if (*experiment) {
      return run_experiment(state, exp_name, exp_trials, exp_seed, seed_opt->count() > 0, exp_out);
    }
  } catch (const exclusion::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const exclusion::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
