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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "exclusion/config.hpp"
#include "exclusion/experiments.hpp"
#include "exclusion/json_io.hpp"

using namespace exclusion;

namespace {

namespace fs = std::filesystem;

struct CommandResult {
  int exit_code = -1;
  std::string stdout_text;
};

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "exclusion_cli_tests";
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  REQUIRE(out.good());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CommandResult run_cli(const std::string& args) {
  const fs::path out_file = temp_dir() / "stdout.txt";
  const std::string command =
      std::string(EXCLUSION_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>/dev/null";
  const int raw = std::system(command.c_str());
  CommandResult result;
  result.exit_code = WEXITSTATUS(raw);
  result.stdout_text = read_text(out_file);
  return result;
}

std::string trine_instance_json() {
  Json j;
  j["schema"] = kSchemaTag;
  j["dim"] = 2;
  Json states = Json::array();
  for (const auto& s : trine_states()) states.push_back(vec_to_json(s.vec()));
  j["states"] = std::move(states);
  return j.dump(2);
}

std::string basis3_instance_json() {
  Json j;
  j["schema"] = kSchemaTag;
  j["dim"] = 3;
  Json states = Json::array();
  for (int i = 0; i < 3; ++i) {
    CVec e = CVec::Zero(3);
    e[i] = 1.0;
    states.push_back(vec_to_json(e));
  }
  j["states"] = std::move(states);
  return j.dump(2);
}

}  // namespace

TEST_CASE("serialization: complex / vector / matrix round trips") {
  Rng rng(654);
  const CMat u = haar_random_unitary(4, rng);
  CHECK((mat_from_json(mat_to_json(u)) - u).norm() == 0.0);
  const PureState s = haar_random_state(5, rng);
  CHECK((vec_from_json(vec_to_json(s.vec())) - s.vec()).norm() == 0.0);
  CHECK(complex_from_json(complex_to_json({1.25, -0.5})) == Complex{1.25, -0.5});
}

TEST_CASE("serialization: instance round trip preserves states and weights") {
  Rng rng(11);
  const ExclusionInstance instance(
      {haar_random_state(3, rng), haar_random_state(3, rng), haar_random_state(3, rng)},
      {0.5, 0.25, 0.25});
  const Json j = instance_to_json(instance);
  CHECK(j["schema"] == "exclusion/1");
  const ExclusionInstance parsed = instance_from_json(j);
  CHECK(parsed.dim() == 3);
  CHECK(parsed.n_states() == 3);
  CHECK(parsed.weights() == instance.weights());
  for (int i = 0; i < 3; ++i) {
    CHECK((parsed.pure_states()[i].vec() - instance.pure_states()[i].vec()).norm() == 0.0);
  }
}

TEST_CASE("serialization: density-matrix instances parse too") {
  Json j;
  j["schema"] = kSchemaTag;
  j["dim"] = 2;
  Json rho = Json::array();
  rho.push_back(Json::array({Json::array({0.5, 0.0}), Json::array({0.0, 0.0})}));
  rho.push_back(Json::array({Json::array({0.0, 0.0}), Json::array({0.5, 0.0})}));
  j["states"] = Json::array({rho, rho});
  const ExclusionInstance instance = instance_from_json(j);
  CHECK(instance.n_states() == 2);
  CHECK_FALSE(instance.has_pure_states());
}

TEST_CASE("serialization: malformed documents raise schema-pointing errors") {
  CHECK_THROWS_AS(parse_json_text("{not json", "instance"), ValidationError);
  CHECK_THROWS_AS(instance_from_json(Json::object()), ValidationError);
  CHECK_THROWS_AS(instance_from_json(Json{{"schema", "exclusion/2"}, {"states", Json::array()}}),
                  ValidationError);
  CHECK_THROWS_AS(vec_from_json(Json::array({Json::array({1.0})})), ValidationError);
}

TEST_CASE("config parsing applies defaults and validates") {
  const CliConfig defaults = load_cli_config("{}");
  CHECK(defaults.eps_zero == kEpsZero);
  CHECK(defaults.gap_tol == 1e-8);
  CHECK(defaults.restarts == 32);

  const CliConfig custom = load_cli_config(R"({"eps_zero": 1e-6, "restarts": 8, "seed": 99})");
  CHECK(custom.eps_zero == 1e-6);
  CHECK(custom.restarts == 8);
  CHECK(custom.seed == 99);

  CHECK_THROWS_AS(load_cli_config(R"({"restarts": 0})"), ValidationError);
  CHECK_THROWS_AS(load_cli_config(R"({"eps_zero": -1.0})"), ValidationError);
}

TEST_CASE("cli: cfs overlap verdicts drive the exit code") {
  CommandResult ok = run_cli("cfs --overlaps 0 0 0");
  CHECK(ok.exit_code == 0);
  const Json report = Json::parse(ok.stdout_text);
  CHECK(report["lhs"] == 0.0);
  CHECK(report["excludable"] == true);

  CommandResult no = run_cli("cfs --overlaps 1 1 1");
  CHECK(no.exit_code == 3);
  CHECK(Json::parse(no.stdout_text)["lhs"] == 5.0);

  CommandResult boundary = run_cli("cfs --overlaps 0.5 0.5 0.5");
  CHECK(boundary.exit_code == 0);
  CHECK(Json::parse(boundary.stdout_text)["lhs"] == 1.0);
}

TEST_CASE("cli: sdp and proj disagree on the trine, with matching exit codes") {
  const fs::path instance = temp_dir() / "trine.json";
  write_text(instance, trine_instance_json());

  CommandResult sdp = run_cli("sdp " + instance.string());
  CHECK(sdp.exit_code == 0);
  const Json sdp_json = Json::parse(sdp.stdout_text);
  CHECK(sdp_json["status"] == "optimal");
  CHECK(sdp_json["primal_value"].get<double>() <= 1e-7);
  CHECK(sdp_json["excludable"] == true);

  CommandResult proj = run_cli("proj " + instance.string());
  CHECK(proj.exit_code == 3);
  const Json proj_json = Json::parse(proj.stdout_text);
  CHECK(proj_json["min_value"].get<double>() > 0.1);
  CHECK(proj_json["excludable"] == false);
  CHECK(proj_json["assignments"].size() == 6);  // C(4,2)

  // the solved POVM round-trips through validate
  const fs::path povm_file = temp_dir() / "trine_povm.json";
  write_text(povm_file, sdp_json["povm"].dump(2) + "\n");
  CommandResult validate = run_cli("validate " + povm_file.string());
  CHECK(validate.exit_code == 0);
  CHECK(Json::parse(validate.stdout_text)["valid"] == true);
}

TEST_CASE("cli: proj reaches zero on the orthonormal basis") {
  const fs::path instance = temp_dir() / "basis3.json";
  write_text(instance, basis3_instance_json());
  CommandResult proj = run_cli("proj " + instance.string());
  CHECK(proj.exit_code == 0);
  const Json j = Json::parse(proj.stdout_text);
  CHECK(j["min_value"].get<double>() <= 1e-7);
  CHECK(j["objectives"].size() == 10);
}

TEST_CASE("cli: malformed input exits 1 with a message") {
  const fs::path broken = temp_dir() / "broken.json";
  write_text(broken, "{\"states\": [[[1.0");
  CHECK(run_cli("sdp " + broken.string()).exit_code == 1);
  CHECK(run_cli("cfs --overlaps 2 0 0").exit_code == 1);
  CHECK(run_cli("nonsense").exit_code == 1);

  // proj needs pure states, not density matrices
  const fs::path density = temp_dir() / "density.json";
  Json rho = Json::array();
  rho.push_back(Json::array({Json::array({0.5, 0.0}), Json::array({0.0, 0.0})}));
  rho.push_back(Json::array({Json::array({0.0, 0.0}), Json::array({0.5, 0.0})}));
  write_text(density, Json{{"schema", kSchemaTag}, {"states", Json::array({rho, rho})}}.dump());
  CHECK(run_cli("proj " + density.string()).exit_code == 1);
}

TEST_CASE("cli: validate flags an incomplete POVM with exit 3") {
  const fs::path file = temp_dir() / "bad_povm.json";
  Json identity = mat_to_json(CMat::Identity(3, 3));
  write_text(file, Json{{"schema", kSchemaTag},
                        {"dim", 3},
                        {"elements", Json::array({identity, identity})}}
                       .dump());
  CommandResult result = run_cli("validate " + file.string());
  CHECK(result.exit_code == 3);
  CHECK(Json::parse(result.stdout_text)["valid"] == false);
}

TEST_CASE("cli: identical invocations produce byte-identical stdout") {
  const fs::path instance = temp_dir() / "trine_det.json";
  write_text(instance, trine_instance_json());
  CommandResult a = run_cli("sdp " + instance.string());
  CommandResult b = run_cli("sdp " + instance.string());
  CHECK(a.stdout_text == b.stdout_text);
  CommandResult c = run_cli("proj " + instance.string());
  CommandResult d = run_cli("proj " + instance.string());
  CHECK(c.stdout_text == d.stdout_text);
}

TEST_CASE("cli: cfs accepts an overlaps triple in JSON") {
  const fs::path file = temp_dir() / "overlaps.json";
  write_text(file, R"({"schema": "exclusion/1", "overlaps": [0.5, 0.5, 0.5]})");
  CommandResult result = run_cli("cfs " + file.string());
  CHECK(result.exit_code == 0);
  CHECK(Json::parse(result.stdout_text)["lhs"] == 1.0);
}

TEST_CASE("cli: family scan table lists scanned points with the maximum marked") {
  const fs::path table = temp_dir() / "scan.csv";
  CommandResult result = run_cli(
      "family scan --nx 4 --nr 4 --nb 4 --nc 4 --stride 2 --table " + table.string());
  CHECK(result.exit_code == 0);
  const std::string csv = read_text(table);
  std::size_t lines = 0, maxed = 0;
  std::istringstream stream(csv);
  std::string line;
  std::getline(stream, line);
  CHECK(line == "x,r,b1,c1,f,margin,is_max");
  while (std::getline(stream, line)) {
    ++lines;
    if (line.size() >= 2 && line.substr(line.size() - 2) == ",1") ++maxed;
  }
  CHECK(lines == 128);  // 4^4 / stride 2
  CHECK(maxed == 1);
}

TEST_CASE("cli: family build emits POVM, excluded states, and f") {
  CommandResult build = run_cli("family build --x 0.5 --r 1 --theta 0 --b1 0.5 --c1 0.5");
  CHECK(build.exit_code == 0);
  const Json j = Json::parse(build.stdout_text);
  CHECK(j["validation"]["valid"] == true);
  CHECK(j["validation"]["ranks"] == Json::array({2, 1, 1}));
  CHECK(j["j3_worst_case"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(j["f"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["cfs"]["excludable"] == true);

  CHECK(run_cli("family build --x 1.5 --r 1").exit_code == 1);
}

TEST_CASE("cli: experiment writes deterministic summary.json and instances.jsonl") {
  const fs::path out_a = temp_dir() / "exp_a";
  const fs::path out_b = temp_dir() / "exp_b";
  fs::remove_all(out_a);
  fs::remove_all(out_b);

  CommandResult a =
      run_cli("experiment --name gap2d --trials 6 --seed 4 --out " + out_a.string());
  CHECK(a.exit_code == 0);
  CommandResult b =
      run_cli("experiment --name gap2d --trials 6 --seed 4 --out " + out_b.string());
  CHECK(b.exit_code == 0);

  const std::string summary_a = read_text(out_a / "summary.json");
  const std::string summary_b = read_text(out_b / "summary.json");
  CHECK(summary_a == summary_b);
  CHECK(!summary_a.empty());
  const Json summary = Json::parse(summary_a);
  CHECK(summary["experiment"] == "gap2d");
  CHECK(summary["gap_count"].get<int>() >= 1);

  // the persisted gap instance re-runs through the CLI with the same verdicts
  const std::string lines = read_text(out_a / "instances.jsonl");
  REQUIRE(!lines.empty());
  const Json first_line = Json::parse(lines.substr(0, lines.find('\n')));
  CHECK(first_line["kind"] == "gap");
  const fs::path replay = temp_dir() / "replay.json";
  write_text(replay, first_line["instance"].dump(2) + "\n");
  CHECK(run_cli("sdp " + replay.string()).exit_code == 0);
  CHECK(run_cli("proj " + replay.string()).exit_code == 3);
}

TEST_CASE("cli: equiv3x3 experiment summary carries the agreement counts") {
  const fs::path out = temp_dir() / "exp_equiv";
  fs::remove_all(out);
  CommandResult result =
      run_cli("experiment --name equiv3x3 --trials 10 --seed 21 --out " + out.string());
  CHECK(result.exit_code == 0);
  const Json summary = Json::parse(read_text(out / "summary.json"));
  CHECK(summary["experiment"] == "equiv3x3");
  CHECK(summary["trials"] == 10);
  CHECK(summary["agree"].get<int>() + summary["boundary_band"].get<int>() +
            static_cast<int>(summary["disagreements"].size()) == 10);
}

TEST_CASE("cli: config file changes tolerances") {
  const fs::path config = temp_dir() / "config.json";
  write_text(config, R"({"eps_zero": 4.9})");
  // with an absurdly loose eps_zero, even the all-ones overlaps "exclude"
  CommandResult loose = run_cli("--config " + config.string() + " cfs --overlaps 1 1 1");
  CHECK(loose.exit_code == 0);
  CHECK(Json::parse(loose.stdout_text)["excludable"] == true);
}
