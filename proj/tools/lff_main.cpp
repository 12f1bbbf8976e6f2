// Command-line front end: learn from a task directory, run the bundled
// benchmark families, or count a hypothesis space.
//
//   lff learn <taskdir> [--mode baseline|explain] [--budget N]
//             [--max-programs N] [--json out.json]
//   lff bench robot --n 1..6 [--modes ...] [--repeats N] [--csv out.csv]
//   lff bench lists --tasks len,last [--seed S] ...
//   lff bench strings ...
//   lff count-space <taskdir> [--ceiling N]
//
// Exit codes: 0 solved (or bench/count completed), 2 exhausted without a
// solution, 1 error. LFF_BUDGET overrides the step budget, LFF_JOBS the
// bench worker count.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lff/bench.hpp"
#include "lff/canonical.hpp"
#include "lff/learn.hpp"
#include "lff/task.hpp"

namespace {

using nlohmann::json;

std::int64_t env_int(const char* name, std::int64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  return std::strtoll(v, nullptr, 10);
}

lff::LearnerMode parse_mode(const std::string& name) {
  if (name == "baseline") return lff::LearnerMode::baseline;
  if (name == "explain") return lff::LearnerMode::explain;
  throw CLI::ValidationError("--mode", "expected baseline or explain");
}

std::vector<lff::LearnerMode> parse_modes(const std::string& csv) {
  std::vector<lff::LearnerMode> modes;
  std::stringstream ss(csv);
  std::string part;
  while (std::getline(ss, part, ',')) modes.push_back(parse_mode(part));
  return modes;
}

json report_json(const lff::LearnerReport& report) {
  json j;
  j["solved"] = report.solution.has_value();
  if (report.solution) {
    j["solution"] = lff::to_string(*report.solution);
    j["solution_size"] = report.solution->literal_count();
  }
  j["programs_generated"] = report.programs_generated;
  j["constraints"] = {
      {"specialisation",
       report.constraints_by_kind.at(lff::ConstraintKind::specialisation)},
      {"generalisation",
       report.constraints_by_kind.at(lff::ConstraintKind::generalisation)},
      {"elimination", report.constraints_by_kind.at(lff::ConstraintKind::elimination)}};
  j["stage_times"] = {{"generate", report.stage_times.generate},
                      {"test", report.stage_times.test},
                      {"constrain", report.stage_times.constrain},
                      {"total", report.stage_times.total()}};
  j["exhausted"] = report.exhausted;
  return j;
}

json record_json(const lff::RunRecord& r) {
  json j;
  j["task"] = r.task;
  j["mode"] = lff::to_string(r.mode);
  j["seed"] = r.seed;
  j["solved"] = r.solved;
  j["size"] = r.solution_size;
  j["solution"] = r.solution_text;
  j["programs"] = r.programs_generated;
  j["constraints"] = {{"specialisation", r.constraints_spec},
                      {"generalisation", r.constraints_gen},
                      {"elimination", r.constraints_elim}};
  j["times"] = {{"total", r.stage_times.total()},
                {"generate", r.stage_times.generate},
                {"test", r.stage_times.test},
                {"constrain", r.stage_times.constrain}};
  return j;
}

void emit_records(const std::vector<lff::RunRecord>& records, const std::string& csv_path,
                  const std::string& json_path) {
  std::cout << lff::run_record_csv_header() << "\n";
  for (const auto& r : records) std::cout << lff::to_csv_row(r) << "\n";
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    out << lff::run_record_csv_header() << "\n";
    for (const auto& r : records) out << lff::to_csv_row(r) << "\n";
  }
  if (!json_path.empty()) {
    json j = json::array();
    for (const auto& r : records) j.push_back(record_json(r));
    std::ofstream out(json_path);
    out << j.dump(2) << "\n";
  }
}

// "4" or "1..6" -> inclusive range.
std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int v = std::stoi(text);
    return {v, v};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"learning-from-failures program synthesis"};
  app.require_subcommand(1);

  lff::Budget budget;
  budget.max_resolution_steps = env_int("LFF_BUDGET", budget.max_resolution_steps);
  int jobs = static_cast<int>(env_int("LFF_JOBS", 1));

  // --- learn ---------------------------------------------------------------
  auto* learn_cmd = app.add_subcommand("learn", "learn a program from a task directory");
  std::string task_dir;
  std::string mode_name = "explain";
  std::uint64_t max_programs = 1000000;
  std::string json_out;
  learn_cmd->add_option("taskdir", task_dir, "directory with bias.pl, bk.pl, exs.pl")
      ->required();
  learn_cmd->add_option("--mode", mode_name, "baseline or explain");
  learn_cmd->add_option("--budget", budget.max_resolution_steps, "resolution step budget");
  learn_cmd->add_option("--max-programs", max_programs, "generation cap");
  learn_cmd->add_option("--json", json_out, "write the report as JSON");

  // --- bench ---------------------------------------------------------------
  auto* bench_cmd = app.add_subcommand("bench", "run benchmark families");
  bench_cmd->require_subcommand(1);
  std::string modes_csv = "baseline,explain";
  int repeats = 1;
  std::uint64_t seed = 1;
  std::string csv_out, bench_json_out;
  for (auto* sub : {bench_cmd}) {
    sub->add_option("--modes", modes_csv, "comma-separated learner modes");
    sub->add_option("--repeats", repeats, "repeats per task and mode");
    sub->add_option("--seed", seed, "example-sampling seed");
    sub->add_option("--csv", csv_out, "also write CSV here");
    sub->add_option("--json", bench_json_out, "also write JSON here");
    sub->add_option("--budget", budget.max_resolution_steps, "resolution step budget");
  }

  auto* robot_cmd = bench_cmd->add_subcommand("robot", "corridor planning tasks");
  std::string robot_n = "1..6";
  robot_cmd->add_option("--n", robot_n, "corridor length or range, e.g. 4 or 1..6");

  auto* lists_cmd = bench_cmd->add_subcommand("lists", "list puzzle tasks");
  std::string list_names = "len,last";
  int n_pos = 5, n_neg = 5, max_len = 20;
  lists_cmd->add_option("--tasks", list_names, "comma-separated task names");
  lists_cmd->add_option("--pos", n_pos, "positive examples per task");
  lists_cmd->add_option("--neg", n_neg, "negative examples per task");
  lists_cmd->add_option("--max-len", max_len, "maximum sampled list length");

  auto* strings_cmd = bench_cmd->add_subcommand("strings", "string transform tasks");

  // --- count-space ---------------------------------------------------------
  auto* count_cmd = app.add_subcommand("count-space", "count a bounded hypothesis space");
  std::string count_dir;
  std::uint64_t ceiling = 2000000;
  count_cmd->add_option("taskdir", count_dir, "task directory")->required();
  count_cmd->add_option("--ceiling", ceiling, "refuse above this many programs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*learn_cmd) {
      lff::TaskBundle task = lff::load_task(task_dir);
      lff::LearnerConfig config;
      config.mode = parse_mode(mode_name);
      config.budget = budget;
      config.generator = task.generator_config();
      config.max_programs = max_programs;
      lff::LearnerReport report = lff::learn(task.learn_task(), config);
      if (!json_out.empty()) {
        std::ofstream out(json_out);
        out << report_json(report).dump(2) << "\n";
      }
      if (report.solution) {
        std::cout << lff::to_string(*report.solution) << "\n";
        std::cerr << "programs=" << report.programs_generated << "\n";
        return 0;
      }
      std::cerr << "no solution (programs=" << report.programs_generated << ")\n";
      return 2;
    }

    if (*count_cmd) {
      lff::TaskBundle task = lff::load_task(count_dir);
      std::cout << lff::count_space(task.generator_config(), ceiling) << "\n";
      return 0;
    }

    std::vector<lff::TaskBundle> tasks;
    if (*robot_cmd) {
      auto [lo, hi] = parse_range(robot_n);
      for (int n = lo; n <= hi; ++n) tasks.push_back(lff::gen_robot_task(n));
    } else if (*lists_cmd) {
      std::stringstream ss(list_names);
      std::string name;
      while (std::getline(ss, name, ','))
        tasks.push_back(lff::gen_list_task(name, n_pos, n_neg, max_len, seed));
    } else if (*strings_cmd) {
      tasks = lff::string_tasks();
    }
    auto records =
        lff::run(tasks, parse_modes(modes_csv), repeats, seed, budget, 1000000, jobs);
    emit_records(records, csv_out, bench_json_out);
    bool all_solved = true;
    for (const auto& r : records) all_solved = all_solved && r.solved;
    return all_solved ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
