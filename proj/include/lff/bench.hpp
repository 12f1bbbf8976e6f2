#pragma once

// Benchmark task builders and the runner behind the CLI.
//
// Robot corridor: states are (x,y) pairs on a single row, x in 0..10.
// move_right/move_left step along the row; move_up/move_down have empty
// relations (any vertical move leaves the corridor). One example:
// f((0,0),(n,0)).
//
// List puzzles: ten generators over the shared list/integer BK. Each
// example set is sampled from a seeded PRNG against a built-in ground
// truth oracle, so positives satisfy the oracle and negatives violate
// it.
//
// String transforms: a state is (remaining input, remaining expected
// output); a task relates the full state to the drained state ([],[]).
// Transforms consume the input and match the expected output, tests
// inspect the head of the remaining input.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lff/canonical.hpp"
#include "lff/learn.hpp"
#include "lff/parse.hpp"
#include "lff/task.hpp"
#include "lff/term.hpp"

namespace lff {

// ---------------------------------------------------------------------------
// Robot corridor

inline Term grid_state(int x, int y) {
  return Term::pair(Term::constant(static_cast<std::int64_t>(x)),
                    Term::constant(static_cast<std::int64_t>(y)));
}

inline TaskBundle gen_robot_task(int n) {
  if (n < 1 || n > 10) throw TaskError("robot corridor length must be in 1..10");
  TaskBundle task;
  task.name = "robot-n" + std::to_string(n);
  for (int x = 0; x <= 9; ++x)
    task.bk.clauses.push_back(
        Clause{Atom{"move_right", {grid_state(x, 0), grid_state(x + 1, 0)}}, {}});
  for (int x = 1; x <= 10; ++x)
    task.bk.clauses.push_back(
        Clause{Atom{"move_left", {grid_state(x, 0), grid_state(x - 1, 0)}}, {}});
  // move_up and move_down leave the corridor everywhere: empty relations.

  task.declarations.head = {"f", 2};
  task.declarations.body_preds = {
      {"move_right", 2}, {"move_left", 2}, {"move_up", 2}, {"move_down", 2}};
  for (const auto& p : task.declarations.body_preds) {
    task.declarations.types[p] = {"state", "state"};
    task.declarations.directions[p] = {ArgMode::in, ArgMode::out};
  }
  task.declarations.types[{"f", 2}] = {"state", "state"};
  task.declarations.directions[{"f", 2}] = {ArgMode::in, ArgMode::out};
  task.limits = ShapeLimits{1, 10, 11};
  task.constraint_names = {"forward-chained"};
  task.positives.push_back(Atom{"f", {grid_state(0, 0), grid_state(n, 0)}});
  return task;
}

// ---------------------------------------------------------------------------
// List puzzles

namespace detail {

inline Term int_list(const std::vector<std::int64_t>& xs) {
  std::vector<Term> elems;
  elems.reserve(xs.size());
  for (auto x : xs) elems.push_back(Term::constant(x));
  return Term::list(elems);
}

inline Program list_bk(int max_int = 24) {
  Program bk;
  auto fact = [&](Atom a) { bk.clauses.push_back(Clause{std::move(a), {}}); };
  fact(Atom{"empty", {Term::nil()}});
  for (int k = 0; k <= max_int; ++k) {
    Term t = Term::constant(static_cast<std::int64_t>(k));
    if (k == 0) fact(Atom{"zero", {t}});
    if (k == 1) fact(Atom{"one", {t}});
    fact(Atom{k % 2 == 0 ? "even" : "odd", {t}});
    if (k < max_int)
      fact(Atom{"increment", {t, Term::constant(static_cast<std::int64_t>(k + 1))}});
    if (k > 0)
      fact(Atom{"decrement", {t, Term::constant(static_cast<std::int64_t>(k - 1))}});
  }
  for (int a = 0; a <= max_int; ++a)
    for (int b = 0; b <= a; ++b)
      fact(Atom{"geq", {Term::constant(static_cast<std::int64_t>(a)),
                        Term::constant(static_cast<std::int64_t>(b))}});
  for (const auto& text : {"head([A|_],A).", "tail([_|T],T).", "cons(A,B,[A|B]).",
                           "element([A|_],A).", "element([_|T],A):- element(T,A)."})
    bk.clauses.push_back(parse_clause(text));
  return bk;
}

struct ListTaskSpec {
  std::vector<std::string> head_types;
  std::vector<ArgMode> head_modes;
  int min_len = 0;
};

inline const std::map<std::string, ListTaskSpec>& list_task_specs() {
  static const std::map<std::string, ListTaskSpec> specs = {
      {"len", {{"list", "int"}, {ArgMode::in, ArgMode::out}, 0}},
      {"dropk", {{"list", "int", "list"}, {ArgMode::in, ArgMode::in, ArgMode::out}, 1}},
      {"finddup", {{"list", "int"}, {ArgMode::in, ArgMode::out}, 2}},
      {"member", {{"list", "int"}, {ArgMode::in, ArgMode::out}, 1}},
      {"last", {{"list", "int"}, {ArgMode::in, ArgMode::out}, 1}},
      {"evens", {{"list"}, {ArgMode::in}, 0}},
      {"threesame", {{"list"}, {ArgMode::in}, 3}},
      {"droplast", {{"list", "list"}, {ArgMode::in, ArgMode::out}, 1}},
      {"addhead", {{"list", "list"}, {ArgMode::in, ArgMode::out}, 1}},
      {"sorted", {{"list"}, {ArgMode::in}, 1}},
  };
  return specs;
}

}  // namespace detail

// Ground-truth oracle for a list task; args are the candidate example
// arguments in task order.
inline bool list_oracle(const std::string& name, const std::vector<std::int64_t>& input,
                        std::int64_t k, const std::vector<std::int64_t>& out_list,
                        std::int64_t out_int) {
  const auto n = static_cast<std::int64_t>(input.size());
  if (name == "len") return out_int == n;
  if (name == "dropk") {
    if (k < 1 || k > n) return false;
    return out_list == std::vector<std::int64_t>(input.begin() + k, input.end());
  }
  if (name == "finddup")
    return std::count(input.begin(), input.end(), out_int) >= 2;
  if (name == "member")
    return std::find(input.begin(), input.end(), out_int) != input.end();
  if (name == "last") return n >= 1 && input.back() == out_int;
  if (name == "evens")
    return std::all_of(input.begin(), input.end(), [](auto x) { return x % 2 == 0; });
  if (name == "threesame") {
    for (std::size_t i = 0; i + 2 < input.size(); ++i)
      if (input[i] == input[i + 1] && input[i] == input[i + 2]) return true;
    return false;
  }
  if (name == "droplast")
    return n >= 1 && out_list == std::vector<std::int64_t>(input.begin(), input.end() - 1);
  if (name == "addhead") {
    if (n < 1) return false;
    std::vector<std::int64_t> expect{input[0]};
    expect.insert(expect.end(), input.begin(), input.end());
    return out_list == expect;
  }
  if (name == "sorted") return n >= 1 && std::is_sorted(input.begin(), input.end());
  throw TaskError("unknown list task: " + name);
}

inline TaskBundle gen_list_task(const std::string& name, int n_pos, int n_neg, int max_len,
                                std::uint64_t seed) {
  const auto& specs = detail::list_task_specs();
  auto spec_it = specs.find(name);
  if (spec_it == specs.end()) throw TaskError("unknown list task: " + name);
  const auto& spec = spec_it->second;

  TaskBundle task;
  task.name = name;
  task.bk = detail::list_bk();
  task.declarations.head = {name, static_cast<int>(spec.head_types.size())};
  task.declarations.body_preds = {
      {"empty", 1}, {"zero", 1},      {"one", 1},       {"even", 1},
      {"odd", 1},   {"element", 2},   {"head", 2},      {"tail", 2},
      {"increment", 2}, {"decrement", 2}, {"geq", 2},   {"cons", 3}};
  task.declarations.body_preds.push_back(task.declarations.head);

  auto set_sig = [&](const std::string& p, std::vector<std::string> types,
                     std::vector<ArgMode> modes) {
    std::pair<std::string, int> key{p, static_cast<int>(types.size())};
    task.declarations.types[key] = std::move(types);
    task.declarations.directions[key] = std::move(modes);
  };
  set_sig("empty", {"list"}, {ArgMode::in});
  set_sig("zero", {"int"}, {ArgMode::out});
  set_sig("one", {"int"}, {ArgMode::out});
  set_sig("even", {"int"}, {ArgMode::in});
  set_sig("odd", {"int"}, {ArgMode::in});
  set_sig("element", {"list", "int"}, {ArgMode::in, ArgMode::out});
  set_sig("head", {"list", "int"}, {ArgMode::in, ArgMode::out});
  set_sig("tail", {"list", "list"}, {ArgMode::in, ArgMode::out});
  set_sig("increment", {"int", "int"}, {ArgMode::in, ArgMode::out});
  set_sig("decrement", {"int", "int"}, {ArgMode::in, ArgMode::out});
  set_sig("geq", {"int", "int"}, {ArgMode::in, ArgMode::in});
  set_sig("cons", {"int", "list", "list"}, {ArgMode::in, ArgMode::in, ArgMode::out});
  set_sig(name, spec.head_types, spec.head_modes);

  task.limits = ShapeLimits{2, 5, 5};

  std::mt19937_64 rng(seed);
  auto rand_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto rand_list = [&](int min_len) {
    int len = rand_int(min_len, std::max(min_len, max_len));
    std::vector<std::int64_t> xs(static_cast<std::size_t>(len));
    for (auto& x : xs) x = rand_int(1, 20);
    return xs;
  };

  // Builds a ground example; positives are constructed from the oracle,
  // negatives are rejection-sampled against it.
  auto make_example = [&](bool positive) -> Atom {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      std::vector<std::int64_t> input = rand_list(spec.min_len);
      std::int64_t k = 0;
      std::vector<std::int64_t> out_list;
      std::int64_t out_int = 0;
      if (positive) {
        if (name == "len") out_int = static_cast<std::int64_t>(input.size());
        else if (name == "dropk") {
          k = rand_int(1, std::min<int>(3, static_cast<int>(input.size())));
          out_list.assign(input.begin() + k, input.end());
        } else if (name == "finddup") {
          out_int = input[static_cast<std::size_t>(rand_int(0, static_cast<int>(input.size()) - 1))];
          input.push_back(out_int);
          std::shuffle(input.begin(), input.end(), rng);
        } else if (name == "member") {
          out_int = input[static_cast<std::size_t>(rand_int(0, static_cast<int>(input.size()) - 1))];
        } else if (name == "last") {
          out_int = input.back();
        } else if (name == "evens") {
          for (auto& x : input) x = 2 * rand_int(1, 10);
        } else if (name == "threesame") {
          std::int64_t v = rand_int(1, 20);
          std::size_t at = static_cast<std::size_t>(
              rand_int(0, static_cast<int>(input.size()) - 3));
          input[at] = input[at + 1] = input[at + 2] = v;
        } else if (name == "droplast") {
          out_list.assign(input.begin(), input.end() - 1);
        } else if (name == "addhead") {
          out_list.assign(1, input[0]);
          out_list.insert(out_list.end(), input.begin(), input.end());
        } else if (name == "sorted") {
          std::sort(input.begin(), input.end());
        }
      } else {
        if (name == "len") out_int = rand_int(0, max_len + 2);
        else if (name == "dropk") {
          k = rand_int(1, std::min<int>(3, static_cast<int>(input.size())));
          out_list = rand_list(0);
        } else if (name == "finddup" || name == "member" || name == "last") {
          out_int = rand_int(1, 22);
        } else if (name == "droplast" || name == "addhead") {
          out_list = rand_list(0);
        }
        // monadic tasks: a fresh random list usually violates the oracle
      }
      if (list_oracle(name, input, k, out_list, out_int) != positive) continue;

      std::vector<Term> args{detail::int_list(input)};
      if (name == "dropk") args.push_back(Term::constant(k));
      if (spec.head_types.back() == "int" && spec.head_types.size() > 1)
        args.push_back(Term::constant(out_int));
      else if (spec.head_types.back() == "list" && spec.head_types.size() > 1)
        args.push_back(detail::int_list(out_list));
      return Atom{name, std::move(args)};
    }
    throw TaskError("could not sample a " + std::string(positive ? "positive" : "negative") +
                    " example for " + name);
  };

  std::set<std::string> used;
  auto add_examples = [&](int count, bool positive, std::vector<Atom>& out) {
    while (static_cast<int>(out.size()) < count) {
      Atom e = make_example(positive);
      if (used.insert(to_string(e)).second) out.push_back(std::move(e));
    }
  };
  add_examples(n_pos, true, task.positives);
  add_examples(n_neg, false, task.negatives);
  return task;
}

// ---------------------------------------------------------------------------
// String transforms

namespace detail {

inline Program string_bk() {
  static const char* kRules = R"(
alpha_lower(a). alpha_lower(b). alpha_lower(c). alpha_lower(d). alpha_lower(e).
alpha_upper(up_a). alpha_upper(up_b). alpha_upper(up_c). alpha_upper(up_d). alpha_upper(up_e).
digit_char(0). digit_char(1). digit_char(2).
space_char(space).
up_of(a,up_a). up_of(b,up_b). up_of(c,up_c). up_of(d,up_d). up_of(e,up_e).
lo_of(up_a,a). lo_of(up_b,b). lo_of(up_c,c). lo_of(up_d,d). lo_of(up_e,e).
is_empty(([],[])).
not_empty(([_|_],_)).
not_empty(([],[_|_])).
is_uppercase(([H|_],_)):- alpha_upper(H).
not_uppercase(([H|_],_)):- alpha_lower(H).
not_uppercase(([H|_],_)):- digit_char(H).
not_uppercase(([H|_],_)):- space_char(H).
is_letter(([H|_],_)):- alpha_lower(H).
is_letter(([H|_],_)):- alpha_upper(H).
not_letter(([H|_],_)):- digit_char(H).
not_letter(([H|_],_)):- space_char(H).
is_space(([H|_],_)):- space_char(H).
not_space(([H|_],_)):- alpha_lower(H).
not_space(([H|_],_)):- alpha_upper(H).
not_space(([H|_],_)):- digit_char(H).
is_number(([H|_],_)):- digit_char(H).
not_number(([H|_],_)):- alpha_lower(H).
not_number(([H|_],_)):- alpha_upper(H).
not_number(([H|_],_)):- space_char(H).
skip1(([_|T],O),(T,O)).
copy1(([H|T],[H|U]),([H|T],U)).
copyskip1(([H|T],[H|U]),(T,U)).
mk_uppercase(([H|T],[G|U]),(T,U)):- up_of(H,G).
mk_lowercase(([H|T],[G|U]),(T,U)):- lo_of(H,G).
)";
  return parse_program(kRules);
}

inline Term char_list(const std::vector<std::string>& chars) {
  std::vector<Term> elems;
  elems.reserve(chars.size());
  for (const auto& c : chars) {
    if (!c.empty() && std::isdigit(static_cast<unsigned char>(c[0])))
      elems.push_back(Term::constant(static_cast<std::int64_t>(c[0] - '0')));
    else
      elems.push_back(Term::constant(c));
  }
  return Term::list(elems);
}

inline Atom string_example(const std::string& pred, const std::vector<std::string>& in,
                           const std::vector<std::string>& out) {
  return Atom{pred, {Term::pair(char_list(in), char_list(out)),
                     Term::pair(Term::nil(), Term::nil())}};
}

}  // namespace detail

// Five bundled string-transform tasks over the shared vocabulary.
inline std::vector<TaskBundle> string_tasks() {
  struct Pair {
    std::vector<std::string> in, out;
  };
  struct Def {
    std::string name;
    std::vector<Pair> pos;
    std::vector<Pair> neg;
  };
  const std::vector<Def> defs = {
      {"upperone", {{{"a"}, {"up_a"}}, {{"c"}, {"up_c"}}, {{"e"}, {"up_e"}}},
       {{{"a"}, {"a"}}, {{"b"}, {"up_c"}}}},
      {"copyall",
       {{{"a", "b"}, {"a", "b"}}, {{"c"}, {"c"}}, {{"b", "a", "d"}, {"b", "a", "d"}}},
       {{{"a", "b"}, {"a"}}, {{"a"}, {"b"}}, {{"c", "d"}, {"d", "c"}}}},
      {"upperall",
       {{{"a", "b"}, {"up_a", "up_b"}}, {{"c"}, {"up_c"}}, {{"d", "a"}, {"up_d", "up_a"}}},
       {{{"a", "b"}, {"up_a"}}, {{"a"}, {"a"}}, {{"b", "c"}, {"up_c", "up_b"}}}},
      {"lowerall",
       {{{"up_a", "up_b"}, {"a", "b"}}, {{"up_c"}, {"c"}}, {{"up_d", "up_a"}, {"d", "a"}}},
       {{{"up_a"}, {"up_a"}}, {{"up_b", "up_c"}, {"b"}}, {{"up_e"}, {"a"}}}},
      {"skipall",
       {{{"a", "b"}, {}}, {{"c"}, {}}, {{"d", "e", "a"}, {}}},
       {{{"a"}, {"a"}}, {{"b", "c"}, {"c"}}, {{"d"}, {"e"}}}},
  };

  std::vector<TaskBundle> tasks;
  for (const auto& def : defs) {
    TaskBundle task;
    task.name = def.name;
    task.bk = detail::string_bk();
    task.declarations.head = {"f", 2};
    for (const auto& mono : {"is_uppercase", "not_uppercase", "is_empty", "not_empty",
                             "is_space", "not_space", "is_letter", "not_letter",
                             "is_number", "not_number"}) {
      task.declarations.body_preds.emplace_back(mono, 1);
      task.declarations.types[{mono, 1}] = {"state"};
      // is_empty recognises the drained state and may bind the head
      // output; the other tests only inspect a known state.
      task.declarations.directions[{mono, 1}] = {
          std::string(mono) == "is_empty" ? ArgMode::out : ArgMode::in};
    }
    for (const auto& dyadic : {"mk_uppercase", "mk_lowercase", "skip1", "copyskip1",
                               "copy1"}) {
      task.declarations.body_preds.emplace_back(dyadic, 2);
      task.declarations.types[{dyadic, 2}] = {"state", "state"};
      task.declarations.directions[{dyadic, 2}] = {ArgMode::in, ArgMode::out};
    }
    task.declarations.body_preds.emplace_back("f", 2);
    task.declarations.types[{"f", 2}] = {"state", "state"};
    task.declarations.directions[{"f", 2}] = {ArgMode::in, ArgMode::out};
    task.limits = ShapeLimits{3, 4, 5};
    for (const auto& p : def.pos)
      task.positives.push_back(detail::string_example("f", p.in, p.out));
    for (const auto& p : def.neg)
      task.negatives.push_back(detail::string_example("f", p.in, p.out));
    tasks.push_back(std::move(task));
  }
  return tasks;
}

// ---------------------------------------------------------------------------
// Runner

struct RunRecord {
  std::string task;
  LearnerMode mode = LearnerMode::baseline;
  std::uint64_t seed = 0;
  bool solved = false;
  int solution_size = 0;
  std::string solution_text;
  std::uint64_t programs_generated = 0;
  int constraints_spec = 0;
  int constraints_gen = 0;
  int constraints_elim = 0;
  StageTimes stage_times;
};

inline const char* run_record_csv_header() {
  return "task,mode,seed,solved,size,programs,constraints_spec,constraints_gen,"
         "constraints_elim,time_total,time_generate,time_test,time_constrain";
}

inline std::string to_csv_row(const RunRecord& r) {
  std::ostringstream os;
  os << r.task << ',' << to_string(r.mode) << ',' << r.seed << ',' << (r.solved ? 1 : 0)
     << ',' << r.solution_size << ',' << r.programs_generated << ',' << r.constraints_spec
     << ',' << r.constraints_gen << ',' << r.constraints_elim;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << ',' << r.stage_times.total() << ',' << r.stage_times.generate << ','
     << r.stage_times.test << ',' << r.stage_times.constrain;
  return os.str();
}

inline RunRecord run_one(const TaskBundle& task, LearnerMode mode, std::uint64_t seed,
                         const Budget& budget, std::uint64_t max_programs) {
  LearnerConfig config;
  config.mode = mode;
  config.budget = budget;
  config.generator = task.generator_config();
  config.max_programs = max_programs;
  LearnerReport report = learn(task.learn_task(), config);

  RunRecord r;
  r.task = task.name;
  r.mode = mode;
  r.seed = seed;
  r.solved = report.solution.has_value();
  if (report.solution) {
    r.solution_size = report.solution->literal_count();
    r.solution_text = to_string(*report.solution);
  }
  r.programs_generated = report.programs_generated;
  r.constraints_spec = report.constraints_by_kind[ConstraintKind::specialisation];
  r.constraints_gen = report.constraints_by_kind[ConstraintKind::generalisation];
  r.constraints_elim = report.constraints_by_kind[ConstraintKind::elimination];
  r.stage_times = report.stage_times;
  return r;
}

// One record per (task, mode, repeat), ordered by task, then mode, then
// repeat. Worker count comes from `jobs` (the CLI wires LFF_JOBS here).
inline std::vector<RunRecord> run(const std::vector<TaskBundle>& tasks,
                                  const std::vector<LearnerMode>& modes, int repeats,
                                  std::uint64_t seed, const Budget& budget,
                                  std::uint64_t max_programs = 1000000, int jobs = 1) {
  struct Item {
    const TaskBundle* task;
    LearnerMode mode;
    std::uint64_t seed;
  };
  std::vector<Item> items;
  for (const auto& t : tasks)
    for (auto m : modes)
      for (int rep = 0; rep < repeats; ++rep) items.push_back(Item{&t, m, seed});

  std::vector<RunRecord> records(items.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i)
      records[i] = run_one(*items[i].task, items[i].mode, items[i].seed, budget, max_programs);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= items.size()) break;
        records[i] =
            run_one(*items[i].task, items[i].mode, items[i].seed, budget, max_programs);
      }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return records;
}

}  // namespace lff
