#pragma once

// The generate-test-constrain loop, in two modes. Baseline records
// constraints from whole tested hypotheses only; explain mode
// additionally traces SLD-trees, extracts failing sub-programs and
// records their constraints.
//
// Constraint policy for a tested hypothesis H:
//   - inconsistent (some incorrect answer): generalisation(H) only.
//     Generalisations of H can never drop the incorrect answer, while
//     recording the specialisation side as well would over-prune
//     relative to the search behaviour this loop reproduces; soundness
//     is unaffected by recording less.
//   - incomplete and consistent: specialisation(H); when H entails no
//     positive example at all, also elimination(H) for a single
//     non-recursive clause (multi-clause or recursive zero-coverage
//     programs keep only the specialisation record).
// Sub-program constraints from explain mode are added on top and are
// deduplicated by the store.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lff/canonical.hpp"
#include "lff/constraints.hpp"
#include "lff/explain.hpp"
#include "lff/generate.hpp"
#include "lff/prover.hpp"
#include "lff/term.hpp"

namespace lff {

struct TaskError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class LearnerMode { baseline, explain };

inline const char* to_string(LearnerMode m) {
  return m == LearnerMode::baseline ? "baseline" : "explain";
}

struct LearnTask {
  Program bk;
  std::vector<Atom> positives;
  std::vector<Atom> negatives;
};

struct LearnerConfig {
  LearnerMode mode = LearnerMode::explain;
  Budget budget;
  GeneratorConfig generator;
  std::uint64_t max_programs = 1000000;
  bool collect_stage_times = true;
  bool collect_generated = false;  // keep the yielded sequence (tests)
};

struct TestOutcome {
  std::vector<int> missing;    // indices into task.positives
  std::vector<int> incorrect;  // indices into task.negatives
  // Traces for the failing examples, populated only when tracing.
  std::vector<std::pair<Atom, ProofResult>> missing_traces;
  std::vector<std::pair<Atom, ProofResult>> incorrect_traces;

  bool is_solution() const { return missing.empty() && incorrect.empty(); }
};

struct StageTimes {
  double generate = 0;
  double test = 0;
  double constrain = 0;
  double total() const { return generate + test + constrain; }
};

struct LearnerReport {
  std::optional<Program> solution;
  std::uint64_t programs_generated = 0;
  std::map<ConstraintKind, int> constraints_by_kind;
  StageTimes stage_times;
  bool exhausted = false;
  std::vector<Program> generated;  // filled when collect_generated
};

inline TestOutcome test(const Program& bk, const Program& h, const LearnTask& task,
                        const Budget& budget, bool trace) {
  TestOutcome out;
  for (std::size_t i = 0; i < task.positives.size(); ++i) {
    ProofResult r = prove(bk, h, task.positives[i], budget, trace);
    if (!r.entailed) {
      out.missing.push_back(static_cast<int>(i));
      if (trace) out.missing_traces.emplace_back(task.positives[i], std::move(r));
    }
  }
  for (std::size_t i = 0; i < task.negatives.size(); ++i) {
    ProofResult r = prove(bk, h, task.negatives[i], budget, trace);
    if (r.entailed) {
      out.incorrect.push_back(static_cast<int>(i));
      if (trace) out.incorrect_traces.emplace_back(task.negatives[i], std::move(r));
    }
  }
  return out;
}

namespace detail {

class StageClock {
 public:
  explicit StageClock(bool enabled) : enabled_(enabled) {}
  template <typename F>
  auto time(double& bucket, F&& f) {
    if (!enabled_) return f();
    auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      bucket += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    } else {
      auto r = f();
      bucket += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return r;
    }
  }

 private:
  bool enabled_;
};

}  // namespace detail

inline LearnerReport learn(const LearnTask& task, const LearnerConfig& config) {
  if (config.max_programs < 1) throw TaskError("max_programs must be at least 1");
  for (const auto& e : task.positives)
    if (!is_ground(e)) throw TaskError("positive example is not ground: " + to_string(e));
  for (const auto& e : task.negatives)
    if (!is_ground(e)) throw TaskError("negative example is not ground: " + to_string(e));

  LearnerReport report;
  ConstraintStore store;
  HypothesisGenerator gen(config.generator);
  detail::StageClock clock(config.collect_stage_times);
  const bool explain = config.mode == LearnerMode::explain;

  auto add = [&](Constraint c) { store.add(std::move(c)); };

  while (report.programs_generated < config.max_programs) {
    std::optional<Program> h =
        clock.time(report.stage_times.generate, [&] { return gen.next(store); });
    if (!h) {
      report.exhausted = true;
      break;
    }
    ++report.programs_generated;
    if (config.collect_generated) report.generated.push_back(*h);

    TestOutcome outcome = clock.time(report.stage_times.test, [&] {
      return test(task.bk, *h, task, config.budget, explain);
    });

    if (outcome.is_solution()) {
      // Final verification before returning.
      TestOutcome verify = test(task.bk, *h, task, config.budget, false);
      if (!verify.is_solution())
        throw std::logic_error("solution failed re-verification");
      report.solution = *h;
      break;
    }

    FailureExplanation expl;
    if (explain) {
      expl = clock.time(report.stage_times.test, [&] {
        return explain_failure(task.bk, *h, outcome.missing_traces, outcome.incorrect_traces,
                               config.budget, task.positives);
      });
    }

    clock.time(report.stage_times.constrain, [&] {
      const bool inconsistent = !outcome.incorrect.empty();
      const bool incomplete = !outcome.missing.empty();
      auto example_id = [&](const std::vector<int>& ids, const std::vector<Atom>& pool) {
        return ids.empty() ? std::string() : to_string(pool[static_cast<std::size_t>(ids[0])]);
      };
      if (inconsistent) {
        add(Constraint{ConstraintKind::generalisation, *h, ConstraintOrigin::hypothesis,
                       example_id(outcome.incorrect, task.negatives)});
      } else if (incomplete) {
        add(Constraint{ConstraintKind::specialisation, *h, ConstraintOrigin::hypothesis,
                       example_id(outcome.missing, task.positives)});
        if (outcome.missing.size() == task.positives.size() && h->clauses.size() == 1 &&
            !is_recursive(*h)) {
          add(Constraint{ConstraintKind::elimination, *h, ConstraintOrigin::hypothesis,
                         example_id(outcome.missing, task.positives)});
        }
      }
      if (explain)
        for (auto& c : constraints_from(expl)) add(std::move(c));
    });
  }

  if (!report.solution && !report.exhausted && report.programs_generated >= config.max_programs)
    report.exhausted = true;

  for (ConstraintKind k : {ConstraintKind::specialisation, ConstraintKind::generalisation,
                           ConstraintKind::elimination})
    report.constraints_by_kind[k] = store.count(k);
  return report;
}

}  // namespace lff
