#pragma once

// Size-ordered enumeration of declaration-consistent, well-formed
// hypotheses, and a pool mode that streams an explicit list of programs
// in the same order.
//
// Hypotheses are built from canonical material only: head arguments are
// the first distinct variables A, B, ..., body arguments are variables
// drawn in first-occurrence order, and every size class is deduplicated
// by canonical key and drained in key order. Programs are yielded in
// non-decreasing total-literal-count order with ties broken by key.
//
// Well-formedness constraints (selectable by name):
//   head-connected       every head variable occurs in the body
//   no-duplicate-literal no repeated body literal in a clause
//   connected-body       every body literal reaches the head through
//                        shared variables
//   forward-chained      the body threads a state chain from the first
//                        head argument to the second
//
// When directions are declared, a literal's `in` arguments must be bound
// by the head inputs or an earlier literal; when types are declared,
// variable types must be consistent. Hypothesis arguments are variables
// only.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lff/canonical.hpp"
#include "lff/constraints.hpp"
#include "lff/term.hpp"

namespace lff {

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ArgMode { in, out };

struct Declarations {
  std::pair<std::string, int> head;
  std::vector<std::pair<std::string, int>> body_preds;
  std::map<std::pair<std::string, int>, std::vector<std::string>> types;
  std::map<std::pair<std::string, int>, std::vector<ArgMode>> directions;
};

struct ShapeLimits {
  int max_clauses = 1;
  int max_body_literals = 1;
  int max_vars = 1;
};

inline const std::set<std::string>& default_builtin_constraints() {
  static const std::set<std::string> defaults = {"head-connected", "no-duplicate-literal",
                                                 "connected-body"};
  return defaults;
}

// Directive spellings use underscores; normalize to the hyphenated names.
inline std::string normalize_constraint_name(std::string name) {
  for (auto& c : name)
    if (c == '_') c = '-';
  return name;
}

struct GeneratorConfig {
  static GeneratorConfig enumerative(Declarations decls, ShapeLimits limits,
                                     std::set<std::string> builtins = {}) {
    GeneratorConfig cfg;
    cfg.declarations = std::move(decls);
    cfg.limits = limits;
    cfg.builtin_constraints = default_builtin_constraints();
    for (const auto& b : builtins)
      cfg.builtin_constraints.insert(normalize_constraint_name(b));
    return cfg;
  }

  static GeneratorConfig pool(std::vector<Program> programs) {
    GeneratorConfig cfg;
    cfg.pool_programs = std::move(programs);
    for (auto& p : *cfg.pool_programs) p = canonicalize(std::move(p));
    std::set<std::string> keys;
    for (const auto& p : *cfg.pool_programs)
      if (!keys.insert(p.canonical_key).second)
        throw std::invalid_argument("pool programs must be distinct");
    return cfg;
  }

  bool is_pool() const { return pool_programs.has_value(); }

  Declarations declarations;
  ShapeLimits limits;
  std::set<std::string> builtin_constraints;
  std::optional<std::vector<Program>> pool_programs;
};

namespace detail {

inline std::string canonical_var_name(int index) {
  if (index < 26) return std::string(1, static_cast<char>('A' + index));
  return "Z" + std::to_string(index - 25);
}

struct PoolClause {
  Clause clause;
  std::string key;
};

// Enumerates canonical clauses of a fixed body length for one head shape.
class ClauseEnumerator {
 public:
  ClauseEnumerator(const Declarations& decls, const ShapeLimits& limits,
                   const std::set<std::string>& builtins)
      : decls_(decls), limits_(limits) {
    if (limits_.max_vars > 26) throw std::invalid_argument("max_vars above 26");
    head_connected_ = builtins.count("head-connected") > 0;
    no_dup_ = builtins.count("no-duplicate-literal") > 0;
    connected_ = builtins.count("connected-body") > 0;
    forward_chained_ = builtins.count("forward-chained") > 0;
    preds_ = decls_.body_preds;
    std::sort(preds_.begin(), preds_.end());
    preds_.erase(std::unique(preds_.begin(), preds_.end()), preds_.end());
  }

  std::vector<PoolClause> enumerate(int body_len) {
    out_.clear();
    seen_.clear();
    const int head_arity = decls_.head.second;
    if (head_arity > limits_.max_vars) return {};
    if (body_len > limits_.max_body_literals) return {};

    head_.predicate = decls_.head.first;
    head_.args.clear();
    for (int i = 0; i < head_arity; ++i)
      head_.args.push_back(Term::variable(canonical_var_name(i)));

    var_types_.assign(static_cast<std::size_t>(limits_.max_vars), std::string());
    auto head_types = decls_.types.find(decls_.head);
    if (head_types != decls_.types.end())
      for (int i = 0; i < head_arity && i < static_cast<int>(head_types->second.size()); ++i)
        var_types_[static_cast<std::size_t>(i)] = head_types->second[static_cast<std::size_t>(i)];

    std::uint32_t bound = 0;
    auto head_dirs = decls_.directions.find(decls_.head);
    for (int i = 0; i < head_arity; ++i) {
      bool is_in = true;
      if (head_dirs != decls_.directions.end() &&
          i < static_cast<int>(head_dirs->second.size()))
        is_in = head_dirs->second[static_cast<std::size_t>(i)] == ArgMode::in;
      if (is_in) bound |= 1u << i;
    }

    body_.clear();
    if (forward_chained_) {
      chain(body_len, head_arity);
    } else {
      extend(body_len, head_arity, bound);
    }
    std::vector<PoolClause> result = std::move(out_);
    std::sort(result.begin(), result.end(),
              [](const PoolClause& a, const PoolClause& b) { return a.key < b.key; });
    return result;
  }

 private:
  struct Lit {
    int pred;
    std::vector<int> args;
    friend bool operator==(const Lit& a, const Lit& b) {
      return a.pred == b.pred && a.args == b.args;
    }
  };

  void extend(int remaining, int num_vars, std::uint32_t bound) {
    if (remaining == 0) {
      finish(num_vars);
      return;
    }
    for (int p = 0; p < static_cast<int>(preds_.size()); ++p) {
      const int arity = preds_[static_cast<std::size_t>(p)].second;
      std::vector<int> args(static_cast<std::size_t>(arity), 0);
      pick_args(p, 0, arity, num_vars, num_vars, bound, remaining, args);
    }
  }

  // Normalized shape of a literal for order comparisons: variables
  // older than `base` keep their index, fresher ones are numbered from
  // 1000 by first occurrence, so the comparison is stable under the
  // renumbering an adjacent swap would cause.
  static std::pair<int, std::vector<int>> normal_shape(const Lit& lit, int base) {
    std::vector<int> mapped;
    mapped.reserve(lit.args.size());
    std::map<int, int> fresh;
    for (int v : lit.args) {
      if (v < base) {
        mapped.push_back(v);
      } else {
        auto [it, is_new] = fresh.emplace(v, 1000 + static_cast<int>(fresh.size()));
        mapped.push_back(it->second);
      }
    }
    return {lit.pred, std::move(mapped)};
  }

  // Rejects orderings with an improving adjacent swap: when the new
  // literal does not use variables introduced by its predecessor, the
  // two could swap, so only the non-decreasing arrangement survives.
  // Every literal multiset keeps at least one valid arrangement.
  bool order_canonical(const Lit& lit) const {
    if (body_.empty()) return true;
    const Lit& prev = body_.back();
    int prev_base = lit_base_vars_.back();
    for (int v : lit.args)
      if (v >= prev_base) {
        bool introduced_by_prev = false;
        for (int pv : prev.args)
          if (pv == v) introduced_by_prev = true;
        if (introduced_by_prev) return true;  // depends on predecessor
      }
    return normal_shape(prev, prev_base) <= normal_shape(lit, prev_base);
  }

  // Chooses argument variables left to right. Fresh variables must be
  // introduced in index order, which keeps the stream canonical.
  void pick_args(int pred, int pos, int arity, int base_vars, int cur_vars,
                 std::uint32_t bound, int remaining, std::vector<int>& args) {
    if (pos == arity) {
      Lit lit{pred, args};
      if (no_dup_) {
        for (const auto& prev : body_)
          if (prev == lit) return;
      }
      if (!order_canonical(lit)) return;
      std::uint32_t new_bound = bound;
      for (int v : args) new_bound |= 1u << v;
      body_.push_back(lit);
      lit_base_vars_.push_back(base_vars);
      extend(remaining - 1, cur_vars, new_bound);
      lit_base_vars_.pop_back();
      body_.pop_back();
      return;
    }
    const auto& pred_sig = preds_[static_cast<std::size_t>(pred)];
    auto type_it = decls_.types.find(pred_sig);
    const std::string* want_type = nullptr;
    if (type_it != decls_.types.end() && pos < static_cast<int>(type_it->second.size()))
      want_type = &type_it->second[static_cast<std::size_t>(pos)];
    auto dir_it = decls_.directions.find(pred_sig);
    bool needs_bound = false;
    if (dir_it != decls_.directions.end() && pos < static_cast<int>(dir_it->second.size()))
      needs_bound = dir_it->second[static_cast<std::size_t>(pos)] == ArgMode::in;

    int limit = std::min(cur_vars + 1, limits_.max_vars);
    for (int v = 0; v < limit; ++v) {
      bool fresh = v >= cur_vars;
      if (fresh && v != cur_vars) continue;
      if (needs_bound && !(bound & (1u << v))) continue;
      std::string& vt = var_types_[static_cast<std::size_t>(v)];
      std::string saved = vt;
      if (want_type) {
        if (!vt.empty() && vt != *want_type) continue;
        vt = *want_type;
      }
      args[static_cast<std::size_t>(pos)] = v;
      pick_args(pred, pos + 1, arity, base_vars, fresh ? cur_vars + 1 : cur_vars, bound,
                remaining, args);
      vt = std::move(saved);
    }
  }

  // Forward-chained bodies: dyadic literals threading a fresh-state
  // chain from head argument 0 to head argument 1.
  void chain(int body_len, int head_arity) {
    if (head_arity != 2 || body_len < 1) return;
    if (body_len + 1 > limits_.max_vars) return;
    chain_step(body_len, 0, 0);
  }

  void chain_step(int body_len, int pos, int prev_var) {
    if (pos == body_len) {
      finish(body_len + 1);
      return;
    }
    const bool last = pos + 1 == body_len;
    const int next_var = last ? 1 : pos + 2;
    for (int p = 0; p < static_cast<int>(preds_.size()); ++p) {
      if (preds_[static_cast<std::size_t>(p)].second != 2) continue;
      Lit lit{p, {prev_var, next_var}};
      if (no_dup_) {
        bool dup = false;
        for (const auto& prev : body_)
          if (prev == lit) dup = true;
        if (dup) continue;
      }
      body_.push_back(lit);
      chain_step(body_len, pos + 1, next_var);
      body_.pop_back();
    }
  }

  void finish(int num_vars) {
    const int head_arity = decls_.head.second;
    std::uint32_t head_mask = (head_arity >= 32) ? ~0u : ((1u << head_arity) - 1);
    std::uint32_t body_vars = 0;
    for (const auto& lit : body_)
      for (int v : lit.args) body_vars |= 1u << v;

    if (head_connected_ && (head_mask & ~body_vars) != 0) return;

    // Declared head outputs must be produced by the body.
    auto head_dirs = decls_.directions.find(decls_.head);
    if (head_dirs != decls_.directions.end()) {
      for (int i = 0; i < head_arity && i < static_cast<int>(head_dirs->second.size()); ++i)
        if (head_dirs->second[static_cast<std::size_t>(i)] == ArgMode::out &&
            !(body_vars & (1u << i)))
          return;
    }

    if (connected_ && !body_.empty()) {
      // Component labels over variables; literals sharing a variable
      // merge. Head variables seed component 0.
      std::vector<int> comp(static_cast<std::size_t>(num_vars), -1);
      for (int i = 0; i < head_arity; ++i) comp[static_cast<std::size_t>(i)] = 0;
      int next_comp = 1;
      bool changed = true;
      std::vector<int> lit_comp(body_.size(), -1);
      for (std::size_t li = 0; li < body_.size(); ++li) {
        int c = -1;
        for (int v : body_[li].args)
          if (comp[static_cast<std::size_t>(v)] >= 0) c = comp[static_cast<std::size_t>(v)];
        if (c < 0) c = next_comp++;
        lit_comp[li] = c;
        for (int v : body_[li].args) comp[static_cast<std::size_t>(v)] = c;
      }
      // Iterate merges until stable (shared variables can join later).
      while (changed) {
        changed = false;
        for (std::size_t li = 0; li < body_.size(); ++li) {
          int c = lit_comp[li];
          for (int v : body_[li].args) {
            int vc = comp[static_cast<std::size_t>(v)];
            if (vc != c) {
              int lo = std::min(vc, c), hi = std::max(vc, c);
              for (auto& x : comp)
                if (x == hi) x = lo;
              for (auto& x : lit_comp)
                if (x == hi) x = lo;
              c = lo;
              changed = true;
            }
          }
        }
      }
      for (std::size_t li = 0; li < body_.size(); ++li)
        if (lit_comp[li] != 0) return;
    }

    Clause c;
    c.head = head_;
    c.body.reserve(body_.size());
    for (const auto& lit : body_) {
      Atom a;
      a.predicate = preds_[static_cast<std::size_t>(lit.pred)].first;
      a.args.reserve(lit.args.size());
      for (int v : lit.args) a.args.push_back(Term::variable(canonical_var_name(v)));
      c.body.push_back(std::move(a));
    }
    std::string key = canonical_clause_key(c);
    if (!seen_.insert(key).second) return;
    out_.push_back(PoolClause{std::move(c), std::move(key)});
  }

  const Declarations& decls_;
  ShapeLimits limits_;
  std::vector<std::pair<std::string, int>> preds_;
  bool head_connected_ = true;
  bool no_dup_ = true;
  bool connected_ = true;
  bool forward_chained_ = false;

  Atom head_;
  std::vector<Lit> body_;
  std::vector<int> lit_base_vars_;
  std::vector<std::string> var_types_;
  std::vector<PoolClause> out_;
  std::set<std::string> seen_;
};

}  // namespace detail

class HypothesisGenerator {
 public:
  explicit HypothesisGenerator(GeneratorConfig config) : config_(std::move(config)) {
    if (config_.is_pool()) {
      pool_ = *config_.pool_programs;
      std::stable_sort(pool_.begin(), pool_.end(), [](const Program& a, const Program& b) {
        int la = a.literal_count(), lb = b.literal_count();
        return la != lb ? la < lb : a.canonical_key < b.canonical_key;
      });
    } else {
      if (config_.limits.max_clauses < 1 || config_.limits.max_body_literals < 1 ||
          config_.limits.max_vars < 1)
        throw std::invalid_argument("shape limits must be at least 1");
      max_total_ = config_.limits.max_clauses * (1 + config_.limits.max_body_literals);
    }
  }

  // Next unpruned hypothesis, or absent when the bounded space is done.
  std::optional<Program> next(const ConstraintStore& store) {
    if (config_.is_pool()) {
      while (pool_index_ < pool_.size()) {
        const Program& p = pool_[pool_index_++];
        if (store.prunes(p)) continue;
        return p;
      }
      return std::nullopt;
    }
    while (true) {
      while (class_index_ < current_class_.size()) {
        const Program& p = current_class_[class_index_++];
        if (store.prunes(p)) continue;
        return p;
      }
      if (current_size_ >= max_total_) return std::nullopt;
      ++current_size_;
      current_class_ = build_size_class(current_size_);
      class_index_ = 0;
    }
  }

  // Size of the bounded space under an empty store. Enumerates the full
  // space, so it is intended for desk-scale configurations; refuses
  // above `ceiling`.
  static std::uint64_t count_space(const GeneratorConfig& config,
                                   std::uint64_t ceiling = 2000000) {
    if (config.is_pool()) return config.pool_programs->size();
    HypothesisGenerator gen(config);
    std::uint64_t total = 0;
    for (int s = 1; s <= gen.max_total_; ++s) {
      total += gen.build_size_class(s).size();
      if (total > ceiling)
        throw ResourceError("hypothesis space exceeds ceiling of " +
                            std::to_string(ceiling));
    }
    return total;
  }

 private:
  // Clause pools depend only on the bias, so runs over the same task
  // share them process-wide.
  std::string bias_fingerprint() const {
    std::string fp = config_.declarations.head.first + "/" +
                     std::to_string(config_.declarations.head.second);
    for (const auto& [p, a] : config_.declarations.body_preds)
      fp += "," + p + "/" + std::to_string(a);
    for (const auto& [pred, types] : config_.declarations.types) {
      fp += ";t" + pred.first;
      for (const auto& t : types) fp += ":" + t;
    }
    for (const auto& [pred, modes] : config_.declarations.directions) {
      fp += ";d" + pred.first;
      for (auto m : modes) fp += m == ArgMode::in ? ":i" : ":o";
    }
    fp += ";l" + std::to_string(config_.limits.max_clauses) + ":" +
          std::to_string(config_.limits.max_body_literals) + ":" +
          std::to_string(config_.limits.max_vars);
    for (const auto& c : config_.builtin_constraints) fp += ";c" + c;
    return fp;
  }

  const std::vector<detail::PoolClause>& clause_pool(int body_len) {
    auto it = clause_pools_.find(body_len);
    if (it != clause_pools_.end()) return *it->second;

    static std::mutex cache_mutex;
    static std::map<std::pair<std::string, int>,
                    std::shared_ptr<const std::vector<detail::PoolClause>>>
        cache;
    if (fingerprint_.empty()) fingerprint_ = bias_fingerprint();
    {
      std::lock_guard<std::mutex> lock(cache_mutex);
      auto hit = cache.find({fingerprint_, body_len});
      if (hit != cache.end())
        return *clause_pools_.emplace(body_len, hit->second).first->second;
    }
    detail::ClauseEnumerator en(config_.declarations, config_.limits,
                                config_.builtin_constraints);
    auto pool = std::make_shared<const std::vector<detail::PoolClause>>(
        en.enumerate(body_len));
    {
      std::lock_guard<std::mutex> lock(cache_mutex);
      cache.emplace(std::make_pair(fingerprint_, body_len), pool);
    }
    return *clause_pools_.emplace(body_len, std::move(pool)).first->second;
  }

  // All canonical programs whose clause literal counts sum to `total`,
  // sorted by canonical key. Clause multisets are enumerated once: slots
  // are ordered by clause size, and equal-size slots take strictly
  // key-increasing clauses.
  std::vector<Program> build_size_class(int total) {
    std::vector<Program> out;
    std::vector<int> parts;
    partition(total, 1 + config_.limits.max_body_literals, parts, out);
    std::sort(out.begin(), out.end(), [](const Program& a, const Program& b) {
      return a.canonical_key < b.canonical_key;
    });
    return out;
  }

  void partition(int remaining, int max_part, std::vector<int>& parts,
                 std::vector<Program>& out) {
    if (remaining == 0) {
      assemble(parts, out);
      return;
    }
    if (static_cast<int>(parts.size()) >= config_.limits.max_clauses) return;
    int lo = parts.empty() ? 1 : parts.back();
    for (int p = lo; p <= std::min(max_part, remaining); ++p) {
      parts.push_back(p);
      partition(remaining - p, max_part, parts, out);
      parts.pop_back();
    }
  }

  void assemble(const std::vector<int>& parts, std::vector<Program>& out) {
    std::vector<const std::vector<detail::PoolClause>*> pools;
    pools.reserve(parts.size());
    for (int p : parts) {
      pools.push_back(&clause_pool(p - 1));
      if (pools.back()->empty()) return;
    }
    std::vector<std::size_t> choice(parts.size(), 0);
    assemble_slot(parts, pools, 0, choice, out);
  }

  void assemble_slot(const std::vector<int>& parts,
                     const std::vector<const std::vector<detail::PoolClause>*>& pools,
                     std::size_t slot, std::vector<std::size_t>& choice,
                     std::vector<Program>& out) {
    if (slot == parts.size()) {
      Program p;
      std::vector<std::string> keys;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& pc = (*pools[i])[choice[i]];
        p.clauses.push_back(pc.clause);
        keys.push_back(pc.key);
      }
      std::sort(keys.begin(), keys.end());
      for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i) p.canonical_key += ';';
        p.canonical_key += keys[i];
      }
      out.push_back(std::move(p));
      return;
    }
    std::size_t start = 0;
    if (slot > 0 && parts[slot] == parts[slot - 1]) start = choice[slot - 1] + 1;
    for (std::size_t i = start; i < pools[slot]->size(); ++i) {
      choice[slot] = i;
      assemble_slot(parts, pools, slot + 1, choice, out);
    }
  }

  GeneratorConfig config_;
  std::vector<Program> pool_;
  std::size_t pool_index_ = 0;

  int max_total_ = 0;
  int current_size_ = 0;
  std::vector<Program> current_class_;
  std::size_t class_index_ = 0;
  std::string fingerprint_;
  std::map<int, std::shared_ptr<const std::vector<detail::PoolClause>>> clause_pools_;
};

inline std::uint64_t count_space(const GeneratorConfig& config,
                                 std::uint64_t ceiling = 2000000) {
  return HypothesisGenerator::count_space(config, ceiling);
}

}  // namespace lff
