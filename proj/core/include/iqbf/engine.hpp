#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "iqbf/formula.hpp"
#include "iqbf/qres.hpp"

namespace iqbf {

struct SolveStats {
  std::uint64_t assignments = 0;
  std::uint64_t backtracks = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t solutions = 0;
  std::uint64_t restarts = 0;
  std::uint64_t learned_clauses = 0;
  std::uint64_t learned_cubes = 0;
  double wall_time_s = 0.0;
};

struct EngineOptions {
  bool keep_learned = true;
  bool merge_selectors = true;
  std::size_t gc_min_disabled = 4096;
  double gc_fraction = 0.25;
  std::size_t model_list_capacity = 128;
  std::size_t model_list_max_capacity = std::size_t{1} << 16;
  std::uint64_t restart_first = 256;
  double restart_factor = 1.5;
  std::size_t learned_limit = 4000;
  std::size_t learned_limit_step = 1000;
  double var_decay = 0.95;
  double constraint_decay = 0.999;
  std::uint64_t seed = 0;
  bool default_phase = false;
};

/// Reported for every constraint the search learns. Literals are in user
/// ids; selector literals are counted but not listed.
struct LearnedEvent {
  ConstraintKind kind = ConstraintKind::Clause;
  std::vector<Literal> literals;
  std::size_t selector_count = 0;
  bool framed = false;  // some antecedent carried a frame selector
  bool final = false;   // ended the search
};

/// QCDCL search over an incrementally modified PCNF. User variables keep
/// their ids at the interface; internally every variable, including the
/// frame selectors of the hidden outermost block, gets a dense id.
class Engine {
 public:
  explicit Engine(EngineOptions options = {});

  const EngineOptions& options() const { return options_; }
  void set_keep_learned(bool keep) { options_.keep_learned = keep; }
  void set_merge_selectors(bool merge);

  // Prefix, 1-based user block positions.
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t add_block(std::size_t position, Quantifier q);
  Quantifier block_quantifier(std::size_t block) const { return blocks_.at(block - 1).quantifier; }
  void add_variable(std::size_t block, Var user);
  bool declared(Var user) const;
  std::size_t block_of(Var user) const;
  Quantifier quantifier_of(Var user) const;
  Prefix user_prefix() const;

  // Clause stack.
  std::size_t push();
  std::size_t pop();
  std::size_t frame_depth() const { return stack_.size(); }
  /// Literals must be declared, duplicate-free and non-tautological.
  void add_clause(std::span<const Literal> user_lits);
  void declare_selector(Var user);
  bool manual_selectors() const { return manual_mode_; }

  /// Throws UsageError if a literal is not assumable given `earlier`.
  void check_assumption(Literal user_lit, std::span<const Literal> earlier) const;

  Verdict solve(std::span<const Literal> user_assumptions, double time_limit_s = 0.0);
  void prepare_solve();

  const SolveStats& stats() const { return stats_; }
  /// Assumptions used by the final constraint of the last solve, closed
  /// under the blocks to their left, in assumption order.
  std::vector<Literal> relevant_assumptions() const;
  /// Quantifier of the leftmost active block at the last solve.
  std::optional<Quantifier> outermost_quantifier() const { return outermost_; }

  // Views in user ids.
  Pcnf enabled_formula() const;
  std::vector<Clause> learned_clauses() const;
  std::vector<Clause> learned_cubes() const;
  std::vector<Clause> stored_models() const;
  std::size_t gc_runs() const { return gc_runs_; }
  std::size_t selector_count() const;

  // Test hooks.
  void seed_model(std::span<const Literal> user_lits);
  void set_learned_callback(std::function<void(const LearnedEvent&)> cb) { on_learned_ = std::move(cb); }
  /// Consistency check of occurrence counts and storage; empty if fine.
  std::string audit() const;

 private:
  enum class Val : std::uint8_t { False = 0, True = 1, Undef = 2 };
  enum class ReasonKind : std::uint8_t { None, Decision, Assumption, Fixed, Clause, Cube };
  enum class Status : std::uint8_t { Inert, Open, Unit, Final };

  struct VarInfo {
    Var user = 0;  // 0 for frame selectors
    Quantifier quantifier = Quantifier::Exists;
    bool selector = false;
    bool retired = false;
    bool active = false;
    std::uint32_t block = 0;  // 0-based user block position
    std::uint32_t rank = 0;
    std::uint32_t occurrences = 0;
    std::int64_t frame = -1;
    Val value = Val::Undef;
    std::uint32_t level = 0;
    std::uint32_t trail_pos = 0;
    ReasonKind reason = ReasonKind::None;
    std::uint32_t reason_index = 0;
    double activity = 0.0;
    bool phase = false;
  };

  struct Stored {
    std::vector<Literal> lits;
    Literal watch[2];
    double activity = 0.0;
    bool learned = false;
    bool deleted = false;
    bool pending = false;     // original clause not yet seen by a solve
    std::int64_t frame = -1;  // original clauses: owning frame, -1 = base
    Var reduced = 0;          // outermost variable reduced in the derivation
    bool dormant = false;     // unusable under the current assumptions
  };

  // What a derivation touched besides plain resolution.
  struct Provenance {
    bool framed = false;
    Var reduced = 0;
  };

  struct Frame {
    Var selector = 0;
    bool popped = false;
  };

  struct UserBlock {
    Quantifier quantifier = Quantifier::Exists;
    std::vector<Var> vars;  // internal ids
  };

  struct Order {
    const std::vector<VarInfo>* vars;
    std::uint32_t rank(Var v) const { return (*vars)[v].rank; }
    Quantifier quantifier(Var v) const { return (*vars)[v].quantifier; }
  };

  struct Outcome {
    enum Kind : std::uint8_t { None, Conflict, Solution, Model } kind = None;
    std::uint32_t index = 0;
  };

  // Variables and literals.
  Var internal(Var user) const;
  Literal to_internal(Literal user) const;
  Literal to_user(Literal l) const { return Literal(vars_[l.var()].user, l.negated()); }
  Var new_var(Quantifier q, Var user);
  Val value(Literal l) const {
    const Val v = vars_[l.var()].value;
    if (v == Val::Undef) return v;
    return (v == Val::True) != l.negated() ? Val::True : Val::False;
  }
  bool is_selector(Var v) const { return vars_[v].selector; }
  Order order() const { return Order{&vars_}; }
  void sort_lits(std::vector<Literal>& lits) const;
  std::vector<std::uint32_t> effective_ranks() const;
  void recompute_ranks();

  // Trail.
  std::uint32_t level() const { return static_cast<std::uint32_t>(trail_lim_.size()); }
  void assign(Literal l, ReasonKind kind, std::uint32_t index);
  void backjump(std::uint32_t target);
  void reset_trail();

  // Watches and propagation.
  std::vector<std::vector<std::uint32_t>>& watch_lists(ConstraintKind k) {
    return k == ConstraintKind::Clause ? clause_watch_ : cube_watch_;
  }
  std::vector<Stored>& store(ConstraintKind k) { return k == ConstraintKind::Clause ? clauses_ : cubes_; }
  const std::vector<Stored>& store(ConstraintKind k) const {
    return k == ConstraintKind::Clause ? clauses_ : cubes_;
  }
  void set_watches(ConstraintKind k, std::uint32_t index, Literal a, Literal b);
  Status scan(ConstraintKind k, std::uint32_t index);
  void attach_all(const std::vector<Literal>& assumptions);
  Outcome visit(ConstraintKind k, Literal lit);
  void unassign(Var v);
  bool has_selector(const std::vector<Literal>& lits) const;
  Outcome propagate();
  void touch(ConstraintKind k, std::uint32_t index, std::uint32_t lvl);

  // Learning.
  struct Analysis {
    std::vector<Literal> lits;
    bool final = false;
    Literal asserting;
    std::uint32_t backjump = 0;
    Provenance prov;
  };
  Analysis analyze(ConstraintKind k, std::vector<Literal> start, Provenance prov);
  Verdict finish(ConstraintKind k, Analysis& a);
  void learn(ConstraintKind k, Analysis& a);
  std::vector<Literal> clean(ConstraintKind k, std::vector<Literal> lits, std::uint32_t time, Var implied,
                             Provenance& prov);
  const std::vector<Literal>& clean_reason(ConstraintKind k, Var v, Provenance& prov);
  void note_reduced(Provenance& prov, Var v) const;
  std::vector<Literal> resolve_on(ConstraintKind k, const std::vector<Literal>& a, const std::vector<Literal>& b,
                                  Var pivot) const;
  void merge_selectors(std::vector<Literal>& lits) const;
  void reduce_in_place(ConstraintKind k, std::vector<Literal>& lits, Provenance& prov) const;
  bool holds_before(ConstraintKind k, Literal l, std::uint32_t time) const;
  std::uint32_t add_learned(ConstraintKind k, std::vector<Literal> lits, Var reduced = 0);
  void report_learned(ConstraintKind k, const std::vector<Literal>& lits, bool framed, bool final);
  void bump_var(Var v);
  void decay_activities();
  void reduce_learned(ConstraintKind k);
  bool locked(ConstraintKind k, std::uint32_t index) const;
  std::vector<Literal> current_model() const;
  void store_model(std::vector<Literal> model);

  // Search.
  std::optional<Literal> pick_branch();
  Verdict search(double time_limit_s);

  // Incremental maintenance.
  bool frame_enabled(std::int64_t frame) const { return frame < 0 || !frames_[frame].popped; }
  bool clause_disabled(const Stored& c) const;
  void wipe_learned();
  void maybe_collect_garbage();
  void compact_storage();

  EngineOptions options_;
  std::vector<VarInfo> vars_;  // index 0 unused
  std::vector<Var> user_to_internal_;
  std::vector<UserBlock> blocks_;
  std::vector<Frame> frames_;
  std::vector<std::size_t> stack_;
  bool manual_mode_ = false;
  bool used_frames_ = false;

  std::vector<Stored> clauses_;
  std::vector<Stored> cubes_;
  std::deque<std::vector<Literal>> models_;  // L, internal literals
  std::size_t model_capacity_ = 0;

  std::vector<std::vector<std::uint32_t>> clause_watch_;
  std::vector<std::vector<std::uint32_t>> cube_watch_;
  std::vector<std::vector<std::uint32_t>> occurs_;  // original clauses per literal
  std::vector<std::uint32_t> true_count_;
  std::size_t unsatisfied_ = 0;
  std::vector<std::vector<std::uint32_t>> touched_;  // per level, tagged constraint refs
  std::vector<std::uint32_t> visit_stamp_[2];
  std::uint32_t stamp_ = 0;
  std::optional<std::uint32_t> pending_conflict_;
  std::optional<std::uint32_t> pending_solution_;

  std::vector<Literal> trail_;
  std::vector<std::uint32_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<std::vector<Var>> group_vars_;  // active user vars by rank
  std::vector<std::uint32_t> group_free_;

  // Per-analysis memo of cleaned reasons.
  std::vector<std::uint32_t> memo_stamp_;
  std::vector<std::vector<Literal>> memo_;
  std::vector<Provenance> memo_prov_;
  std::uint32_t memo_epoch_ = 0;

  double var_inc_ = 1.0;
  double constraint_inc_ = 1.0;
  std::size_t deletion_rounds_[2] = {0, 0};
  std::size_t learned_live_[2] = {0, 0};
  std::mt19937_64 rng_;

  SolveStats stats_;
  std::vector<Literal> final_assumptions_;
  std::vector<Literal> last_assumptions_;
  std::optional<Quantifier> outermost_;
  std::size_t gc_runs_ = 0;
  std::function<void(const LearnedEvent&)> on_learned_;
};

}  // namespace iqbf
