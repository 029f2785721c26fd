#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bwplan/pddl.hpp"
#include "bwplan/plan.hpp"

namespace bwplan {

/// Semantics selector. Strict4Ops is the classic blocksworld-4ops reading:
/// stack only from the hand, unstack only to the hand. AppendixDisjunctive
/// additionally allows stacking a clear table block with a free hand and
/// unstacking directly to the table; unstack then has two possible outcomes
/// and verification explores both branches.
enum class SemanticsMode { Strict4Ops, AppendixDisjunctive };

/// Why a step could not be applied. `violated` holds symbolic precondition
/// identifiers from the fixed vocabulary:
///   pickup.clear pickup.on_table pickup.arm_empty
///   putdown.holding
///   stack.holding stack.dest_clear stack.src_on_table stack.src_clear stack.arm_empty
///   unstack.on unstack.clear unstack.arm_empty
struct StepFailure {
  int step_index = 0;  // 1-based
  Action action;
  std::vector<std::string> violated;
  std::string explanation;
};

enum class VerdictStatus { Valid, Infeasible, GoalUnsatisfied };

struct Verdict {
  VerdictStatus status = VerdictStatus::Valid;
  std::optional<StepFailure> failure;        // Infeasible only
  std::vector<Atom> missing;                 // GoalUnsatisfied only
  std::optional<WorldState> final_state;     // GoalUnsatisfied only

  bool valid() const { return status == VerdictStatus::Valid; }
};

enum class CexKind { InvalidPrefix, InvalidWholePlan, GoalGap };

/// Verifier feedback for the synthesis loop. For InvalidPrefix, `plan` holds
/// the minimal infeasible prefix: its first k-1 actions execute and the k-th
/// fails, so every plan extending it is invalid.
struct Counterexample {
  CexKind kind = CexKind::InvalidPrefix;
  Plan plan;                  // prefix or whole candidate
  std::vector<Atom> missing;  // GoalGap only
};

/// Raised by apply() when preconditions fail.
class PreconditionViolation : public Error {
 public:
  explicit PreconditionViolation(StepFailure f)
      : Error(f.explanation), failure(std::move(f)) {}
  StepFailure failure;
};

/// Applies one action. In AppendixDisjunctive mode where unstack admits both
/// the to-hand and to-table outcome, the to-hand result is returned; use
/// successors() to see both. Throws PreconditionViolation.
WorldState apply(const WorldState& state, const Action& action, SemanticsMode mode,
                 const Problem& problem, int step_index = 0);

/// All post-states reachable by one action (empty when preconditions fail;
/// at most 2, and only unstack in AppendixDisjunctive mode yields 2). On an
/// empty result, `failure` (if non-null) receives the diagnosis.
std::vector<WorldState> successors(const WorldState& state, const Action& action,
                                   SemanticsMode mode, const Problem& problem,
                                   int step_index, StepFailure* failure);

/// Runs the plan from the (normalized) init state and checks the goal at the
/// end. In AppendixDisjunctive mode a plan is Valid iff some choice of
/// unstack outcomes executes fully and reaches a goal-satisfying state,
/// matching the existential reading of the two-case constraints.
Verdict verify(const Problem& problem, const Plan& plan,
               SemanticsMode mode = SemanticsMode::Strict4Ops);

/// Turns a non-Valid verdict into loop feedback: Infeasible at step k maps
/// to InvalidPrefix(actions 1..k), GoalUnsatisfied to GoalGap(missing).
/// Throws ContractViolation if the plan verifies Valid.
Counterexample minimal_infeasible_prefix(const Problem& problem, const Plan& plan,
                                         SemanticsMode mode = SemanticsMode::Strict4Ops);

/// BFS over Strict4Ops transitions from the init state, up to `depth`
/// actions, in deterministic discovery order. Guarded to <= 6 blocks
/// (throws TooLarge); the full 6-block space has 7057 states.
std::vector<WorldState> reachable_states(const Problem& problem, std::size_t depth);

/// Goal atoms not holding in `state`.
std::vector<Atom> missing_goal_atoms(const Problem& problem, const WorldState& state);

}  // namespace bwplan
