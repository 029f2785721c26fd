#include "bwplan/semantics.hpp"

#include <algorithm>
#include <queue>
#include <unordered_set>

namespace bwplan {

namespace {

constexpr std::size_t kBranchBound = 4096;

std::string phrase(const Problem& p, const Action& act, const std::string& id) {
  const std::string& a = p.block_name(act.a);
  if (id == "pickup.clear" || id == "stack.src_clear" || id == "unstack.clear")
    return a + " is not clear";
  if (id == "pickup.on_table" || id == "stack.src_on_table")
    return a + " is not on the table";
  if (id == "pickup.arm_empty" || id == "stack.arm_empty" || id == "unstack.arm_empty")
    return "the arm is not empty";
  if (id == "putdown.holding" || id == "stack.holding")
    return a + " is not being held";
  if (id == "stack.dest_clear") return p.block_name(act.b) + " is not clear";
  if (id == "unstack.on") return a + " is not on " + p.block_name(act.b);
  return id;
}

StepFailure make_failure(const Problem& p, int step_index, const Action& act,
                         std::vector<std::string> violated) {
  StepFailure f;
  f.step_index = step_index;
  f.action = act;
  f.violated = std::move(violated);
  f.explanation = "step " + std::to_string(step_index) + " (" +
                  action_to_string(act, p.objects) + "): ";
  for (std::size_t i = 0; i < f.violated.size(); ++i) {
    if (i) f.explanation += "; ";
    f.explanation += phrase(p, act, f.violated[i]);
  }
  return f;
}

WorldState after_pick_up(WorldState s, BlockId b) {
  s.support[b] = Support::hand();
  s.holding = b;
  return s;
}

WorldState after_put_down(WorldState s, BlockId b) {
  s.support[b] = Support::table();
  s.holding.reset();
  return s;
}

WorldState after_stack(WorldState s, BlockId a, BlockId c) {
  s.support[a] = Support::on(c);
  s.holding.reset();
  return s;
}

}  // namespace

std::vector<WorldState> successors(const WorldState& state, const Action& action,
                                   SemanticsMode mode, const Problem& problem,
                                   int step_index, StepFailure* failure) {
  std::vector<std::string> violated;
  const BlockId a = action.a;
  const BlockId c = action.b;

  switch (action.op) {
    case Op::PickUp: {
      if (!state.clear(a)) violated.push_back("pickup.clear");
      if (!state.on_table(a)) violated.push_back("pickup.on_table");
      if (!state.arm_empty()) violated.push_back("pickup.arm_empty");
      if (violated.empty()) return {after_pick_up(state, a)};
      break;
    }
    case Op::PutDown: {
      if (!(state.holding && *state.holding == a)) violated.push_back("putdown.holding");
      if (violated.empty()) return {after_put_down(state, a)};
      break;
    }
    case Op::Stack: {
      std::vector<std::string> hand_case;
      if (!(state.holding && *state.holding == a)) hand_case.push_back("stack.holding");
      if (!state.clear(c)) hand_case.push_back("stack.dest_clear");
      if (hand_case.empty()) return {after_stack(state, a, c)};
      if (mode == SemanticsMode::AppendixDisjunctive) {
        std::vector<std::string> table_case;
        if (!state.on_table(a)) table_case.push_back("stack.src_on_table");
        if (!state.clear(a)) table_case.push_back("stack.src_clear");
        if (!state.clear(c)) table_case.push_back("stack.dest_clear");
        if (!state.arm_empty()) table_case.push_back("stack.arm_empty");
        if (table_case.empty()) return {after_stack(state, a, c)};
        violated = table_case.size() < hand_case.size() ? table_case : hand_case;
      } else {
        violated = hand_case;
      }
      break;
    }
    case Op::Unstack: {
      if (!state.on(a, c)) violated.push_back("unstack.on");
      if (!state.clear(a)) violated.push_back("unstack.clear");
      if (!state.arm_empty()) violated.push_back("unstack.arm_empty");
      if (violated.empty()) {
        std::vector<WorldState> out{after_pick_up(state, a)};
        if (mode == SemanticsMode::AppendixDisjunctive)
          out.push_back(after_put_down(after_pick_up(state, a), a));
        return out;
      }
      break;
    }
  }
  if (failure) *failure = make_failure(problem, step_index, action, std::move(violated));
  return {};
}

WorldState apply(const WorldState& state, const Action& action, SemanticsMode mode,
                 const Problem& problem, int step_index) {
  StepFailure f;
  auto next = successors(state, action, mode, problem, step_index, &f);
  if (next.empty()) throw PreconditionViolation(std::move(f));
  return next.front();
}

std::vector<Atom> missing_goal_atoms(const Problem& problem, const WorldState& state) {
  std::vector<Atom> missing;
  for (const Atom& g : problem.goal.atoms)
    if (!state.holds(g)) missing.push_back(g);
  return missing;
}

Verdict verify(const Problem& problem, const Plan& plan, SemanticsMode mode) {
  // Frontier of states reachable by the executed prefix. Strict4Ops keeps a
  // single state; AppendixDisjunctive branches at unstacks.
  std::vector<WorldState> frontier{state_from_init(problem, InitMode::Normalize)};

  for (std::size_t k = 0; k < plan.actions.size(); ++k) {
    const int step = static_cast<int>(k) + 1;
    std::vector<WorldState> next;
    StepFailure best;
    bool have_failure = false;
    for (const WorldState& st : frontier) {
      StepFailure f;
      auto out = successors(st, plan.actions[k], mode, problem, step, &f);
      if (out.empty()) {
        if (!have_failure || f.violated.size() < best.violated.size()) {
          best = std::move(f);
          have_failure = true;
        }
      } else {
        next.insert(next.end(), out.begin(), out.end());
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.empty()) {
      Verdict v;
      v.status = VerdictStatus::Infeasible;
      v.failure = std::move(best);
      return v;
    }
    if (next.size() > kBranchBound)
      throw TooLarge("disjunctive verification exceeded the branch bound");
    frontier = std::move(next);
  }

  const WorldState* best_final = nullptr;
  std::vector<Atom> best_missing;
  for (const WorldState& st : frontier) {
    std::vector<Atom> missing = missing_goal_atoms(problem, st);
    if (missing.empty()) {
      Verdict v;
      v.status = VerdictStatus::Valid;
      return v;
    }
    if (!best_final || missing.size() < best_missing.size()) {
      best_final = &st;
      best_missing = std::move(missing);
    }
  }
  Verdict v;
  v.status = VerdictStatus::GoalUnsatisfied;
  v.missing = std::move(best_missing);
  v.final_state = *best_final;
  return v;
}

Counterexample minimal_infeasible_prefix(const Problem& problem, const Plan& plan,
                                         SemanticsMode mode) {
  Verdict v = verify(problem, plan, mode);
  if (v.valid())
    throw ContractViolation("minimal_infeasible_prefix called on a valid plan");
  Counterexample cex;
  if (v.status == VerdictStatus::Infeasible) {
    cex.kind = CexKind::InvalidPrefix;
    cex.plan.actions.assign(plan.actions.begin(),
                            plan.actions.begin() + v.failure->step_index);
  } else {
    cex.kind = CexKind::GoalGap;
    cex.missing = v.missing;
  }
  return cex;
}

std::vector<WorldState> reachable_states(const Problem& problem, std::size_t depth) {
  if (problem.block_count() > 6)
    throw TooLarge("reachable_states is guarded to 6 blocks");
  const BlockId n = static_cast<BlockId>(problem.block_count());

  auto enumerate = [&](const WorldState& st, auto&& visit) {
    if (st.holding) {
      const BlockId h = *st.holding;
      visit(after_put_down(st, h));
      for (BlockId c = 0; c < n; ++c)
        if (c != h && st.clear(c)) visit(after_stack(st, h, c));
    } else {
      for (BlockId b = 0; b < n; ++b) {
        if (!st.clear(b)) continue;
        if (st.on_table(b)) visit(after_pick_up(st, b));
        else visit(after_pick_up(st, b));  // unstack lands in the hand too
      }
    }
  };

  WorldState init = state_from_init(problem, InitMode::Normalize);
  std::vector<WorldState> order{init};
  std::unordered_set<WorldState, WorldStateHash> seen{init};
  std::size_t frontier_begin = 0;
  for (std::size_t d = 0; d < depth && frontier_begin < order.size(); ++d) {
    const std::size_t frontier_end = order.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      WorldState st = order[i];  // copy; order may reallocate
      enumerate(st, [&](WorldState next) {
        if (seen.insert(next).second) order.push_back(std::move(next));
      });
    }
    frontier_begin = frontier_end;
  }
  return order;
}

}  // namespace bwplan
