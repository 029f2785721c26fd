#pragma once

#include <string>
#include <vector>

#include "bwplan/pddl.hpp"

namespace bwplan {

enum class Op : std::uint8_t { PickUp, PutDown, Stack, Unstack };

/// One step over the 4-ops vocabulary. `b` is used only by Stack (the
/// destination) and Unstack (the block unstacked from); must differ from `a`.
struct Action {
  Op op;
  BlockId a = 0;
  BlockId b = 0;

  static Action pick_up(BlockId x) { return {Op::PickUp, x, 0}; }
  static Action put_down(BlockId x) { return {Op::PutDown, x, 0}; }
  static Action stack(BlockId top, BlockId dest) { return {Op::Stack, top, dest}; }
  static Action unstack(BlockId top, BlockId from) { return {Op::Unstack, top, from}; }

  friend auto operator<=>(const Action&, const Action&) = default;
};

struct Plan {
  std::vector<Action> actions;

  bool empty() const { return actions.empty(); }
  std::size_t size() const { return actions.size(); }

  friend auto operator<=>(const Plan&, const Plan&) = default;
};

/// parse_plan output. `misnumbered` flags step numbers that are not
/// consecutive from 1 (tolerated; models renumber freely).
struct ParsedPlan {
  Plan plan;
  bool misnumbered = false;
};

/// Extracts the first START-PLAN ... END-PLAN block from `text`, skipping any
/// surrounding prose, and parses numbered `k. <op> <args>` lines. Operator
/// spellings pick-up/pickup and put-down/putdown are accepted; case is
/// ignored.
///
/// Throws NoPlanBlock, MalformedStep, UnknownBlock, UnknownOperator.
ParsedPlan parse_plan(const std::string& text, const std::vector<std::string>& objects);

/// Canonical plan text: the markers around 1-based numbered lines with the
/// hyphenated operator spellings, LF endings, no trailing newline.
std::string print_plan(const Plan& plan, const std::vector<std::string>& objects);

/// "unstack b4 b1" — single-action rendering used in reports.
std::string action_to_string(const Action& action, const std::vector<std::string>& objects);

inline std::string print_plan(const Plan& plan, const Problem& problem) {
  return print_plan(plan, problem.objects);
}

}  // namespace bwplan
