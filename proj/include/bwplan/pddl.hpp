#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bwplan/errors.hpp"

namespace bwplan {

/// Index into Problem::objects. Blocks are referred to by index everywhere
/// internally; names only appear at the parse/print boundary.
using BlockId = std::uint8_t;

enum class Pred : std::uint8_t { On, OnTable, Clear, ArmEmpty, Holding };

/// Ground atom over the closed predicate vocabulary. `a` is unused for
/// ArmEmpty, `b` only used for On (where the atom reads "a is on b").
struct Atom {
  Pred pred;
  BlockId a = 0;
  BlockId b = 0;

  static Atom on(BlockId upper, BlockId lower) { return {Pred::On, upper, lower}; }
  static Atom on_table(BlockId x) { return {Pred::OnTable, x, 0}; }
  static Atom clear(BlockId x) { return {Pred::Clear, x, 0}; }
  static Atom arm_empty() { return {Pred::ArmEmpty, 0, 0}; }
  static Atom holding(BlockId x) { return {Pred::Holding, x, 0}; }

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Where a block rests. Values >= 0 name the block directly underneath.
struct Support {
  static constexpr std::int16_t kTable = -1;
  static constexpr std::int16_t kHand = -2;
  std::int16_t v = kTable;

  static Support table() { return {kTable}; }
  static Support hand() { return {kHand}; }
  static Support on(BlockId b) { return {static_cast<std::int16_t>(b)}; }

  bool is_table() const { return v == kTable; }
  bool is_hand() const { return v == kHand; }
  bool is_block() const { return v >= 0; }
  BlockId block() const { return static_cast<BlockId>(v); }

  friend auto operator<=>(const Support&, const Support&) = default;
};

/// Complete blocksworld configuration: a total support relation plus the
/// hand. `clear` and `arm_empty` are derived, never stored.
struct WorldState {
  std::vector<Support> support;      // indexed by BlockId
  std::optional<BlockId> holding;

  std::size_t block_count() const { return support.size(); }
  bool arm_empty() const { return !holding.has_value(); }

  /// A block is clear iff nothing rests on it and it is not in the hand.
  bool clear(BlockId b) const;
  bool on(BlockId upper, BlockId lower) const;
  bool on_table(BlockId b) const;
  bool holds(const Atom& atom) const;

  /// Checks every structural invariant: hand/holding agreement, at most one
  /// block per support target, acyclicity. Throws InconsistentInit.
  void validate() const;

  friend auto operator<=>(const WorldState&, const WorldState&) = default;
};

struct WorldStateHash {
  std::size_t operator()(const WorldState& s) const;
};

/// Goal conjunction, restricted to On/OnTable/Clear atoms. Kept sorted.
struct GoalSpec {
  std::vector<Atom> atoms;

  friend auto operator<=>(const GoalSpec&, const GoalSpec&) = default;
};

struct Problem {
  std::string name;
  std::string domain_name;
  std::vector<std::string> objects;  // ordered; index == BlockId
  std::vector<Atom> init;            // as declared, including clear/arm-empty
  GoalSpec goal;

  std::size_t block_count() const { return objects.size(); }
  const std::string& block_name(BlockId b) const { return objects[b]; }
  std::optional<BlockId> find_block(const std::string& lowercase_name) const;

  /// Equality is up to init/goal atom order (both compared as sorted sets).
  bool operator==(const Problem& other) const;
};

enum class InitMode { Normalize, Strict };

/// Parses the blocksworld-4ops problem fragment:
///   (define (problem N) (:domain D) (:objects ...) (:init ...) (:goal (and ...)))
/// Predicates and block tokens are case-insensitive and canonicalized to
/// lower case; `;` starts a comment. Unknown predicates are SemanticErrors.
Problem parse_problem(const std::string& text);

/// Builds the closed-world state from the init atoms. Normalize derives
/// clear/arm-empty and ignores the declared ones; Strict additionally
/// requires the declared set to match the derived set exactly.
WorldState state_from_init(const Problem& problem, InitMode mode = InitMode::Normalize);

/// Canonical printer, one atom per line inside :init; output re-parses to an
/// equal Problem.
std::string print_problem(const Problem& problem);

/// "(on b1 b2)" etc., for diagnostics and reports.
std::string atom_to_string(const Problem& problem, const Atom& atom);

}  // namespace bwplan
