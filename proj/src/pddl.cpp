#include "bwplan/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>

namespace bwplan {

namespace {

// --- s-expression reader -------------------------------------------------

struct Token {
  enum Kind { LParen, RParen, Symbol, End } kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_ws_and_comments();
    if (pos_ >= text_.size()) return {Token::End, "", line_, col_};
    int line = line_, col = col_;
    char c = text_[pos_];
    if (c == '(') {
      advance();
      return {Token::LParen, "(", line, col};
    }
    if (c == ')') {
      advance();
      return {Token::RParen, ")", line, col};
    }
    std::string sym;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';') {
      sym.push_back(text_[pos_]);
      advance();
    }
    return {Token::Symbol, sym, line, col};
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Sexp {
  // Leaf iff !children_valid; then `atom` holds the symbol text.
  bool is_list = false;
  std::string atom;
  std::vector<Sexp> children;
  int line = 0;
  int col = 0;
};

Sexp parse_sexp(Lexer& lex, const Token& first) {
  if (first.kind == Token::Symbol) {
    Sexp s;
    s.atom = first.text;
    s.line = first.line;
    s.col = first.col;
    return s;
  }
  if (first.kind != Token::LParen)
    throw SyntaxError(first.line, first.col, "'(' or symbol");
  Sexp s;
  s.is_list = true;
  s.line = first.line;
  s.col = first.col;
  for (;;) {
    Token t = lex.next();
    if (t.kind == Token::RParen) return s;
    if (t.kind == Token::End) throw SyntaxError(t.line, t.col, "')'");
    s.children.push_back(parse_sexp(lex, t));
  }
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool valid_token(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-';
  });
}

const Sexp& expect_list(const Sexp& s, const char* what) {
  if (!s.is_list) throw SyntaxError(s.line, s.col, what);
  return s;
}

const std::string& expect_atom(const Sexp& s, const char* what) {
  if (s.is_list) throw SyntaxError(s.line, s.col, what);
  return s.atom;
}

BlockId resolve_block(const Problem& p, const Sexp& s) {
  std::string name = lower(expect_atom(s, "block name"));
  auto id = p.find_block(name);
  if (!id)
    throw SemanticError("undeclared block '" + name + "' at " + std::to_string(s.line) +
                        ":" + std::to_string(s.col));
  return *id;
}

Atom parse_atom(const Problem& p, const Sexp& s, bool goal_position) {
  expect_list(s, "atom");
  if (s.children.empty()) throw SyntaxError(s.line, s.col, "predicate name");
  std::string pred = lower(expect_atom(s.children[0], "predicate name"));
  auto arity = [&](std::size_t n) {
    if (s.children.size() != n + 1)
      throw SemanticError("predicate '" + pred + "' takes " + std::to_string(n) +
                          " argument(s) at " + std::to_string(s.line) + ":" +
                          std::to_string(s.col));
  };
  if (pred == "on") {
    arity(2);
    BlockId u = resolve_block(p, s.children[1]);
    BlockId l = resolve_block(p, s.children[2]);
    if (u == l)
      throw SemanticError("(on x x) is not a valid atom at " + std::to_string(s.line) +
                          ":" + std::to_string(s.col));
    return Atom::on(u, l);
  }
  if (pred == "on-table") {
    arity(1);
    return Atom::on_table(resolve_block(p, s.children[1]));
  }
  if (pred == "clear") {
    arity(1);
    return Atom::clear(resolve_block(p, s.children[1]));
  }
  if (pred == "arm-empty") {
    if (goal_position) throw SemanticError("'arm-empty' is not allowed in goals");
    arity(0);
    return Atom::arm_empty();
  }
  if (pred == "holding") {
    if (goal_position) throw SemanticError("'holding' is not allowed in goals");
    arity(1);
    return Atom::holding(resolve_block(p, s.children[1]));
  }
  throw SemanticError("unknown predicate '" + pred + "' at " + std::to_string(s.line) +
                      ":" + std::to_string(s.col));
}

// Rejects goal conjunctions no single configuration can satisfy: a block
// placed twice, two blocks on one block, On(x,y) with OnTable(x) or
// Clear(y), and On-cycles.
void check_goal_consistency(const Problem& p, const GoalSpec& goal) {
  std::vector<int> placed_on(p.block_count(), -2);  // -2 unset, -1 table, else block
  std::vector<bool> occupied(p.block_count(), false);
  std::vector<bool> must_be_clear(p.block_count(), false);
  for (const Atom& a : goal.atoms)
    if (a.pred == Pred::Clear) must_be_clear[a.a] = true;
  for (const Atom& a : goal.atoms) {
    if (a.pred == Pred::On) {
      if (placed_on[a.a] != -2 && placed_on[a.a] != a.b)
        throw SemanticError("goal places '" + p.block_name(a.a) + "' in two positions");
      placed_on[a.a] = a.b;
      if (occupied[a.b])
        throw SemanticError("goal stacks two blocks on '" + p.block_name(a.b) + "'");
      occupied[a.b] = true;
      if (must_be_clear[a.b])
        throw SemanticError("goal requires '" + p.block_name(a.b) +
                            "' to be both clear and under '" + p.block_name(a.a) + "'");
    } else if (a.pred == Pred::OnTable) {
      if (placed_on[a.a] >= 0)
        throw SemanticError("goal places '" + p.block_name(a.a) + "' in two positions");
      placed_on[a.a] = -1;
    }
  }
  // Cycle check over the On edges.
  for (BlockId start = 0; start < p.block_count(); ++start) {
    int cur = start, steps = 0;
    while (cur >= 0 && placed_on[cur] >= 0) {
      cur = placed_on[cur];
      if (++steps > static_cast<int>(p.block_count()))
        throw SemanticError("goal contains a cyclic On chain");
    }
  }
}

}  // namespace

bool WorldState::clear(BlockId b) const {
  if (holding && *holding == b) return false;
  for (const Support& s : support)
    if (s.is_block() && s.block() == b) return false;
  return true;
}

bool WorldState::on(BlockId upper, BlockId lower) const {
  return support[upper].is_block() && support[upper].block() == lower;
}

bool WorldState::on_table(BlockId b) const { return support[b].is_table(); }

bool WorldState::holds(const Atom& atom) const {
  switch (atom.pred) {
    case Pred::On: return on(atom.a, atom.b);
    case Pred::OnTable: return on_table(atom.a);
    case Pred::Clear: return clear(atom.a);
    case Pred::ArmEmpty: return arm_empty();
    case Pred::Holding: return holding && *holding == atom.a;
  }
  return false;
}

void WorldState::validate() const {
  const std::size_t n = support.size();
  std::size_t hand_count = 0;
  std::vector<bool> occupied(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Support& s = support[i];
    if (s.is_hand()) {
      ++hand_count;
      if (!holding || *holding != static_cast<BlockId>(i))
        throw InconsistentInit("block in hand does not match holding");
    } else if (s.is_block()) {
      if (s.block() >= n) throw InconsistentInit("support references unknown block");
      if (occupied[s.block()])
        throw InconsistentInit("two blocks directly on one block");
      occupied[s.block()] = true;
    }
  }
  if (holding) {
    if (hand_count != 1 || !support[*holding].is_hand())
      throw InconsistentInit("holding set but block not marked in hand");
    if (occupied[*holding])
      throw InconsistentInit("a block rests on the held block");
  } else if (hand_count != 0) {
    throw InconsistentInit("block marked in hand but nothing held");
  }
  // Acyclicity: follow supports down; must reach table/hand within n steps.
  for (std::size_t i = 0; i < n; ++i) {
    Support cur = support[i];
    std::size_t steps = 0;
    while (cur.is_block()) {
      cur = support[cur.block()];
      if (++steps > n) throw InconsistentInit("support relation contains a cycle");
    }
  }
}

std::size_t WorldStateHash::operator()(const WorldState& s) const {
  std::size_t h = s.holding ? (*s.holding + 2) : 1;
  for (const Support& sup : s.support)
    h = h * 1000003 + static_cast<std::size_t>(sup.v + 3);
  return h;
}

std::optional<BlockId> Problem::find_block(const std::string& name) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == name) return static_cast<BlockId>(i);
  return std::nullopt;
}

bool Problem::operator==(const Problem& other) const {
  auto sorted = [](std::vector<Atom> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  return name == other.name && domain_name == other.domain_name &&
         objects == other.objects && sorted(init) == sorted(other.init) &&
         sorted(goal.atoms) == sorted(other.goal.atoms);
}

Problem parse_problem(const std::string& text) {
  Lexer lex(text);
  Token first = lex.next();
  if (first.kind == Token::End) throw SyntaxError(first.line, first.col, "'(define'");
  Sexp root = parse_sexp(lex, first);
  Token trailing = lex.next();
  if (trailing.kind != Token::End)
    throw SyntaxError(trailing.line, trailing.col, "end of input");

  expect_list(root, "'(define ...)'");
  if (root.children.size() != 6)
    throw SyntaxError(root.line, root.col,
                      "(define (problem N) (:domain D) (:objects ...) (:init ...) (:goal ...))");
  if (lower(expect_atom(root.children[0], "'define'")) != "define")
    throw SyntaxError(root.children[0].line, root.children[0].col, "'define'");

  Problem p;

  const Sexp& prob = expect_list(root.children[1], "'(problem N)'");
  if (prob.children.size() != 2 ||
      lower(expect_atom(prob.children[0], "'problem'")) != "problem")
    throw SyntaxError(prob.line, prob.col, "'(problem N)'");
  p.name = expect_atom(prob.children[1], "problem name");

  const Sexp& dom = expect_list(root.children[2], "'(:domain D)'");
  if (dom.children.size() != 2 ||
      lower(expect_atom(dom.children[0], "':domain'")) != ":domain")
    throw SyntaxError(dom.line, dom.col, "'(:domain D)'");
  p.domain_name = expect_atom(dom.children[1], "domain name");

  const Sexp& objs = expect_list(root.children[3], "'(:objects ...)'");
  if (objs.children.empty() ||
      lower(expect_atom(objs.children[0], "':objects'")) != ":objects")
    throw SyntaxError(objs.line, objs.col, "'(:objects ...)'");
  for (std::size_t i = 1; i < objs.children.size(); ++i) {
    std::string name = lower(expect_atom(objs.children[i], "block name"));
    if (!valid_token(name))
      throw SemanticError("invalid block name '" + name + "'");
    if (p.find_block(name))
      throw SemanticError("duplicate object '" + name + "'");
    if (p.objects.size() >= 200) throw SemanticError("too many objects");
    p.objects.push_back(name);
  }

  const Sexp& init = expect_list(root.children[4], "'(:init ...)'");
  if (init.children.empty() ||
      lower(expect_atom(init.children[0], "':init'")) != ":init")
    throw SyntaxError(init.line, init.col, "'(:init ...)'");
  for (std::size_t i = 1; i < init.children.size(); ++i)
    p.init.push_back(parse_atom(p, init.children[i], /*goal_position=*/false));

  const Sexp& goal = expect_list(root.children[5], "'(:goal (and ...))'");
  if (goal.children.size() != 2 ||
      lower(expect_atom(goal.children[0], "':goal'")) != ":goal")
    throw SyntaxError(goal.line, goal.col, "'(:goal (and ...))'");
  const Sexp& conj = expect_list(goal.children[1], "'(and ...)'");
  if (conj.children.empty() || lower(expect_atom(conj.children[0], "'and'")) != "and")
    throw SyntaxError(conj.line, conj.col, "'(and ...)'");
  for (std::size_t i = 1; i < conj.children.size(); ++i)
    p.goal.atoms.push_back(parse_atom(p, conj.children[i], /*goal_position=*/true));
  if (p.goal.atoms.empty())
    throw SemanticError("goal conjunction is empty");
  std::sort(p.goal.atoms.begin(), p.goal.atoms.end());
  p.goal.atoms.erase(std::unique(p.goal.atoms.begin(), p.goal.atoms.end()),
                     p.goal.atoms.end());
  check_goal_consistency(p, p.goal);
  return p;
}

WorldState state_from_init(const Problem& problem, InitMode mode) {
  const std::size_t n = problem.block_count();
  WorldState st;
  st.support.assign(n, Support{});
  std::vector<bool> placed(n, false);
  bool declared_arm_empty = false;
  std::vector<bool> declared_clear(n, false);

  auto place = [&](BlockId b, Support s) {
    if (placed[b])
      throw InconsistentInit("block '" + problem.block_name(b) + "' placed twice in init");
    placed[b] = true;
    st.support[b] = s;
  };

  for (const Atom& a : problem.init) {
    switch (a.pred) {
      case Pred::On: place(a.a, Support::on(a.b)); break;
      case Pred::OnTable: place(a.a, Support::table()); break;
      case Pred::Holding:
        if (st.holding)
          throw InconsistentInit("init holds more than one block");
        st.holding = a.a;
        place(a.a, Support::hand());
        break;
      case Pred::Clear: declared_clear[a.a] = true; break;
      case Pred::ArmEmpty: declared_arm_empty = true; break;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!placed[i])
      throw InconsistentInit("block '" + problem.block_name(static_cast<BlockId>(i)) +
                             "' has no position in init");
  st.validate();

  if (mode == InitMode::Strict) {
    if (declared_arm_empty != st.arm_empty())
      throw InconsistentInit("declared arm-empty does not match derived state");
    for (std::size_t i = 0; i < n; ++i) {
      BlockId b = static_cast<BlockId>(i);
      if (declared_clear[b] != st.clear(b))
        throw InconsistentInit("declared clear set does not match derived state: '" +
                               problem.block_name(b) + "' is " +
                               (st.clear(b) ? "clear" : "not clear"));
    }
  }
  return st;
}

std::string atom_to_string(const Problem& problem, const Atom& atom) {
  switch (atom.pred) {
    case Pred::On:
      return "(on " + problem.block_name(atom.a) + " " + problem.block_name(atom.b) + ")";
    case Pred::OnTable: return "(on-table " + problem.block_name(atom.a) + ")";
    case Pred::Clear: return "(clear " + problem.block_name(atom.a) + ")";
    case Pred::ArmEmpty: return "(arm-empty)";
    case Pred::Holding: return "(holding " + problem.block_name(atom.a) + ")";
  }
  return "";
}

std::string print_problem(const Problem& problem) {
  std::ostringstream out;
  out << "(define (problem " << problem.name << ")\n";
  out << "(:domain " << problem.domain_name << ")\n";
  out << "(:objects";
  for (const std::string& o : problem.objects) out << " " << o;
  out << " )\n";
  out << "(:init\n";
  for (const Atom& a : problem.init) out << atom_to_string(problem, a) << "\n";
  out << ")\n";
  out << "(:goal\n(and\n";
  for (std::size_t i = 0; i < problem.goal.atoms.size(); ++i) {
    out << atom_to_string(problem, problem.goal.atoms[i]);
    if (i + 1 == problem.goal.atoms.size()) out << ")";
    out << "\n";
  }
  out << ")\n)\n";
  return out.str();
}

}  // namespace bwplan
