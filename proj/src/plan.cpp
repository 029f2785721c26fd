#include "bwplan/plan.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bwplan {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  lines.push_back(cur);
  return lines;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

BlockId resolve(const std::string& token, const std::vector<std::string>& objects) {
  std::string name = lower(token);
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == name) return static_cast<BlockId>(i);
  throw UnknownBlock(name);
}

const char* op_name(Op op) {
  switch (op) {
    case Op::PickUp: return "pick-up";
    case Op::PutDown: return "put-down";
    case Op::Stack: return "stack";
    case Op::Unstack: return "unstack";
  }
  return "";
}

}  // namespace

ParsedPlan parse_plan(const std::string& text, const std::vector<std::string>& objects) {
  const std::vector<std::string> lines = split_lines(text);
  std::size_t begin = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]) == "START-PLAN") {
      begin = i + 1;
      break;
    }
  }
  if (begin == lines.size()) throw NoPlanBlock();

  ParsedPlan result;
  int expected_step = 1;
  bool closed = false;
  for (std::size_t i = begin; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line == "END-PLAN") {
      closed = true;
      break;
    }
    if (line.empty()) continue;
    const int lineno = static_cast<int>(i) + 1;

    std::size_t dot = line.find('.');
    if (dot == std::string::npos)
      throw MalformedStep(lineno, "expected 'N. <action>'");
    std::string num = trim(line.substr(0, dot));
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](unsigned char c) {
          return std::isdigit(c);
        }))
      throw MalformedStep(lineno, "step number is not an integer");
    if (std::stol(num) != expected_step) result.misnumbered = true;
    ++expected_step;

    std::vector<std::string> words = split_ws(line.substr(dot + 1));
    if (words.empty()) throw MalformedStep(lineno, "missing operator");
    std::string op = lower(words[0]);
    auto want_args = [&](std::size_t n) {
      if (words.size() != n + 1)
        throw MalformedStep(lineno, "operator '" + op + "' takes " + std::to_string(n) +
                                        " argument(s)");
    };
    if (op == "pick-up" || op == "pickup") {
      want_args(1);
      result.plan.actions.push_back(Action::pick_up(resolve(words[1], objects)));
    } else if (op == "put-down" || op == "putdown") {
      want_args(1);
      result.plan.actions.push_back(Action::put_down(resolve(words[1], objects)));
    } else if (op == "stack") {
      want_args(2);
      BlockId top = resolve(words[1], objects);
      BlockId dest = resolve(words[2], objects);
      if (top == dest) throw MalformedStep(lineno, "stack arguments must be distinct");
      result.plan.actions.push_back(Action::stack(top, dest));
    } else if (op == "unstack") {
      want_args(2);
      BlockId top = resolve(words[1], objects);
      BlockId from = resolve(words[2], objects);
      if (top == from) throw MalformedStep(lineno, "unstack arguments must be distinct");
      result.plan.actions.push_back(Action::unstack(top, from));
    } else {
      throw UnknownOperator(op);
    }
  }
  if (!closed) throw NoPlanBlock();
  return result;
}

std::string action_to_string(const Action& action, const std::vector<std::string>& objects) {
  std::string s = op_name(action.op);
  s += " " + objects[action.a];
  if (action.op == Op::Stack || action.op == Op::Unstack) s += " " + objects[action.b];
  return s;
}

std::string print_plan(const Plan& plan, const std::vector<std::string>& objects) {
  std::string out = "START-PLAN\n";
  for (std::size_t i = 0; i < plan.actions.size(); ++i)
    out += std::to_string(i + 1) + ". " + action_to_string(plan.actions[i], objects) + "\n";
  out += "END-PLAN";
  return out;
}

}  // namespace bwplan
