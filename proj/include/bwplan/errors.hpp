#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bwplan {

/// Base for all library errors. Subclasses carry structured context where
/// callers are expected to branch on it.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- problem / plan text ---

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int col, std::string expected)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) +
              ": expected " + expected),
        line(line), col(col), expected(std::move(expected)) {}
  int line;
  int col;
  std::string expected;
};

class SemanticError : public Error {
 public:
  using Error::Error;
};

class InconsistentInit : public Error {
 public:
  using Error::Error;
};

class NoPlanBlock : public Error {
 public:
  NoPlanBlock() : Error("no START-PLAN/END-PLAN block found") {}
};

class MalformedStep : public Error {
 public:
  MalformedStep(int line, const std::string& reason)
      : Error("malformed plan step at line " + std::to_string(line) + ": " + reason),
        line(line), reason(reason) {}
  int line;
  std::string reason;
};

class UnknownBlock : public Error {
 public:
  explicit UnknownBlock(const std::string& name)
      : Error("unknown block: " + name), name(name) {}
  std::string name;
};

class UnknownOperator : public Error {
 public:
  explicit UnknownOperator(const std::string& name)
      : Error("unknown operator: " + name), name(name) {}
  std::string name;
};

// --- verification ---

class ContractViolation : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class UnsatisfiableGoal : public Error {
 public:
  using Error::Error;
};

// --- smt / external solver ---

class SolverError : public Error {
 public:
  using Error::Error;
};

// --- oracle transport ---

class TransportError : public Error {
 public:
  using Error::Error;
};

class AuthError : public TransportError {
 public:
  using TransportError::TransportError;
};

class RateLimited : public TransportError {
 public:
  using TransportError::TransportError;
};

class MalformedApiResponse : public TransportError {
 public:
  using TransportError::TransportError;
};

class TranscriptExhausted : public TransportError {
 public:
  TranscriptExhausted() : TransportError("scripted transcript exhausted") {}
};

}  // namespace bwplan
