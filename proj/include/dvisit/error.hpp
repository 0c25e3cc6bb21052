#pragma once

#include <stdexcept>
#include <string>

namespace dvisit {

enum class ErrorKind {
  MissingRoot,
  NotPrefixClosed,
  ColorOutOfRange,
  DuplicateColor,
  NodeNotInTree,
  EntryNotInTree,
  RootNotInTree,
  InvalidVisit,
  TreeTooLarge,
  NonContiguousInsert,
  WordNotInIndex,
  SyntaxError,
  UnknownIdentifier,
  DivisionByZero,
  UnknownBuiltin,
  TableIncomplete,
  InvalidInput,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dvisit
