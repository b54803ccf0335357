#include "pddlval/errors.hpp"

namespace pddlval {

SyntaxError::SyntaxError(const std::string& message, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      bare_(message),
      line_(line),
      column_(column) {}

RestrictionError::RestrictionError(int restriction, const std::string& message)
    : Error("restriction " + std::to_string(restriction) + " violated: " + message),
      restriction_(restriction) {}

}  // namespace pddlval
