#pragma once

#include <map>
#include <string>
#include <vector>

#include "pddlval/ast.hpp"

namespace pddlval {

/// Type hierarchy rooted at `object`.
class TypeHierarchy {
 public:
  explicit TypeHierarchy(const DomainAst& domain);

  bool is_declared(const std::string& type) const;
  /// Reflexive; every declared type is a subtype of `object`.
  bool is_subtype(const std::string& type, const std::string& ancestor) const;
  bool matches(const std::string& type, const std::vector<std::string>& alternatives) const;

 private:
  std::map<std::string, std::string> parent_;
};

}  // namespace pddlval
