#include "pddlval/types.hpp"

namespace pddlval {

TypeHierarchy::TypeHierarchy(const DomainAst& domain) {
  for (const TypeDecl& decl : domain.types) parent_[decl.name] = decl.parent;
}

bool TypeHierarchy::is_declared(const std::string& type) const {
  return type == "object" || parent_.count(type) > 0;
}

bool TypeHierarchy::is_subtype(const std::string& type, const std::string& ancestor) const {
  if (ancestor == "object") return true;
  std::string current = type;
  // Bounded walk so a cyclic declaration cannot loop forever.
  for (std::size_t steps = 0; steps <= parent_.size(); ++steps) {
    if (current == ancestor) return true;
    auto it = parent_.find(current);
    if (it == parent_.end()) return false;
    current = it->second;
  }
  return false;
}

bool TypeHierarchy::matches(const std::string& type,
                            const std::vector<std::string>& alternatives) const {
  for (const std::string& alt : alternatives) {
    if (is_subtype(type, alt)) return true;
  }
  return false;
}

}  // namespace pddlval
