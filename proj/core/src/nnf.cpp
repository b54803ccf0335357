#include "pddlval/nnf.hpp"

namespace pddlval {

namespace {

Formula nnf(const Formula& f, bool negate) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::kAtom:
    case K::kEquals:
    case K::kCompare:
      return negate ? Formula::make_not(f) : f;
    case K::kNot:
      return nnf(f.children.front(), !negate);
    case K::kImply: {
      // a -> b  ==  (not a) or b
      std::vector<Formula> parts;
      parts.push_back(Formula::make_not(f.children[0]));
      parts.push_back(f.children[1]);
      return nnf(Formula::junction(K::kOr, std::move(parts)), negate);
    }
    case K::kAnd:
    case K::kOr: {
      std::vector<Formula> parts;
      parts.reserve(f.children.size());
      for (const auto& c : f.children) parts.push_back(nnf(c, negate));
      const bool conjunction = (f.kind == K::kAnd) != negate;
      return Formula::junction(conjunction ? K::kAnd : K::kOr, std::move(parts));
    }
    case K::kExists:
    case K::kForall: {
      const bool universal = (f.kind == K::kForall) != negate;
      return Formula::quantified(universal ? K::kForall : K::kExists, f.variables,
                                 nnf(f.children.front(), negate));
    }
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& formula) { return nnf(formula, false); }

bool is_nnf(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::kAtom:
    case K::kEquals:
    case K::kCompare:
      return true;
    case K::kImply:
      return false;
    case K::kNot: {
      const K inner = f.children.front().kind;
      return inner == K::kAtom || inner == K::kEquals || inner == K::kCompare;
    }
    default:
      for (const auto& c : f.children) {
        if (!is_nnf(c)) return false;
      }
      return true;
  }
}

}  // namespace pddlval
