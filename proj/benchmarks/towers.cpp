#include "towers.hpp"

namespace pddlval::bench {

const std::string& tower_domain() {
  static const std::string text = R"(
(define (domain tower)
  (:requirements :strips :derived-predicates :existential-preconditions)
  (:predicates (on ?x ?y) (ontable ?x) (clear ?x) (above ?x ?y))
  (:action move-to-table
    :parameters (?x ?y)
    :precondition (and (clear ?x) (on ?x ?y) (exists (?c) (above ?x ?c)))
    :effect (and (ontable ?x) (clear ?y) (not (on ?x ?y))))
  (:derived (above ?x ?y)
    (or (on ?x ?y) (exists (?z) (and (on ?x ?z) (above ?z ?y))))))
)";
  return text;
}

std::string tower_problem(int n) {
  std::string objects;
  std::string init = "(clear b1) (ontable b" + std::to_string(n) + ")";
  for (int i = 1; i <= n; ++i) {
    objects += " b" + std::to_string(i);
    if (i < n) init += " (on b" + std::to_string(i) + " b" + std::to_string(i + 1) + ")";
  }
  return "(define (problem tower) (:domain tower) (:objects" + objects + ") (:init " + init +
         ") (:goal (ontable b1)))";
}

std::string unstack_plan(int n) {
  std::string plan;
  for (int i = 1; i < n; ++i) {
    plan += "(move-to-table b" + std::to_string(i) + " b" + std::to_string(i + 1) + ")\n";
  }
  return plan;
}

}  // namespace pddlval::bench
