#include "pddlval/closure.hpp"

#include <deque>
#include <stdexcept>

#include "pddlval/evaluate.hpp"

namespace pddlval {

FactSet ClosedState::all() const {
  FactSet out = basic;
  out.insert(derived.begin(), derived.end());
  return out;
}

namespace {

std::size_t universe_size(const BasicState& basic, std::span<const GroundRule> rules,
                          std::size_t fact_count) {
  std::size_t n = fact_count;
  if (!basic.empty()) n = std::max<std::size_t>(n, *basic.rbegin() + 1);
  for (const auto& r : rules) n = std::max<std::size_t>(n, r.head + 1);
  return n;
}

bool body_holds(const GroundRule& rule, std::span<const std::uint8_t> truth,
                const NumericContext& ctx) {
  try {
    return evaluate_formula(rule.body, truth, ctx);
  } catch (const UndefinedValueError&) {
    return false;
  }
}

ClosedState make_state(const BasicState& basic, std::vector<std::uint8_t> truth) {
  ClosedState out;
  out.basic = basic;
  for (std::size_t f = 0; f < truth.size(); ++f) {
    if (truth[f] && !basic.count(static_cast<FactId>(f))) out.derived.insert(static_cast<FactId>(f));
  }
  out.truth = std::move(truth);
  return out;
}

}  // namespace

ClosedState closure(const BasicState& basic, std::span<const GroundRule> rules,
                    std::size_t fact_count, const NumericState& values) {
  std::vector<std::uint8_t> truth(universe_size(basic, rules, fact_count), 0);
  for (FactId f : basic) truth[f] = 1;
  const NumericContext ctx{&values, nullptr, nullptr};

  // watchers[f]: rules whose body mentions f.
  std::vector<std::vector<std::size_t>> watchers(truth.size());
  FactSet mentioned;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    mentioned.clear();
    collect_facts(rules[i].body, mentioned);
    for (FactId f : mentioned) watchers[f].push_back(i);
  }

  std::deque<std::size_t> agenda;
  std::vector<std::uint8_t> queued(rules.size(), 1);
  for (std::size_t i = 0; i < rules.size(); ++i) agenda.push_back(i);
  while (!agenda.empty()) {
    const std::size_t i = agenda.front();
    agenda.pop_front();
    queued[i] = 0;
    const GroundRule& rule = rules[i];
    if (truth[rule.head] || !body_holds(rule, truth, ctx)) continue;
    truth[rule.head] = 1;
    for (std::size_t w : watchers[rule.head]) {
      if (!queued[w] && !truth[rules[w].head]) {
        queued[w] = 1;
        agenda.push_back(w);
      }
    }
  }
  return make_state(basic, std::move(truth));
}

ClosedState closure_in_order(const BasicState& basic, std::span<const GroundRule> rules,
                             std::span<const std::size_t> order, std::size_t fact_count,
                             const NumericState& values) {
  std::vector<std::uint8_t> truth(universe_size(basic, rules, fact_count), 0);
  for (FactId f : basic) truth[f] = 1;
  const NumericContext ctx{&values, nullptr, nullptr};
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i : order) {
      const GroundRule& rule = rules[i];
      if (!truth[rule.head] && body_holds(rule, truth, ctx)) {
        truth[rule.head] = 1;
        changed = true;
      }
    }
  }
  return make_state(basic, std::move(truth));
}

ClosedState closure_oracle(const BasicState& basic, std::span<const GroundRule> rules,
                           std::size_t fact_count, const NumericState& values,
                           std::size_t max_candidates) {
  const std::size_t n = universe_size(basic, rules, fact_count);
  FactSet heads;
  for (const auto& r : rules) {
    if (!basic.count(r.head)) heads.insert(r.head);
  }
  if (heads.size() > max_candidates || heads.size() >= 63) {
    throw std::length_error("closure oracle: too many candidate facts");
  }
  const std::vector<FactId> candidates(heads.begin(), heads.end());
  const NumericContext ctx{&values, nullptr, nullptr};

  // Intersection of all closed supersets; starts as "everything".
  std::vector<std::uint8_t> meet(n, 1);
  std::vector<std::uint8_t> truth(n, 0);
  const std::uint64_t subsets = std::uint64_t{1} << candidates.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::fill(truth.begin(), truth.end(), 0);
    for (FactId f : basic) truth[f] = 1;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (mask >> k & 1U) truth[candidates[k]] = 1;
    }
    bool closed = true;
    for (const auto& r : rules) {
      if (!truth[r.head] && body_holds(r, truth, ctx)) {
        closed = false;
        break;
      }
    }
    if (!closed) continue;
    for (std::size_t f = 0; f < n; ++f) meet[f] = meet[f] && truth[f];
  }
  return make_state(basic, std::move(meet));
}

}  // namespace pddlval
