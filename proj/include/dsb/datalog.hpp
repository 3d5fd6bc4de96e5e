#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsb/core.hpp"

namespace dsb {

/// A relation applied to rule-variable slots.
struct Atom {
    RelationIndex relation;
    std::vector<std::size_t> slots;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Schema-level Horn formula: conjunction of body atoms implies the head atom,
/// or the stop symbol when head is empty.
struct HornRule {
    std::string label;
    std::size_t var_count = 0;
    std::vector<Atom> body;
    std::optional<Atom> head;

    bool is_stop() const noexcept { return !head.has_value(); }
    /// Slots that appear in some atom, ascending. Declared-but-unused variables are skipped.
    std::vector<std::size_t> occurring_slots() const;
};

struct RuleSet {
    TemplateId template_id;
    std::vector<HornRule> rules;
};

/// The rule lists published for each template, in their printed order:
/// Horn3 rules (1)-(16) with (6) the stop rule, TwoSat formulas 1-7 followed by its two stop rules.
///
/// Horn3 rules (10) and (11) carry each other's heads as printed; as printed
/// neither holds on the template. They are stored here with the heads swapped.
RuleSet builtin_rules(TemplateId t);

/// Sound rules added on top of builtin_rules so that the fixed point is the
/// maximal instance on every input: tautologies, unit weakening, and (Horn3)
/// the collapse of and3 bodies whose conclusion is forced to 0.
RuleSet completion_rules(TemplateId t);

/// builtin_rules followed by completion_rules; the program every engine runs.
RuleSet datalog_program(TemplateId t);

/// The template viewed as an instance on the two variables {0, 1}.
Instance template_as_instance(TemplateId t);

/// Calls visit(binding) for every map of the rule's occurring slots into the
/// instance's variables that satisfies all body atoms. binding is indexed by slot;
/// non-occurring slots hold 0. Returning false from visit stops the enumeration.
void for_each_match(const Instance& instance, const HornRule& rule,
                    const std::function<bool(std::span<const Var>)>& visit);

/// Instance |= rule. Throws InvalidArgument for stop rules.
bool check_rule(const Instance& instance, const HornRule& rule);

/// True iff the body of the (stop) rule is satisfiable in the instance.
bool body_satisfiable(const Instance& instance, const HornRule& rule);

struct Saturation {
    Instance instance;
    bool stop_fired = false;
    std::size_t rounds = 0;
};

/// One parallel application of every rule: Q(R).
Saturation immediate_consequence(const Instance& instance, const RuleSet& rules);

/// Naive bottom-up iteration of immediate_consequence until nothing is added.
/// Saturation continues after a stop rule fires.
Saturation fixed_point(const Instance& instance, const RuleSet& rules);

} // namespace dsb
