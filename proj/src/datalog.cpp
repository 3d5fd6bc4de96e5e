#include "dsb/datalog.hpp"

#include <algorithm>
#include <cmath>

#include "dsb/error.hpp"

namespace dsb {

namespace {

Atom atom(RelationIndex r, std::vector<std::size_t> slots) { return Atom{r, std::move(slots)}; }

HornRule rule(std::string label, std::size_t var_count, std::vector<Atom> body, std::optional<Atom> head) {
    return HornRule{std::move(label), var_count, std::move(body), std::move(head)};
}

// Horn3 relation indices.
constexpr RelationIndex kZero = 0;
constexpr RelationIndex kOne = 1;
constexpr RelationIndex kAnd = 2;

// TwoSat relation indices.
constexpr RelationIndex kOr = 0;
constexpr RelationIndex kImp = 1;
constexpr RelationIndex kNand = 2;

std::vector<HornRule> horn3_rules() {
    // Slot names: x=0 y=1 z=2 u=3 t=4 y'=5 x'=6, except where a rule quantifies fewer variables.
    enum : std::size_t { x = 0, y = 1, z = 2, u = 3, t = 4, yp = 5, xp = 6 };
    std::vector<HornRule> rules;
    rules.push_back(rule("(1)", 3, {atom(kAnd, {0, 1, 2})}, atom(kAnd, {1, 0, 2})));
    rules.push_back(rule("(2)", 4, {atom(kAnd, {x, y, u}), atom(kOne, {x})}, atom(kAnd, {z, y, u})));
    rules.push_back(rule("(3)", 4, {atom(kAnd, {x, y, u}), atom(kOne, {x}), atom(kOne, {y})}, atom(kOne, {u})));
    rules.push_back(rule("(4)", 4, {atom(kAnd, {x, y, u}), atom(kOne, {x}), atom(kZero, {u})}, atom(kZero, {y})));
    rules.push_back(rule("(5)", 2, {atom(kAnd, {0, 0, 1}), atom(kZero, {1})}, atom(kZero, {0})));
    rules.push_back(rule("(6)", 1, {atom(kZero, {0}), atom(kOne, {0})}, std::nullopt));
    rules.push_back(rule("(7)", 4, {atom(kAnd, {x, y, z}), atom(kAnd, {z, x, u})}, atom(kAnd, {x, y, u})));
    rules.push_back(rule("(8)", 5, {atom(kAnd, {x, y, z}), atom(kAnd, {x, x, t}), atom(kAnd, {z, t, u})},
                         atom(kAnd, {x, y, u})));
    rules.push_back(rule("(9)", 5, {atom(kAnd, {x, y, z}), atom(kAnd, {x, y, t}), atom(kAnd, {z, t, u})},
                         atom(kAnd, {x, y, u})));
    rules.push_back(rule("(10)", 5, {atom(kAnd, {x, y, z}), atom(kAnd, {z, t, u}), atom(kOne, {t})},
                         atom(kAnd, {x, y, u})));
    rules.push_back(rule("(11)", 5, {atom(kAnd, {x, y, z}), atom(kAnd, {z, t, u}), atom(kOne, {y})},
                         atom(kAnd, {x, t, u})));
    rules.push_back(rule("(12)", 6,
                         {atom(kAnd, {x, y, z}), atom(kAnd, {z, t, u}), atom(kAnd, {x, yp, t}), atom(kOne, {yp})},
                         atom(kAnd, {x, y, u})));
    rules.push_back(rule("(13)", 6,
                         {atom(kAnd, {x, x, z}), atom(kAnd, {z, t, u}), atom(kAnd, {y, yp, t}), atom(kOne, {yp})},
                         atom(kAnd, {x, y, u})));
    rules.push_back(rule("(14)", 5,
                         {atom(kAnd, {x, y, z}), atom(kAnd, {z, t, u}), atom(kOne, {y}), atom(kOne, {t})},
                         atom(kAnd, {x, y, u})));
    rules.push_back(rule("(15)", 7,
                         {atom(kAnd, {x, y, z}), atom(kAnd, {z, t, u}), atom(kAnd, {xp, yp, t}), atom(kOne, {xp}),
                          atom(kOne, {yp})},
                         atom(kAnd, {x, y, u})));
    rules.push_back(rule("(16)", 7,
                         {atom(kAnd, {x, y, z}), atom(kAnd, {z, t, u}), atom(kAnd, {xp, yp, t}), atom(kOne, {y}),
                          atom(kOne, {yp})},
                         atom(kAnd, {x, xp, u})));
    return rules;
}

std::vector<HornRule> two_sat_rules() {
    enum : std::size_t { x = 0, y = 1, z = 2 };
    std::vector<HornRule> rules;
    rules.push_back(rule("1", 1, {}, atom(kImp, {x, x})));
    rules.push_back(rule("2", 2, {atom(kOr, {x, y})}, atom(kOr, {y, x})));
    rules.push_back(rule("3", 2, {atom(kNand, {x, y})}, atom(kNand, {y, x})));
    rules.push_back(rule("4", 3, {atom(kImp, {x, y}), atom(kImp, {y, z})}, atom(kImp, {x, z})));
    rules.push_back(rule("5", 3, {atom(kOr, {x, y}), atom(kImp, {y, z})}, atom(kOr, {x, z})));
    rules.push_back(rule("6", 3, {atom(kNand, {x, y}), atom(kImp, {z, y})}, atom(kNand, {x, z})));
    rules.push_back(rule("7", 3, {atom(kNand, {x, y}), atom(kOr, {y, z})}, atom(kImp, {x, z})));
    rules.push_back(rule("stop-pair", 2,
                         {atom(kOr, {x, y}), atom(kImp, {x, y}), atom(kNand, {x, y}), atom(kImp, {y, x})},
                         std::nullopt));
    rules.push_back(rule("stop-diag", 1, {atom(kOr, {x, x}), atom(kNand, {x, x})}, std::nullopt));
    return rules;
}

std::vector<HornRule> horn3_completion() {
    enum : std::size_t { x = 0, y = 1, z = 2, u = 3 };
    std::vector<HornRule> rules;
    rules.push_back(rule("c1", 2, {}, atom(kAnd, {x, y, x})));
    rules.push_back(rule("c2", 3, {atom(kOne, {2})}, atom(kAnd, {0, 1, 2})));
    rules.push_back(rule("c3", 3, {atom(kZero, {0})}, atom(kAnd, {0, 1, 2})));
    rules.push_back(rule("c4", 4, {atom(kAnd, {x, y, z}), atom(kZero, {z})}, atom(kAnd, {x, y, u})));
    return rules;
}

std::vector<HornRule> two_sat_completion() {
    enum : std::size_t { x = 0, y = 1 };
    std::vector<HornRule> rules;
    rules.push_back(rule("w1", 2, {atom(kOr, {x, x})}, atom(kOr, {x, y})));
    rules.push_back(rule("w2", 2, {atom(kNand, {x, x})}, atom(kNand, {x, y})));
    rules.push_back(rule("w3", 2, {atom(kOr, {x, x})}, atom(kImp, {y, x})));
    rules.push_back(rule("w4", 2, {atom(kNand, {x, x})}, atom(kImp, {x, y})));
    return rules;
}

// Backtracking join over the body atoms. The next atom is always the one with
// the most already-bound slots, so fully bound atoms act as filters as early as possible.
class Matcher {
public:
    Matcher(const Instance& instance, const HornRule& rule,
            const std::function<bool(std::span<const Var>)>& visit)
        : instance_(instance),
          rule_(rule),
          visit_(visit),
          n_(static_cast<Var>(instance.vars())),
          binding_(rule.var_count, 0),
          bound_(rule.var_count, false),
          done_(rule.body.size(), false) {
        std::vector<bool> in_body(rule.var_count, false);
        for (const auto& a : rule.body) {
            for (auto s : a.slots) {
                in_body[s] = true;
            }
        }
        for (auto s : rule.occurring_slots()) {
            if (!in_body[s]) {
                free_slots_.push_back(s);
            }
        }
    }

    void run() { search(rule_.body.size()); }

private:
    bool search(std::size_t remaining) {
        if (remaining == 0) {
            return enumerate_free(0);
        }
        const std::size_t pick = choose_atom();
        const Atom& a = rule_.body[pick];
        done_[pick] = true;
        bool keep_going = true;

        std::size_t unbound = 0;
        for (auto s : a.slots) {
            unbound += bound_[s] ? 0 : 1;
        }
        const auto& rel = instance_.tmpl().relation(a.relation);
        if (unbound == 0) {
            if (instance_.contains(a.relation, current_tuple(a))) {
                keep_going = search(remaining - 1);
            }
        } else {
            const auto& list = tuples(a.relation);
            const double grid = std::pow(static_cast<double>(n_), static_cast<double>(unbound));
            if (static_cast<double>(list.size()) <= grid) {
                for (const Tuple& t : list) {
                    if (!try_bind(a, rel.arity, t)) {
                        continue;
                    }
                    keep_going = search(remaining - 1);
                    unbind_last();
                    if (!keep_going) {
                        break;
                    }
                }
            } else {
                keep_going = enumerate_atom(a, remaining);
            }
        }
        done_[pick] = false;
        return keep_going;
    }

    // Walks every value combination for the atom's unbound slots and keeps those present.
    bool enumerate_atom(const Atom& a, std::size_t remaining) {
        std::vector<std::size_t> open;
        for (auto s : a.slots) {
            if (!bound_[s] && std::find(open.begin(), open.end(), s) == open.end()) {
                open.push_back(s);
            }
        }
        for (auto s : open) {
            bound_[s] = true;
            binding_[s] = 0;
        }
        bool keep_going = true;
        while (true) {
            if (instance_.contains(a.relation, current_tuple(a))) {
                keep_going = search(remaining - 1);
                if (!keep_going) {
                    break;
                }
            }
            std::size_t k = 0;
            for (; k < open.size(); ++k) {
                if (++binding_[open[k]] < n_) {
                    break;
                }
                binding_[open[k]] = 0;
            }
            if (k == open.size()) {
                break;
            }
        }
        for (auto s : open) {
            bound_[s] = false;
            binding_[s] = 0;
        }
        return keep_going;
    }

    bool enumerate_free(std::size_t index) {
        if (index == free_slots_.size()) {
            return visit_(binding_);
        }
        const auto s = free_slots_[index];
        bound_[s] = true;
        bool keep_going = true;
        for (Var v = 0; v < n_ && keep_going; ++v) {
            binding_[s] = v;
            keep_going = enumerate_free(index + 1);
        }
        bound_[s] = false;
        binding_[s] = 0;
        return keep_going;
    }

    std::size_t choose_atom() const {
        std::size_t best = rule_.body.size();
        std::size_t best_bound = 0;
        for (std::size_t i = 0; i < rule_.body.size(); ++i) {
            if (done_[i]) {
                continue;
            }
            std::size_t bound_count = 0;
            for (auto s : rule_.body[i].slots) {
                bound_count += bound_[s] ? 1 : 0;
            }
            const bool complete = bound_count == rule_.body[i].slots.size();
            if (best == rule_.body.size() || complete ||
                (bound_count > best_bound) ||
                (bound_count == best_bound && tuples(rule_.body[i].relation).size() <
                                                  tuples(rule_.body[best].relation).size())) {
                best = i;
                best_bound = bound_count;
                if (complete) {
                    break;
                }
            }
        }
        return best;
    }

    bool try_bind(const Atom& a, std::size_t arity, const Tuple& t) {
        trail_marks_.push_back(trail_.size());
        for (std::size_t k = 0; k < arity; ++k) {
            const auto s = a.slots[k];
            if (bound_[s]) {
                if (binding_[s] != t[k]) {
                    unbind_last();
                    return false;
                }
            } else {
                bound_[s] = true;
                binding_[s] = t[k];
                trail_.push_back(s);
            }
        }
        return true;
    }

    void unbind_last() {
        const auto mark = trail_marks_.back();
        trail_marks_.pop_back();
        while (trail_.size() > mark) {
            bound_[trail_.back()] = false;
            binding_[trail_.back()] = 0;
            trail_.pop_back();
        }
    }

    Tuple current_tuple(const Atom& a) const {
        Tuple t{0, 0, 0};
        for (std::size_t k = 0; k < a.slots.size(); ++k) {
            t[k] = binding_[a.slots[k]];
        }
        return t;
    }

    const std::vector<Tuple>& tuples(RelationIndex r) const {
        if (cache_.size() <= r) {
            cache_.resize(instance_.tmpl().relation_count());
            cached_.resize(instance_.tmpl().relation_count(), false);
        }
        if (!cached_[r]) {
            cache_[r] = instance_.tuples(r);
            cached_[r] = true;
        }
        return cache_[r];
    }

    const Instance& instance_;
    const HornRule& rule_;
    const std::function<bool(std::span<const Var>)>& visit_;
    Var n_;
    std::vector<Var> binding_;
    std::vector<bool> bound_;
    std::vector<bool> done_;
    std::vector<std::size_t> free_slots_;
    std::vector<std::size_t> trail_;
    std::vector<std::size_t> trail_marks_;
    mutable std::vector<std::vector<Tuple>> cache_;
    mutable std::vector<bool> cached_;
};

Tuple head_tuple(const Atom& head, std::span<const Var> binding) {
    Tuple t{0, 0, 0};
    for (std::size_t k = 0; k < head.slots.size(); ++k) {
        t[k] = binding[head.slots[k]];
    }
    return t;
}

} // namespace

std::vector<std::size_t> HornRule::occurring_slots() const {
    std::vector<bool> seen(var_count, false);
    for (const auto& a : body) {
        for (auto s : a.slots) {
            seen[s] = true;
        }
    }
    if (head) {
        for (auto s : head->slots) {
            seen[s] = true;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < var_count; ++s) {
        if (seen[s]) {
            out.push_back(s);
        }
    }
    return out;
}

RuleSet builtin_rules(TemplateId t) {
    return RuleSet{t, t == TemplateId::Horn3 ? horn3_rules() : two_sat_rules()};
}

RuleSet completion_rules(TemplateId t) {
    return RuleSet{t, t == TemplateId::Horn3 ? horn3_completion() : two_sat_completion()};
}

RuleSet datalog_program(TemplateId t) {
    RuleSet program = builtin_rules(t);
    for (auto& r : completion_rules(t).rules) {
        program.rules.push_back(std::move(r));
    }
    return program;
}

Instance template_as_instance(TemplateId t) {
    Instance inst(t, 2);
    const auto& tmpl = Template::get(t);
    for (RelationIndex r = 0; r < tmpl.relation_count(); ++r) {
        for (const auto& values : tmpl.relation(r).tuples()) {
            Tuple args{0, 0, 0};
            std::copy(values.begin(), values.end(), args.begin());
            inst.add(r, args);
        }
    }
    return inst;
}

void for_each_match(const Instance& instance, const HornRule& rule,
                    const std::function<bool(std::span<const Var>)>& visit) {
    Matcher(instance, rule, visit).run();
}

bool check_rule(const Instance& instance, const HornRule& rule) {
    if (rule.is_stop()) {
        throw InvalidArgument("check_rule needs a rule with a head atom");
    }
    bool holds = true;
    for_each_match(instance, rule, [&](std::span<const Var> binding) {
        holds = instance.contains(rule.head->relation, head_tuple(*rule.head, binding));
        return holds;
    });
    return holds;
}

bool body_satisfiable(const Instance& instance, const HornRule& rule) {
    bool found = false;
    for_each_match(instance, rule, [&](std::span<const Var>) {
        found = true;
        return false;
    });
    return found;
}

Saturation immediate_consequence(const Instance& instance, const RuleSet& rules) {
    Saturation out{instance, false, 1};
    for (const auto& r : rules.rules) {
        if (r.is_stop()) {
            out.stop_fired = out.stop_fired || body_satisfiable(instance, r);
            continue;
        }
        for_each_match(instance, r, [&](std::span<const Var> binding) {
            out.instance.add(r.head->relation, head_tuple(*r.head, binding));
            return true;
        });
    }
    return out;
}

Saturation fixed_point(const Instance& instance, const RuleSet& rules) {
    Saturation current{instance, false, 0};
    while (true) {
        Saturation step = immediate_consequence(current.instance, rules);
        ++current.rounds;
        current.stop_fired = current.stop_fired || step.stop_fired;
        if (step.instance == current.instance) {
            break;
        }
        current.instance = std::move(step.instance);
    }
    return current;
}

} // namespace dsb
