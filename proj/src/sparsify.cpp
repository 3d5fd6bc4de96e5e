#include "dsb/sparsify.hpp"

#include <algorithm>
#include <map>

#include "dsb/densify.hpp"
#include "dsb/error.hpp"
#include "dsb/implsys.hpp"

namespace dsb {

namespace {

struct Rule {
    Bitset body;
    LiteralId head;
};

SparsifyResult to_result(const KeyEnumeration& keys, const Instance& instance, std::size_t target_size) {
    SparsifyResult out;
    out.truncated = keys.truncated;
    out.target_size = target_size;
    for (const auto& key : keys.keys) {
        out.minimals.push_back(instance_of(key, instance.template_id(), instance.vars()));
    }
    return out;
}

// Keeps, per head, only implications whose body is not a superset of another's.
std::vector<Rule> drop_subsumed(std::vector<Rule> rules) {
    std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
        if (a.head != b.head) {
            return a.head < b.head;
        }
        const auto ca = a.body.count();
        const auto cb = b.body.count();
        return ca != cb ? ca < cb : a.body < b.body;
    });
    std::vector<Rule> kept;
    std::size_t group_start = 0;
    for (auto& r : rules) {
        if (!kept.empty() && kept.back().head != r.head) {
            group_start = kept.size();
        }
        const bool subsumed = std::any_of(kept.begin() + static_cast<std::ptrdiff_t>(group_start), kept.end(),
                                          [&](const Rule& k) { return k.body.is_subset_of(r.body); });
        if (!subsumed) {
            kept.push_back(std::move(r));
        }
    }
    return kept;
}

// Removes each literal of `eliminate` by resolving every implication that
// derives it with every implication that consumes it.
std::vector<Rule> project(std::vector<Rule> rules, Bitset eliminate, std::size_t budget) {
    while (eliminate.any()) {
        // Cheapest literal first: fewest resolvent pairs.
        std::size_t best = Bitset::npos;
        std::size_t best_cost = 0;
        for (auto x = eliminate.find_first(); x != Bitset::npos; x = eliminate.find_next(x)) {
            std::size_t producers = 0;
            std::size_t consumers = 0;
            for (const auto& r : rules) {
                producers += r.head == x ? 1 : 0;
                consumers += r.body.test(x) ? 1 : 0;
            }
            const std::size_t cost = producers * consumers;
            if (best == Bitset::npos || cost < best_cost) {
                best = x;
                best_cost = cost;
            }
        }
        eliminate.reset(best);

        std::vector<Rule> next;
        std::vector<const Rule*> producers;
        std::vector<const Rule*> consumers;
        for (const auto& r : rules) {
            if (r.head == best) {
                producers.push_back(&r);
            } else if (r.body.test(best)) {
                consumers.push_back(&r);
            } else {
                next.push_back(r);
            }
        }
        for (const Rule* p : producers) {
            for (const Rule* c : consumers) {
                Bitset body = c->body;
                body.reset(best);
                body |= p->body;
                if (body.test(c->head)) {
                    continue;
                }
                next.push_back(Rule{std::move(body), c->head});
                if (next.size() > budget) {
                    throw ResourceLimit("projection by resolution exceeded " + std::to_string(budget) +
                                        " implications");
                }
            }
        }
        rules = drop_subsumed(std::move(next));
    }
    return rules;
}

} // namespace

SparsifyResult sparsify_all(const Instance& instance, std::size_t limit) {
    if (limit == 0) {
        throw InvalidArgument("sparsify: limit must be positive");
    }
    const auto dense = densify(instance).dense_set;
    const auto sigma = cached_sigma(instance.template_id(), instance.vars());
    return to_result(enumerate_minimal_keys(*sigma, dense, dense, limit), instance, dense.size());
}

SparsifyResult sparsify_within(const Instance& instance, std::span<const LiteralId> pool, std::size_t limit,
                               std::size_t budget) {
    if (limit == 0) {
        throw InvalidArgument("sparsify: limit must be positive");
    }
    const TemplateId t = instance.template_id();
    const std::size_t n = instance.vars();
    const auto sigma = cached_sigma(t, n);
    const LiteralSet dense = densify(instance).dense_set;
    const std::size_t attributes = sigma->attribute_count();

    Bitset dense_bits = to_bitset(dense, attributes);
    Bitset within = to_bitset(pool, sigma->literal_count());
    within.resize(attributes);
    within &= dense_bits;
    if (!dense_bits.is_subset_of(sigma->closure(within))) {
        return SparsifyResult{{}, false, dense.size()};
    }

    // Implications with a body outside the densification never fire from
    // subsets of it; bodies holding bottom are implied by bottom's own semantics.
    Bitset reachable = dense_bits;
    reachable.set(sigma->bottom());
    std::vector<Rule> rules;
    for (std::size_t i = 0; i < sigma->size(); ++i) {
        const auto body = sigma->body(i);
        const bool inside = std::all_of(body.begin(), body.end(), [&](LiteralId id) {
            return id != sigma->bottom() && dense_bits.test(id);
        });
        if (inside && reachable.test(sigma->head(i))) {
            rules.push_back(Rule{to_bitset(body, attributes), sigma->head(i)});
        }
    }
    Bitset eliminate = dense_bits - within;
    rules = project(std::move(rules), std::move(eliminate), budget);

    std::vector<Implication> projected;
    projected.reserve(rules.size());
    for (const auto& r : rules) {
        projected.push_back(Implication{to_literal_set(r.body), r.head});
    }
    const ImplicationalSystem reduced(sigma->literal_count(), std::move(projected));
    const LiteralSet target = to_literal_set(within);
    return to_result(enumerate_minimal_keys(reduced, target, target, limit), instance, dense.size());
}

bool is_minimal(const Instance& instance) {
    for (LiteralId c : constraints_of(instance)) {
        Instance without = instance;
        without.remove(c);
        if (densify(without).maximal.contains(c)) {
            return false;
        }
    }
    return true;
}

} // namespace dsb
