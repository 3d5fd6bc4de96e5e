#include "dsb/oracle.hpp"

#include <algorithm>
#include <bit>

#include "dsb/error.hpp"

namespace dsb {

namespace {

void require_small(const Instance& instance) {
    if (instance.vars() > kOracleMaxVars) {
        throw ResourceLimit("oracle limited to " + std::to_string(kOracleMaxVars) + " variables, got " +
                            std::to_string(instance.vars()));
    }
}

// Bitset over the 2^n assignments satisfying one literal.
Bitset literal_mask(TemplateId t, std::size_t n, LiteralId id) {
    const std::size_t total = std::size_t{1} << n;
    Bitset mask(total);
    for (std::size_t m = 0; m < total; ++m) {
        if (satisfies_literal(assignment_at(n, m), t, n, id)) {
            mask.set(m);
        }
    }
    return mask;
}

} // namespace

Assignment assignment_at(std::size_t n, std::size_t index) {
    Assignment h{std::vector<std::uint8_t>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        h.values[i] = static_cast<std::uint8_t>((index >> (n - 1 - i)) & 1u);
    }
    return h;
}

Bitset hom_mask(const Instance& instance) {
    require_small(instance);
    const std::size_t n = instance.vars();
    const std::size_t total = std::size_t{1} << n;
    Bitset mask(total);
    for (std::size_t m = 0; m < total; ++m) {
        if (satisfies(assignment_at(n, m), instance)) {
            mask.set(m);
        }
    }
    return mask;
}

std::vector<Assignment> enumerate_homs(const Instance& instance) {
    const Bitset mask = hom_mask(instance);
    std::vector<Assignment> out;
    for (auto m = mask.find_first(); m != Bitset::npos; m = mask.find_next(m)) {
        out.push_back(assignment_at(instance.vars(), m));
    }
    return out;
}

DensifyResult oracle_densify(const Instance& instance) {
    const auto homs = enumerate_homs(instance);
    const TemplateId t = instance.template_id();
    const std::size_t n = instance.vars();
    if (homs.empty()) {
        Instance full = Instance::full(t, n);
        LiteralSet all = constraints_of(full);
        return DensifyResult{Status::Unsat, std::move(full), std::move(all)};
    }
    Instance maximal(t, n);
    const std::size_t size = universe_size(t, n);
    for (LiteralId id = 0; id < size; ++id) {
        const bool valid = std::all_of(homs.begin(), homs.end(),
                                       [&](const Assignment& h) { return satisfies_literal(h, t, n, id); });
        if (valid) {
            maximal.add(id);
        }
    }
    LiteralSet dense = constraints_of(maximal);
    return DensifyResult{Status::Sat, std::move(maximal), std::move(dense)};
}

std::vector<Instance> oracle_min(const Instance& instance) {
    require_small(instance);
    const TemplateId t = instance.template_id();
    const std::size_t n = instance.vars();
    const LiteralSet target = oracle_densify(instance).dense_set;
    if (target.size() > kOracleMaxTarget) {
        throw ResourceLimit("oracle_min limited to densifications of " + std::to_string(kOracleMaxTarget) +
                            " literals, got " + std::to_string(target.size()));
    }
    const Bitset homs = hom_mask(instance);
    std::vector<Bitset> masks;
    masks.reserve(target.size());
    for (LiteralId id : target) {
        masks.push_back(literal_mask(t, n, id));
    }

    const std::uint32_t subsets = 1u << target.size();
    std::vector<std::uint32_t> order(subsets);
    for (std::uint32_t s = 0; s < subsets; ++s) {
        order[s] = s;
    }
    std::stable_sort(order.begin(), order.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });

    std::vector<std::uint32_t> kept;
    const Bitset everything = Bitset(std::size_t{1} << n).set();
    for (std::uint32_t s : order) {
        if (std::any_of(kept.begin(), kept.end(), [s](std::uint32_t k) { return (k & s) == k; })) {
            continue;
        }
        Bitset solutions = everything;
        for (std::size_t i = 0; i < target.size(); ++i) {
            if ((s >> i) & 1u) {
                solutions &= masks[i];
            }
        }
        if (solutions == homs) {
            kept.push_back(s);
        }
    }

    std::vector<LiteralSet> sets;
    for (std::uint32_t s : kept) {
        LiteralSet set;
        for (std::size_t i = 0; i < target.size(); ++i) {
            if ((s >> i) & 1u) {
                set.push_back(target[i]);
            }
        }
        sets.push_back(std::move(set));
    }
    std::sort(sets.begin(), sets.end(), shortlex_less);
    std::vector<Instance> out;
    for (const auto& set : sets) {
        out.push_back(instance_of(set, t, n));
    }
    return out;
}

PairRelation transpose(PairRelation rho) {
    // Swap (0,1) and (1,0); (0,0) and (1,1) stay.
    const PairRelation swapped = static_cast<PairRelation>(((rho >> 1) & 0b0010) | ((rho << 1) & 0b0100));
    return static_cast<PairRelation>((rho & kEquality) | swapped);
}

PairRelation compose(PairRelation first, PairRelation second) {
    PairRelation out = 0;
    for (unsigned a = 0; a < 2; ++a) {
        for (unsigned c = 0; c < 2; ++c) {
            for (unsigned b = 0; b < 2; ++b) {
                if (((first >> (2 * a + b)) & 1u) && ((second >> (2 * b + c)) & 1u)) {
                    out = static_cast<PairRelation>(out | (1u << (2 * a + c)));
                }
            }
        }
    }
    return out;
}

BinaryRelationTable build_relation_table(const Instance& instance) {
    if (instance.template_id() != TemplateId::TwoSat) {
        throw InvalidArgument("relation tables are defined for 2sat instances only");
    }
    const std::size_t n = instance.vars();
    const auto& tmpl = instance.tmpl();
    BinaryRelationTable table(n);
    for (Var u = 0; u < n; ++u) {
        for (Var v = 0; v < n; ++v) {
            PairRelation rho = kAllPairs;
            for (RelationIndex r = 0; r < tmpl.relation_count(); ++r) {
                const auto accepted = static_cast<PairRelation>(tmpl.relation(r).accepted);
                if (instance.contains(r, {u, v, 0})) {
                    rho &= accepted;
                }
                if (instance.contains(r, {v, u, 0})) {
                    rho &= transpose(accepted);
                }
            }
            if (u == v) {
                rho &= kEquality;
            }
            table.set(u, v, rho);
        }
    }
    return table;
}

bool path_consistent(const BinaryRelationTable& table) {
    const std::size_t n = table.vars();
    for (Var u = 0; u < n; ++u) {
        if ((table.at(u, u) & ~kEquality) != 0) {
            return false;
        }
        for (Var v = 0; v < n; ++v) {
            if (table.at(u, v) == 0) {
                return false;
            }
        }
    }
    for (Var u = 0; u < n; ++u) {
        for (Var v = 0; v < n; ++v) {
            for (Var w = 0; w < n; ++w) {
                const PairRelation via = compose(table.at(u, v), table.at(v, w));
                if ((table.at(u, w) & ~via) != 0) {
                    return false;
                }
            }
        }
    }
    return true;
}

PairRelation projection(const Instance& instance, Var u, Var v) {
    if (u >= instance.vars() || v >= instance.vars()) {
        throw InvalidArgument("projection variable out of range");
    }
    PairRelation out = 0;
    for (const auto& h : enumerate_homs(instance)) {
        out = static_cast<PairRelation>(out | (1u << (2 * h[u] + h[v])));
    }
    return out;
}

} // namespace dsb
