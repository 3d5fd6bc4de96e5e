#include "dsb/implsys.hpp"

#include <algorithm>
#include <numeric>

#include "dsb/datalog.hpp"
#include "dsb/error.hpp"

namespace dsb {

namespace {

void check_ids(const ImplicationalSystem& sigma, std::span<const LiteralId> ids) {
    for (LiteralId id : ids) {
        if (id >= sigma.attribute_count()) {
            throw InvalidArgument("literal id " + std::to_string(id) + " outside the implicational system");
        }
    }
}

Bitset bits_of(const ImplicationalSystem& sigma, std::span<const LiteralId> ids) {
    check_ids(sigma, ids);
    return to_bitset(ids, sigma.attribute_count());
}

bool covers(const ImplicationalSystem& sigma, const Bitset& key, const Bitset& target) {
    return target.is_subset_of(sigma.closure(key));
}

// Greedy descending-id minimization on bitsets; key must already cover target.
Bitset minimize_bits(const ImplicationalSystem& sigma, Bitset key, const Bitset& target) {
    std::vector<std::size_t> members;
    for (auto pos = key.find_first(); pos != Bitset::npos; pos = key.find_next(pos)) {
        members.push_back(pos);
    }
    for (auto it = members.rbegin(); it != members.rend(); ++it) {
        key.reset(*it);
        if (!covers(sigma, key, target)) {
            key.set(*it);
        }
    }
    return key;
}

} // namespace

ImplicationalSystem::ImplicationalSystem(std::size_t literal_count, std::vector<Implication> implications)
    : literal_count_(literal_count) {
    const std::size_t attributes = literal_count + 1;
    std::vector<Implication> kept;
    kept.reserve(implications.size());
    for (auto& imp : implications) {
        if (imp.head >= attributes) {
            throw InvalidArgument("implication head " + std::to_string(imp.head) + " out of range");
        }
        std::sort(imp.body.begin(), imp.body.end());
        imp.body.erase(std::unique(imp.body.begin(), imp.body.end()), imp.body.end());
        if (!imp.body.empty() && imp.body.back() >= attributes) {
            throw InvalidArgument("implication body literal " + std::to_string(imp.body.back()) + " out of range");
        }
        if (std::binary_search(imp.body.begin(), imp.body.end(), imp.head)) {
            continue;
        }
        kept.push_back(std::move(imp));
    }
    std::sort(kept.begin(), kept.end(), [](const Implication& a, const Implication& b) {
        if (a.head != b.head) {
            return a.head < b.head;
        }
        return a.body < b.body;
    });
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

    body_offsets_.reserve(kept.size() + 1);
    body_offsets_.push_back(0);
    heads_.reserve(kept.size());
    std::vector<std::size_t> counts(attributes, 0);
    for (const auto& imp : kept) {
        body_literals_.insert(body_literals_.end(), imp.body.begin(), imp.body.end());
        body_offsets_.push_back(body_literals_.size());
        heads_.push_back(imp.head);
        for (LiteralId id : imp.body) {
            ++counts[id];
        }
    }

    occurrence_offsets_.assign(attributes + 1, 0);
    for (std::size_t id = 0; id < attributes; ++id) {
        occurrence_offsets_[id + 1] = occurrence_offsets_[id] + counts[id];
    }
    occurrence_list_.resize(occurrence_offsets_.back());
    std::vector<std::size_t> fill(occurrence_offsets_.begin(), occurrence_offsets_.end() - 1);
    for (std::uint32_t i = 0; i < heads_.size(); ++i) {
        const auto b = body(i);
        if (b.empty()) {
            empty_body_.push_back(i);
        }
        for (LiteralId id : b) {
            occurrence_list_[fill[id]++] = i;
        }
    }
}

Implication ImplicationalSystem::implication(std::size_t i) const {
    const auto b = body(i);
    return Implication{LiteralSet(b.begin(), b.end()), heads_[i]};
}

Bitset ImplicationalSystem::closure(const Bitset& start) const {
    Bitset result = start;
    result.resize(attribute_count());
    if (result.test(bottom())) {
        result.set();
        return result;
    }
    std::vector<std::uint32_t> missing(heads_.size());
    for (std::size_t i = 0; i < heads_.size(); ++i) {
        missing[i] = static_cast<std::uint32_t>(body_offsets_[i + 1] - body_offsets_[i]);
    }
    std::vector<LiteralId> queue;
    for (auto pos = result.find_first(); pos != Bitset::npos; pos = result.find_next(pos)) {
        queue.push_back(static_cast<LiteralId>(pos));
    }
    auto derive = [&](LiteralId head) {
        if (!result.test(head)) {
            result.set(head);
            queue.push_back(head);
        }
        return head != bottom();
    };
    for (auto i : empty_body_) {
        if (!derive(heads_[i])) {
            result.set();
            return result;
        }
    }
    for (std::size_t next = 0; next < queue.size(); ++next) {
        for (auto i : occurrences(queue[next])) {
            if (--missing[i] == 0 && !derive(heads_[i])) {
                result.set();
                return result;
            }
        }
    }
    return result;
}

ImplicationalSystem ground_sigma(TemplateId t, std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("ground_sigma needs at least one variable");
    }
    const std::size_t literals = universe_size(t, n);
    const auto bottom = static_cast<LiteralId>(literals);
    std::vector<Implication> out;
    std::size_t raw = 0;

    for (const auto& rule : datalog_program(t).rules) {
        const auto slots = rule.occurring_slots();
        std::vector<Var> binding(rule.var_count, 0);
        auto literal_of = [&](const Atom& a) {
            Tuple args{0, 0, 0};
            for (std::size_t k = 0; k < a.slots.size(); ++k) {
                args[k] = binding[a.slots[k]];
            }
            return encode(t, n, a.relation, args);
        };
        while (true) {
            Implication imp;
            imp.body.reserve(rule.body.size());
            for (const auto& a : rule.body) {
                imp.body.push_back(literal_of(a));
            }
            imp.head = rule.head ? literal_of(*rule.head) : bottom;
            out.push_back(std::move(imp));
            ++raw;

            std::size_t k = 0;
            for (; k < slots.size(); ++k) {
                if (++binding[slots[k]] < n) {
                    break;
                }
                binding[slots[k]] = 0;
            }
            if (k == slots.size()) {
                break;
            }
        }
    }
    for (LiteralId x = 0; x < literals; ++x) {
        out.push_back(Implication{{bottom}, x});
    }

    ImplicationalSystem sigma(literals, std::move(out));
    sigma.template_ = t;
    sigma.vars_ = n;
    sigma.raw_groundings_ = raw;
    return sigma;
}

LiteralSet closure(const ImplicationalSystem& sigma, std::span<const LiteralId> a) {
    return to_literal_set(sigma.closure(bits_of(sigma, a)));
}

bool implies(const ImplicationalSystem& sigma, std::span<const LiteralId> a, std::span<const LiteralId> b) {
    return covers(sigma, bits_of(sigma, a), bits_of(sigma, b));
}

LiteralSet minimize_key(const ImplicationalSystem& sigma, std::span<const LiteralId> key,
                        std::span<const LiteralId> target) {
    const Bitset key_bits = bits_of(sigma, key);
    const Bitset target_bits = bits_of(sigma, target);
    if (!covers(sigma, key_bits, target_bits)) {
        throw InvalidArgument("minimize_key: the key does not imply the target");
    }
    return to_literal_set(minimize_bits(sigma, key_bits, target_bits));
}

KeyEnumeration enumerate_minimal_keys(const ImplicationalSystem& sigma, std::span<const LiteralId> target,
                                      std::span<const LiteralId> allowed, std::size_t limit) {
    if (limit == 0) {
        throw InvalidArgument("enumerate_minimal_keys: limit must be positive");
    }
    const Bitset target_bits = bits_of(sigma, target);
    const Bitset allowed_bits = bits_of(sigma, allowed);
    if (allowed_bits.test(sigma.bottom())) {
        throw InvalidArgument("enumerate_minimal_keys: bottom cannot be part of a key");
    }
    if (!covers(sigma, allowed_bits, target_bits)) {
        throw NoKey("no subset of the allowed literals implies the target");
    }

    // Implications usable for the exchange step: body within allowed.
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const auto b = sigma.body(i);
        if (std::all_of(b.begin(), b.end(), [&](LiteralId id) { return allowed_bits.test(id); })) {
            usable.push_back(i);
        }
    }

    std::vector<Bitset> keys{minimize_bits(sigma, allowed_bits, target_bits)};
    bool truncated = false;
    auto try_candidate = [&](Bitset candidate) {
        for (const auto& k : keys) {
            if (k.is_subset_of(candidate)) {
                return;
            }
        }
        keys.push_back(minimize_bits(sigma, std::move(candidate), target_bits));
    };

    for (std::size_t next = 0; next < keys.size() && !truncated; ++next) {
        const Bitset key = keys[next];
        for (auto i : usable) {
            const LiteralId head = sigma.head(i);
            Bitset with_body = key;
            for (LiteralId id : sigma.body(i)) {
                with_body.set(id);
            }
            if (head == sigma.bottom()) {
                for (auto pos = key.find_first(); pos != Bitset::npos; pos = key.find_next(pos)) {
                    Bitset candidate = with_body;
                    if (!std::binary_search(sigma.body(i).begin(), sigma.body(i).end(),
                                            static_cast<LiteralId>(pos))) {
                        candidate.reset(pos);
                    }
                    try_candidate(std::move(candidate));
                }
            } else if (key.test(head)) {
                with_body.reset(head);
                try_candidate(std::move(with_body));
            }
            if (keys.size() > limit) {
                truncated = true;
                break;
            }
        }
        // Virtual rule target -> bottom: makes "covers target" the same as
        // "generates all of allowed", which the exchange step relies on.
        const bool target_usable = target_bits.is_subset_of(allowed_bits);
        for (auto pos = key.find_first(); target_usable && pos != Bitset::npos && !truncated;
             pos = key.find_next(pos)) {
            Bitset candidate = key | target_bits;
            if (!target_bits.test(pos)) {
                candidate.reset(pos);
            }
            try_candidate(std::move(candidate));
            if (keys.size() > limit) {
                truncated = true;
            }
        }
    }

    KeyEnumeration result;
    result.truncated = truncated;
    const std::size_t count = std::min(keys.size(), limit);
    for (std::size_t i = 0; i < count; ++i) {
        result.keys.push_back(to_literal_set(keys[i]));
    }
    std::sort(result.keys.begin(), result.keys.end(), shortlex_less);
    return result;
}

} // namespace dsb
