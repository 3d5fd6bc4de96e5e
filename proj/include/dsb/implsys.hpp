#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dsb/core.hpp"

namespace dsb {

/// body -> head over literal ids. The bottom literal (id == literal count)
/// stands for "no solution": deriving it derives everything.
struct Implication {
    LiteralSet body;
    LiteralId head;

    friend bool operator==(const Implication&, const Implication&) = default;
};

/// A set of unit-head implications over literals 0..literal_count()-1 plus bottom.
///
/// Construction normalizes the input: bodies are sorted and deduplicated,
/// implications whose head occurs in their own body are dropped, and duplicate
/// implications are merged. Stored order is by head, then by body.
class ImplicationalSystem {
public:
    ImplicationalSystem(std::size_t literal_count, std::vector<Implication> implications);

    std::size_t literal_count() const noexcept { return literal_count_; }
    LiteralId bottom() const noexcept { return static_cast<LiteralId>(literal_count_); }
    /// Literals plus bottom.
    std::size_t attribute_count() const noexcept { return literal_count_ + 1; }

    std::size_t size() const noexcept { return heads_.size(); }
    std::span<const LiteralId> body(std::size_t i) const {
        return {body_literals_.data() + body_offsets_[i], body_offsets_[i + 1] - body_offsets_[i]};
    }
    LiteralId head(std::size_t i) const { return heads_[i]; }
    Implication implication(std::size_t i) const;

    /// Implications whose body mentions the literal.
    std::span<const std::uint32_t> occurrences(LiteralId id) const {
        return {occurrence_list_.data() + occurrence_offsets_[id],
                occurrence_offsets_[id + 1] - occurrence_offsets_[id]};
    }

    /// Set when the system was grounded from a template's rule program.
    std::optional<TemplateId> template_id() const noexcept { return template_; }
    std::size_t vars() const noexcept { return vars_; }
    /// Rule groundings enumerated before normalization (0 for hand-built systems).
    std::size_t raw_groundings() const noexcept { return raw_groundings_; }
    void set_provenance(TemplateId t, std::size_t n) {
        template_ = t;
        vars_ = n;
    }

    /// Counter-based closure (each implication keeps the number of body
    /// literals still missing). Linear in the total size of the system.
    Bitset closure(const Bitset& start) const;

private:
    friend ImplicationalSystem ground_sigma(TemplateId t, std::size_t n);

    std::size_t literal_count_;
    std::vector<std::size_t> body_offsets_;
    std::vector<LiteralId> body_literals_;
    std::vector<LiteralId> heads_;
    std::vector<std::size_t> occurrence_offsets_;
    std::vector<std::uint32_t> occurrence_list_;
    std::vector<std::uint32_t> empty_body_;
    std::optional<TemplateId> template_;
    std::size_t vars_ = 0;
    std::size_t raw_groundings_ = 0;
};

/// Grounds datalog_program(t) over n variables: each non-stop rule becomes
/// body -> head for every map of its occurring slots, each stop rule becomes
/// body -> bottom, and bottom -> x is added for every literal x.
ImplicationalSystem ground_sigma(TemplateId t, std::size_t n);

/// Least superset of a closed under sigma; the whole attribute set when bottom is derived.
LiteralSet closure(const ImplicationalSystem& sigma, std::span<const LiteralId> a);

/// b is contained in closure(a).
bool implies(const ImplicationalSystem& sigma, std::span<const LiteralId> a, std::span<const LiteralId> b);

/// Drops literals of key in descending id order while it still implies target.
/// Throws InvalidArgument if key does not imply target.
LiteralSet minimize_key(const ImplicationalSystem& sigma, std::span<const LiteralId> key,
                        std::span<const LiteralId> target);

struct KeyEnumeration {
    std::vector<LiteralSet> keys;
    bool truncated = false;
};

/// Every inclusion-minimal K within allowed whose closure contains target
/// (Lucchesi-Osborn). Only implications with body inside allowed are used;
/// an implication into bottom stands for body -> x for every allowed x.
/// Keys come out shortest first, then lexicographic.
///
/// Expects target within allowed and allowed closed under sigma; keys found
/// outside that setting may be incomplete.
///
/// Throws InvalidArgument for limit == 0 or out-of-range ids, NoKey when
/// closure(allowed) misses part of target.
KeyEnumeration enumerate_minimal_keys(const ImplicationalSystem& sigma, std::span<const LiteralId> target,
                                      std::span<const LiteralId> allowed, std::size_t limit);

} // namespace dsb
