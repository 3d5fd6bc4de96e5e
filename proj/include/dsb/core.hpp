#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace dsb {

enum class TemplateId : std::uint8_t { Horn3, TwoSat };

using Var = std::uint32_t;
using LiteralId = std::uint32_t;
using RelationIndex = std::size_t;

/// Sorted, duplicate-free list of literal ids.
using LiteralSet = std::vector<LiteralId>;

/// Variable tuple; positions past the relation's arity are zero.
using Tuple = std::array<Var, 3>;

using Bitset = boost::dynamic_bitset<std::uint64_t>;

struct Relation {
    std::string_view name;
    std::size_t arity;
    /// Bit v is set iff the Boolean tuple whose big-endian bit pattern is v
    /// belongs to the relation.
    std::uint32_t accepted;

    bool accepts(std::span<const std::uint8_t> values) const;
    std::vector<std::vector<std::uint8_t>> tuples() const;
};

/// One of the two fixed Boolean constraint languages.
///   Horn3:  zero/1 = {(0)}, one/1 = {(1)}, and3/3 = {(a,b,c) : a*b <= c}
///   TwoSat: or2/2 = a|b,    imp2/2 = !a|b, nand2/2 = !a|!b
class Template {
public:
    static const Template& get(TemplateId id);

    TemplateId id() const noexcept { return id_; }
    std::string_view name() const noexcept;
    std::span<const Relation> relations() const noexcept { return relations_; }
    const Relation& relation(RelationIndex r) const { return relations_.at(r); }
    std::size_t relation_count() const noexcept { return relations_.size(); }

private:
    Template(TemplateId id, std::vector<Relation> relations);

    TemplateId id_;
    std::vector<Relation> relations_;
};

inline constexpr std::array<TemplateId, 2> kAllTemplates{TemplateId::Horn3, TemplateId::TwoSat};

std::string_view template_name(TemplateId id) noexcept;

/// Decoded form of a literal id: a relation applied to a variable tuple.
struct ConstraintLiteral {
    LiteralId id;
    RelationIndex relation;
    Tuple args;

    friend bool operator==(const ConstraintLiteral&, const ConstraintLiteral&) = default;
};

/// Size of the constraint universe over n variables (2n + n^3 or 3n^2).
std::size_t universe_size(TemplateId t, std::size_t n);

/// First literal id belonging to relation r.
LiteralId relation_offset(TemplateId t, std::size_t n, RelationIndex r);

LiteralId encode(TemplateId t, std::size_t n, RelationIndex r, const Tuple& args);
ConstraintLiteral decode(TemplateId t, std::size_t n, LiteralId id);

/// All literals in ascending id order. Throws InvalidArgument for n == 0.
std::vector<ConstraintLiteral> constraint_universe(TemplateId t, std::size_t n);

/// A CSP instance over variables 0..n-1, stored as its constraint set.
///
/// Every tuple of every relation corresponds to exactly one literal id, so a
/// bitset over the constraint universe is a complete, canonical representation.
class Instance {
public:
    Instance(TemplateId t, std::size_t n);

    /// Every literal of the universe; the densification of an unsatisfiable instance.
    static Instance full(TemplateId t, std::size_t n);

    TemplateId template_id() const noexcept { return template_; }
    const Template& tmpl() const { return Template::get(template_); }
    std::size_t vars() const noexcept { return n_; }

    bool contains(RelationIndex r, const Tuple& args) const;
    bool contains(LiteralId id) const { return members_.test(id); }
    /// Returns true when the tuple was not already present.
    bool add(RelationIndex r, const Tuple& args);
    bool add(LiteralId id);
    bool remove(LiteralId id);

    std::vector<Tuple> tuples(RelationIndex r) const;
    std::size_t size() const { return members_.count(); }
    bool empty() const { return members_.none(); }

    const Bitset& members() const noexcept { return members_; }
    /// Componentwise inclusion; both instances must share template and n.
    bool is_subset_of(const Instance& other) const;

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.template_ == b.template_ && a.n_ == b.n_ && a.members_ == b.members_;
    }

private:
    TemplateId template_;
    std::size_t n_;
    Bitset members_;
};

struct Assignment {
    std::vector<std::uint8_t> values;

    std::size_t size() const noexcept { return values.size(); }
    std::uint8_t operator[](Var v) const { return values[v]; }
    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// True iff the assignment maps every constrained tuple into its template relation.
bool satisfies(const Assignment& h, const Instance& instance);

/// True iff the assignment satisfies the single literal.
bool satisfies_literal(const Assignment& h, TemplateId t, std::size_t n, LiteralId id);

LiteralSet constraints_of(const Instance& instance);
Instance instance_of(std::span<const LiteralId> literals, TemplateId t, std::size_t n);

LiteralSet to_literal_set(const Bitset& bits);
Bitset to_bitset(std::span<const LiteralId> literals, std::size_t size);

/// Lexicographic order on sorted id lists, shorter lists first.
bool shortlex_less(const LiteralSet& a, const LiteralSet& b);

} // namespace dsb
