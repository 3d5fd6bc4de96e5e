#include "dsb/core.hpp"

#include <algorithm>

#include "dsb/error.hpp"

namespace dsb {

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
    std::size_t result = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        result *= base;
    }
    return result;
}

std::uint32_t accepted_mask(std::size_t arity, bool (*pred)(const std::uint8_t*)) {
    std::uint32_t mask = 0;
    std::array<std::uint8_t, 3> values{};
    for (std::uint32_t pattern = 0; pattern < (1u << arity); ++pattern) {
        for (std::size_t k = 0; k < arity; ++k) {
            values[k] = static_cast<std::uint8_t>((pattern >> (arity - 1 - k)) & 1u);
        }
        if (pred(values.data())) {
            mask |= 1u << pattern;
        }
    }
    return mask;
}

} // namespace

bool Relation::accepts(std::span<const std::uint8_t> values) const {
    std::uint32_t pattern = 0;
    for (std::size_t k = 0; k < arity; ++k) {
        pattern = (pattern << 1) | (values[k] & 1u);
    }
    return (accepted >> pattern) & 1u;
}

std::vector<std::vector<std::uint8_t>> Relation::tuples() const {
    std::vector<std::vector<std::uint8_t>> out;
    for (std::uint32_t pattern = 0; pattern < (1u << arity); ++pattern) {
        if (((accepted >> pattern) & 1u) == 0) {
            continue;
        }
        std::vector<std::uint8_t> t(arity);
        for (std::size_t k = 0; k < arity; ++k) {
            t[k] = static_cast<std::uint8_t>((pattern >> (arity - 1 - k)) & 1u);
        }
        out.push_back(std::move(t));
    }
    return out;
}

Template::Template(TemplateId id, std::vector<Relation> relations)
    : id_(id), relations_(std::move(relations)) {}

const Template& Template::get(TemplateId id) {
    static const Template horn3(
        TemplateId::Horn3,
        {
            {"zero", 1, accepted_mask(1, [](const std::uint8_t* v) { return v[0] == 0; })},
            {"one", 1, accepted_mask(1, [](const std::uint8_t* v) { return v[0] == 1; })},
            {"and", 3, accepted_mask(3, [](const std::uint8_t* v) { return (v[0] & v[1]) <= v[2]; })},
        });
    static const Template two_sat(
        TemplateId::TwoSat,
        {
            {"or", 2, accepted_mask(2, [](const std::uint8_t* v) { return v[0] == 1 || v[1] == 1; })},
            {"imp", 2, accepted_mask(2, [](const std::uint8_t* v) { return v[0] == 0 || v[1] == 1; })},
            {"nand", 2, accepted_mask(2, [](const std::uint8_t* v) { return v[0] == 0 || v[1] == 0; })},
        });
    return id == TemplateId::Horn3 ? horn3 : two_sat;
}

std::string_view Template::name() const noexcept { return template_name(id_); }

std::string_view template_name(TemplateId id) noexcept {
    return id == TemplateId::Horn3 ? "horn3" : "2sat";
}

std::size_t universe_size(TemplateId t, std::size_t n) {
    std::size_t total = 0;
    for (const auto& rel : Template::get(t).relations()) {
        total += power(n, rel.arity);
    }
    return total;
}

LiteralId relation_offset(TemplateId t, std::size_t n, RelationIndex r) {
    const auto& tmpl = Template::get(t);
    std::size_t offset = 0;
    for (RelationIndex i = 0; i < r; ++i) {
        offset += power(n, tmpl.relation(i).arity);
    }
    return static_cast<LiteralId>(offset);
}

LiteralId encode(TemplateId t, std::size_t n, RelationIndex r, const Tuple& args) {
    const auto& rel = Template::get(t).relation(r);
    std::size_t index = 0;
    for (std::size_t k = 0; k < rel.arity; ++k) {
        if (args[k] >= n) {
            throw InvalidArgument("variable index out of range");
        }
        index = index * n + args[k];
    }
    return relation_offset(t, n, r) + static_cast<LiteralId>(index);
}

ConstraintLiteral decode(TemplateId t, std::size_t n, LiteralId id) {
    const auto& tmpl = Template::get(t);
    std::size_t rest = id;
    for (RelationIndex r = 0; r < tmpl.relation_count(); ++r) {
        const std::size_t arity = tmpl.relation(r).arity;
        const std::size_t count = power(n, arity);
        if (rest < count) {
            ConstraintLiteral lit{id, r, {0, 0, 0}};
            for (std::size_t k = arity; k-- > 0;) {
                lit.args[k] = static_cast<Var>(rest % n);
                rest /= n;
            }
            return lit;
        }
        rest -= count;
    }
    throw InvalidArgument("literal id " + std::to_string(id) + " outside the constraint universe");
}

std::vector<ConstraintLiteral> constraint_universe(TemplateId t, std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("constraint universe needs at least one variable");
    }
    const std::size_t size = universe_size(t, n);
    std::vector<ConstraintLiteral> out;
    out.reserve(size);
    for (LiteralId id = 0; id < size; ++id) {
        out.push_back(decode(t, n, id));
    }
    return out;
}

Instance::Instance(TemplateId t, std::size_t n) : template_(t), n_(n), members_(universe_size(t, n)) {}

Instance Instance::full(TemplateId t, std::size_t n) {
    Instance inst(t, n);
    inst.members_.set();
    return inst;
}

bool Instance::contains(RelationIndex r, const Tuple& args) const {
    return members_.test(encode(template_, n_, r, args));
}

bool Instance::add(RelationIndex r, const Tuple& args) { return add(encode(template_, n_, r, args)); }

bool Instance::add(LiteralId id) {
    if (id >= members_.size()) {
        throw InvalidArgument("literal id " + std::to_string(id) + " outside the constraint universe");
    }
    const bool fresh = !members_.test(id);
    members_.set(id);
    return fresh;
}

bool Instance::remove(LiteralId id) {
    if (id >= members_.size()) {
        throw InvalidArgument("literal id " + std::to_string(id) + " outside the constraint universe");
    }
    const bool present = members_.test(id);
    members_.reset(id);
    return present;
}

std::vector<Tuple> Instance::tuples(RelationIndex r) const {
    const LiteralId begin = relation_offset(template_, n_, r);
    const LiteralId end = begin + static_cast<LiteralId>(power(n_, tmpl().relation(r).arity));
    std::vector<Tuple> out;
    for (auto pos = members_.find_first(); pos != Bitset::npos && pos < end; pos = members_.find_next(pos)) {
        if (pos >= begin) {
            out.push_back(decode(template_, n_, static_cast<LiteralId>(pos)).args);
        }
    }
    return out;
}

bool Instance::is_subset_of(const Instance& other) const {
    if (template_ != other.template_ || n_ != other.n_) {
        throw InvalidArgument("instances over different templates or variable counts");
    }
    return members_.is_subset_of(other.members_);
}

bool satisfies_literal(const Assignment& h, TemplateId t, std::size_t n, LiteralId id) {
    const auto lit = decode(t, n, id);
    const auto& rel = Template::get(t).relation(lit.relation);
    std::array<std::uint8_t, 3> values{};
    for (std::size_t k = 0; k < rel.arity; ++k) {
        values[k] = h[lit.args[k]];
    }
    return rel.accepts(std::span(values.data(), rel.arity));
}

bool satisfies(const Assignment& h, const Instance& instance) {
    if (h.size() != instance.vars()) {
        throw InvalidArgument("assignment length differs from the instance's variable count");
    }
    const auto& bits = instance.members();
    for (auto pos = bits.find_first(); pos != Bitset::npos; pos = bits.find_next(pos)) {
        if (!satisfies_literal(h, instance.template_id(), instance.vars(), static_cast<LiteralId>(pos))) {
            return false;
        }
    }
    return true;
}

LiteralSet to_literal_set(const Bitset& bits) {
    LiteralSet out;
    out.reserve(bits.count());
    for (auto pos = bits.find_first(); pos != Bitset::npos; pos = bits.find_next(pos)) {
        out.push_back(static_cast<LiteralId>(pos));
    }
    return out;
}

Bitset to_bitset(std::span<const LiteralId> literals, std::size_t size) {
    Bitset bits(size);
    for (LiteralId id : literals) {
        if (id >= size) {
            throw InvalidArgument("literal id " + std::to_string(id) + " out of range");
        }
        bits.set(id);
    }
    return bits;
}

LiteralSet constraints_of(const Instance& instance) { return to_literal_set(instance.members()); }

Instance instance_of(std::span<const LiteralId> literals, TemplateId t, std::size_t n) {
    Instance inst(t, n);
    for (LiteralId id : literals) {
        inst.add(id);
    }
    return inst;
}

bool shortlex_less(const LiteralSet& a, const LiteralSet& b) {
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace dsb
