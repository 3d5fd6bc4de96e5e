#pragma once

#include <cstdint>
#include <vector>

#include "dsb/core.hpp"
#include "dsb/densify.hpp"

namespace dsb {

// Brute-force reference implementations. Every operation here enumerates
// all 2^n assignments and refuses inputs past the bounds below.

inline constexpr std::size_t kOracleMaxVars = 20;
inline constexpr std::size_t kOracleMaxTarget = 14;

/// Bit m is set iff assignment m is a homomorphism. Assignment m maps
/// variable i to bit (n-1-i) of m, so ascending m is lexicographic order.
Bitset hom_mask(const Instance& instance);
Assignment assignment_at(std::size_t n, std::size_t index);

std::vector<Assignment> enumerate_homs(const Instance& instance);

/// Intersection of h^-1(relation) over all homomorphisms h.
DensifyResult oracle_densify(const Instance& instance);

/// Every inclusion-minimal subset of the densification with the same solution set.
std::vector<Instance> oracle_min(const Instance& instance);

/// Subset of {0,1}^2; bit (2a + b) stands for the pair (a, b).
using PairRelation = std::uint8_t;

inline constexpr PairRelation kAllPairs = 0b1111;
inline constexpr PairRelation kEquality = 0b1001;

PairRelation transpose(PairRelation rho);
PairRelation compose(PairRelation first, PairRelation second);

/// One binary relation per ordered pair of variables.
class BinaryRelationTable {
public:
    explicit BinaryRelationTable(std::size_t n) : n_(n), cells_(n * n, kAllPairs) {}

    std::size_t vars() const noexcept { return n_; }
    PairRelation at(Var u, Var v) const { return cells_[u * n_ + v]; }
    void set(Var u, Var v, PairRelation rho) { cells_[u * n_ + v] = rho; }

    friend bool operator==(const BinaryRelationTable&, const BinaryRelationTable&) = default;

private:
    std::size_t n_;
    std::vector<PairRelation> cells_;
};

/// Throws InvalidArgument for non-TwoSat instances.
BinaryRelationTable build_relation_table(const Instance& instance);

/// rho_uw within rho_uv o rho_vw for all u, v, w; diagonal entries within
/// equality; and no entry empty.
bool path_consistent(const BinaryRelationTable& table);

/// {(h(u), h(v)) : h a homomorphism}.
PairRelation projection(const Instance& instance, Var u, Var v);

} // namespace dsb
