#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dsb/core.hpp"

namespace dsb {

struct SparsifyResult {
    /// Shortest first, then lexicographic on sorted literal ids.
    std::vector<Instance> minimals;
    bool truncated = false;
    /// Size of the densification every minimal instance regenerates.
    std::size_t target_size = 0;
};

inline constexpr std::size_t kDefaultProjectionBudget = 1'000'000;

/// All inclusion-minimal constraint sets with the same solution set as the
/// instance. Unsatisfiable input yields the minimal unsatisfiable subsets of
/// the full universe. Stops after limit sets and reports truncation.
SparsifyResult sparsify_all(const Instance& instance, std::size_t limit);

/// Like sparsify_all, restricted to constraint sets drawn from pool. The
/// grounded system is first projected onto pool by resolution; a projection
/// larger than budget implications throws ResourceLimit.
SparsifyResult sparsify_within(const Instance& instance, std::span<const LiteralId> pool, std::size_t limit,
                               std::size_t budget = kDefaultProjectionBudget);

/// No single constraint can be dropped without enlarging the solution set.
bool is_minimal(const Instance& instance);

} // namespace dsb
