#pragma once

#include <memory>

#include "dsb/core.hpp"
#include "dsb/implsys.hpp"

namespace dsb {

enum class Status { Sat, Unsat };

/// The unique maximal instance with the same solution set as the input.
/// For unsatisfiable input, maximal is the full instance.
struct DensifyResult {
    Status status;
    Instance maximal;
    LiteralSet dense_set;
};

enum class Engine { Datalog, Sigma, Oracle };

DensifyResult densify(const Instance& instance, Engine engine = Engine::Datalog);

/// Hom(premise) is contained in Hom(conclusion).
bool implication_problem(const Instance& premise, const Instance& conclusion);

bool is_maximal(const Instance& instance);

/// ground_sigma(t, n), built once per (t, n) and shared afterwards.
std::shared_ptr<const ImplicationalSystem> cached_sigma(TemplateId t, std::size_t n);

} // namespace dsb
