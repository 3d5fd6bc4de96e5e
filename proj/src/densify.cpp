#include "dsb/densify.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "dsb/datalog.hpp"
#include "dsb/error.hpp"
#include "dsb/oracle.hpp"

namespace dsb {

namespace {

DensifyResult unsat_result(TemplateId t, std::size_t n) {
    Instance full = Instance::full(t, n);
    LiteralSet all = constraints_of(full);
    return DensifyResult{Status::Unsat, std::move(full), std::move(all)};
}

DensifyResult densify_datalog(const Instance& instance) {
    const auto saturation = fixed_point(instance, datalog_program(instance.template_id()));
    if (saturation.stop_fired) {
        return unsat_result(instance.template_id(), instance.vars());
    }
    LiteralSet dense = constraints_of(saturation.instance);
    return DensifyResult{Status::Sat, saturation.instance, std::move(dense)};
}

DensifyResult densify_sigma(const Instance& instance) {
    const auto sigma = cached_sigma(instance.template_id(), instance.vars());
    Bitset start = instance.members();
    start.resize(sigma->attribute_count());
    const Bitset closed = sigma->closure(start);
    if (closed.test(sigma->bottom())) {
        return unsat_result(instance.template_id(), instance.vars());
    }
    Bitset literals = closed;
    literals.resize(sigma->literal_count());
    LiteralSet dense = to_literal_set(literals);
    Instance maximal = instance_of(dense, instance.template_id(), instance.vars());
    return DensifyResult{Status::Sat, std::move(maximal), std::move(dense)};
}

} // namespace

std::shared_ptr<const ImplicationalSystem> cached_sigma(TemplateId t, std::size_t n) {
    static std::mutex mutex;
    static std::map<std::pair<TemplateId, std::size_t>, std::shared_ptr<const ImplicationalSystem>> cache;
    const auto key = std::make_pair(t, n);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    // Grounding happens outside the lock; concurrent builders produce identical systems.
    auto built = std::make_shared<const ImplicationalSystem>(ground_sigma(t, n));
    std::lock_guard lock(mutex);
    cache[key] = built;
    return built;
}

DensifyResult densify(const Instance& instance, Engine engine) {
    switch (engine) {
    case Engine::Datalog:
        return densify_datalog(instance);
    case Engine::Sigma:
        return densify_sigma(instance);
    case Engine::Oracle:
        return oracle_densify(instance);
    }
    throw InvalidArgument("unknown densification engine");
}

bool implication_problem(const Instance& premise, const Instance& conclusion) {
    if (premise.template_id() != conclusion.template_id() || premise.vars() != conclusion.vars()) {
        throw InvalidArgument("implication_problem: instances differ in template or variable count");
    }
    return conclusion.is_subset_of(densify(premise).maximal);
}

bool is_maximal(const Instance& instance) { return densify(instance).maximal == instance; }

} // namespace dsb
