#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "barycentra/convex.hpp"
#include "barycentra/parallel.hpp"
#include "barycentra/plonka.hpp"
#include "barycentra/semilattice.hpp"

namespace barycentra {

// A named model together with the structure needed to compute and judge its replica.
struct BuiltinBundle {
    std::string name;
    std::string description;
    std::shared_ptr<const Model> model;
    std::optional<PlonkaSum> sum;
    // Subalgebra of `sum`; empty means the whole sum.
    ElementPredicate member;
    std::optional<Polytope> polytope;
    std::optional<FiniteSemilattice> expected_replica;
    // Expected open-cell descriptors, in the order of the replica classes.
    std::vector<std::string> expected_descriptors;
    // homomorphism-example only: h from the model into `target`
    std::optional<FiniteSemilattice> target;
    std::function<std::size_t(const Element&)> hom;
};

const std::vector<std::string>& builtin_names();
// Throws Error for unknown names.
BuiltinBundle builtin(const std::string& name);

// a, b below c; c, d below e
FiniteSemilattice t_replica_semilattice();
// a v b = c
FiniteSemilattice fork_semilattice();

// Plonka presentation of T over the chain 0 < 1, with the given display names
// for alpha, beta, m, gamma and the index labels.
PlonkaSum t_presentation(const std::vector<std::string>& names = {"α", "β", "m", "γ"},
                         const std::vector<std::string>& index = {"0", "1"});
// T inside its presentation: everything except m in the upper fiber.
ElementPredicate t_member();
PlonkaSum extended_line_sum();

ReplicaResult builtin_replica(const BuiltinBundle& b, std::uint64_t seed = kDefaultSeed,
                              std::size_t samples = 1000);

struct HomCheckReport {
    std::size_t samples = 0;
    std::optional<std::string> violation;
    bool pass() const { return !violation; }
    nlohmann::json to_json() const;
};

HomCheckReport check_homomorphism(const BuiltinBundle& b, std::size_t samples, std::uint64_t seed,
                                  Execution exec = Execution::Parallel);

}  // namespace barycentra
