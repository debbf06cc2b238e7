#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"

#include "barycentra/affine.hpp"
#include "barycentra/builtins.hpp"
#include "barycentra/convex.hpp"
#include "barycentra/plonka.hpp"
#include "barycentra/semilattice.hpp"

namespace barycentra {

enum class ModelKind { Polytope, Semilattice, Plonka, AffineGf, AffineQFamily, Builtin };

std::string to_string(ModelKind k);

// A model reference resolved to its payload. Exactly the optional matching
// `kind` is set (plus `sum` for plonka-backed kinds); `model` is always set.
struct LoadedModel {
    ModelKind kind = ModelKind::Builtin;
    std::string name;
    std::shared_ptr<const Model> model;
    std::optional<Polytope> polytope;
    std::optional<FiniteSemilattice> semilattice;
    std::optional<PlonkaSum> sum;
    std::optional<FiniteVectorSpace> space;
    std::optional<RationalFamily> family;
    std::optional<BuiltinBundle> bundle;
};

nlohmann::json read_json_file(const std::string& path);
// Accepts strict JSON or the shorthand {p:3,n:2} with bare keys.
nlohmann::json parse_relaxed_json(const std::string& text);

// "builtin:NAME", "polytope:FILE", "semilattice:FILE", "plonka:FILE",
// "affine-gf:{p:3,n:2}" or "affine-gf:FILE", "affine-q-family:FILE", or a bare
// FILE whose kind is read from its "kind" field or inferred from its keys.
LoadedModel load_model(const std::string& ref);
LoadedModel load_model_json(ModelKind kind, const nlohmann::json& j, const std::string& name);

// Seed precedence: explicit flag, then BARYCENTRA_SEED, then kDefaultSeed.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

// Pretty JSON with sorted keys and a trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace barycentra
