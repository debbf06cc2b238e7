#include "barycentra/io.hpp"

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "barycentra/laws.hpp"

namespace barycentra {

std::string to_string(ModelKind k) {
    switch (k) {
    case ModelKind::Polytope: return "polytope";
    case ModelKind::Semilattice: return "semilattice";
    case ModelKind::Plonka: return "plonka";
    case ModelKind::AffineGf: return "affine-gf";
    case ModelKind::AffineQFamily: return "affine-q-family";
    case ModelKind::Builtin: return "builtin";
    }
    return "";
}

namespace {

std::optional<ModelKind> kind_from_name(const std::string& s) {
    for (auto k : {ModelKind::Polytope, ModelKind::Semilattice, ModelKind::Plonka, ModelKind::AffineGf,
                   ModelKind::AffineQFamily, ModelKind::Builtin})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

ModelKind infer_kind(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("model file must contain a JSON object");
    if (j.contains("kind")) {
        const auto k = kind_from_name(j.at("kind").get<std::string>());
        if (!k) throw ParseError("unknown model kind '" + j.at("kind").get<std::string>() + "'");
        return *k;
    }
    if (j.contains("index") && j.contains("fibers")) return ModelKind::Plonka;
    if (j.contains("vertices")) return ModelKind::Polytope;
    if (j.contains("elements") && j.contains("join")) return ModelKind::Semilattice;
    if (j.contains("subspaces")) return ModelKind::AffineQFamily;
    if (j.contains("modulus") || j.contains("p")) return ModelKind::AffineGf;
    throw ParseError("cannot infer the model kind; add a \"kind\" field");
}

}  // namespace

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

nlohmann::json parse_relaxed_json(const std::string& text) {
    static const std::regex bare_key(R"(([{,]\s*)([A-Za-z_][A-Za-z0-9_-]*)\s*:)");
    const std::string quoted = std::regex_replace(text, bare_key, "$1\"$2\":");
    try {
        return nlohmann::json::parse(quoted);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("cannot parse '" + text + "': " + e.what());
    }
}

LoadedModel load_model_json(ModelKind kind, const nlohmann::json& j, const std::string& name) {
    LoadedModel m;
    m.kind = kind;
    m.name = name;
    try {
        switch (kind) {
        case ModelKind::Polytope:
            m.polytope = Polytope::from_json(j);
            m.model = std::make_shared<PolytopeModel>(*m.polytope, name);
            break;
        case ModelKind::Semilattice:
            m.semilattice = FiniteSemilattice::from_json(j);
            m.model = as_iterated_barycentric(*m.semilattice, name);
            break;
        case ModelKind::Plonka:
            m.sum = PlonkaSum::from_json(j);
            m.model = std::make_shared<PlonkaModel>(*m.sum, name);
            break;
        case ModelKind::AffineGf:
            m.space = FiniteVectorSpace::from_json(j);
            m.model = std::make_shared<AffineSpaceModel>(*m.space);
            break;
        case ModelKind::AffineQFamily: {
            m.family = RationalFamily::from_json(j);
            m.sum = rational_coset_demo(*m.family, 0).sum;
            m.model = std::make_shared<PlonkaModel>(*m.sum, name);
            break;
        }
        case ModelKind::Builtin:
            throw ParseError("builtin models are referenced as builtin:NAME");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(name + ": " + e.what());
    }
    return m;
}

LoadedModel load_model(const std::string& ref) {
    const auto colon = ref.find(':');
    if (colon != std::string::npos) {
        const auto kind = kind_from_name(ref.substr(0, colon));
        const std::string payload = ref.substr(colon + 1);
        if (kind == ModelKind::Builtin) {
            LoadedModel m;
            m.kind = ModelKind::Builtin;
            m.name = payload;
            m.bundle = builtin(payload);
            m.model = m.bundle->model;
            m.sum = m.bundle->sum;
            m.polytope = m.bundle->polytope;
            return m;
        }
        if (kind) {
            const bool inline_json = !payload.empty() && payload.front() == '{';
            return load_model_json(*kind, inline_json ? parse_relaxed_json(payload) : read_json_file(payload), payload);
        }
    }
    const auto j = read_json_file(ref);
    return load_model_json(infer_kind(j), j, ref);
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("BARYCENTRA_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw ParseError(std::string("BARYCENTRA_SEED is not an unsigned integer: '") + env + "'");
    }
    return kDefaultSeed;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace barycentra
