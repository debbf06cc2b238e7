#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "barycentra/affine.hpp"
#include "barycentra/builtins.hpp"
#include "barycentra/convex.hpp"
#include "barycentra/io.hpp"
#include "barycentra/laws.hpp"
#include "barycentra/plonka.hpp"
#include "barycentra/semilattice.hpp"

using namespace barycentra;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct Common {
    std::optional<std::uint64_t> seed;
    std::string out;
    bool serial = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "random seed (default: $BARYCENTRA_SEED, then 7)");
        cmd->add_option("--out", out, "write the JSON report here instead of stdout");
        cmd->add_flag("--serial", serial, "run checks on the serial reference path");
    }
    Execution exec() const { return serial ? Execution::Serial : Execution::Parallel; }
};

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << dump_json(j);
        return;
    }
    std::ofstream f(out);
    if (!f) throw ParseError("cannot write '" + out + "'");
    f << dump_json(j);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write '" + path + "'");
    f << text;
}

std::vector<std::string> split_commas(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const auto& item : items) {
        std::stringstream in(item);
        for (std::string part; std::getline(in, part, ',');)
            if (!part.empty()) out.push_back(part);
    }
    return out;
}

FiniteVectorSpace load_space(const std::string& ref) {
    std::string payload = ref;
    if (payload.rfind("affine-gf:", 0) == 0) payload = payload.substr(10);
    if (!payload.empty() && payload.front() == '{') return FiniteVectorSpace::from_json(parse_relaxed_json(payload));
    return FiniteVectorSpace::from_json(read_json_file(payload));
}

// ------------------------------------------------------------------ check

struct CheckArgs {
    Common common;
    std::string model;
    std::vector<std::string> laws;
    bool exhaustive = false;
    std::optional<std::size_t> sampled;
};

int run_check(const CheckArgs& a) {
    const LoadedModel m = load_model(a.model);
    const std::uint64_t seed = resolve_seed(a.common.seed);
    std::vector<std::string> names = split_commas(a.laws);
    if (names.empty()) names = {"barycentric"};
    const auto groups = law_groups();
    for (const auto& n : names) {
        const bool is_group = std::find(groups.begin(), groups.end(), n) != groups.end();
        if (!is_group && !find_law(n).applicable_to(*m.model))
            throw DomainError("law '" + n + "' does not apply to " + to_string(m.kind) + " models");
    }
    Strategy strategy = Strategy::sampled(a.sampled.value_or(1000), seed);
    if (a.exhaustive || (!a.sampled && m.model->is_finite())) strategy = Strategy::exhaustive();

    json reports = json::array();
    bool pass = true;
    for (const auto& law : resolve_laws(names)) {
        if (!law.applicable_to(*m.model)) {
            reports.push_back({{"law", law.name}, {"model", m.model->name()}, {"result", "skipped"},
                               {"reason", "not applicable to this scalar domain"}});
            continue;
        }
        const CheckReport r = check_identity(*m.model, law, strategy, a.common.exec());
        pass = pass && r.pass;
        reports.push_back(r.to_json());
    }
    emit({{"model", a.model},
          {"kind", to_string(m.kind)},
          {"strategy", strategy.to_string()},
          {"reports", reports},
          {"result", pass ? "pass" : "fail"}},
         a.common.out);
    return pass ? kPass : kFail;
}

// ---------------------------------------------------------------- replica

struct ReplicaArgs {
    Common common;
    std::string model;
    std::string dot;
    std::size_t samples = 1000;
};

int run_replica(const ReplicaArgs& a) {
    const LoadedModel m = load_model(a.model);
    const std::uint64_t seed = resolve_seed(a.common.seed);
    json out{{"model", a.model}, {"kind", to_string(m.kind)}, {"seed", seed}};
    bool pass = true;
    std::optional<FiniteSemilattice> lattice;

    if (m.kind == ModelKind::AffineGf) {
        const CosetAlgebra alg(*m.space);
        const auto r = verify_replica_is_projective(alg, {}, a.common.exec());
        out.update(r.to_json());
        pass = r.pass();
        lattice = r.replica;
    } else if (m.kind == ModelKind::Semilattice) {
        // an iterated semilattice is its own replica
        out["class_count"] = m.semilattice->size();
        out["semilattice"] = m.semilattice->to_json();
        lattice = *m.semilattice;
    } else {
        ReplicaResult r = m.bundle ? builtin_replica(*m.bundle, seed, a.samples)
                          : m.sum  ? refined_replica(*m.sum, seed, a.samples)
                                   : refined_replica(single_fiber_sum(*m.polytope), seed, a.samples);
        out.update(r.to_json());
        lattice = r.semilattice;
        if (m.bundle && m.bundle->expected_replica) {
            const auto iso = find_isomorphism(r.semilattice, *m.bundle->expected_replica);
            std::vector<std::string> descriptors;
            for (const auto& c : r.classes) descriptors.push_back(c.descriptor);
            const bool match = descriptors == m.bundle->expected_descriptors;
            out["isomorphic_to_expected"] = iso.has_value();
            out["descriptors_match_expected"] = match;
            if (iso) {
                json names = json::object();
                for (std::size_t i = 0; i < iso->size(); ++i)
                    names[r.semilattice.label(i)] = m.bundle->expected_replica->label((*iso)[i]);
                out["expected_labels"] = names;
            }
            pass = iso.has_value() && match;
        }
        if (m.bundle && m.bundle->hom) {
            const auto h = check_homomorphism(*m.bundle, a.samples, seed, a.common.exec());
            out["homomorphism"] = h.to_json();
            pass = pass && h.pass();
        }
    }
    out["result"] = pass ? "pass" : "fail";
    if (!a.dot.empty()) write_text(a.dot, to_dot(*lattice, "replica"));
    emit(out, a.common.out);
    return pass ? kPass : kFail;
}

// ------------------------------------------------------------------ faces

struct FacesArgs {
    Common common;
    std::string polytope;
    std::string dot;
};

int run_faces(const FacesArgs& a) {
    std::string ref = a.polytope;
    if (ref.rfind("polytope:", 0) == 0) ref = ref.substr(9);
    const Polytope c = Polytope::from_json(read_json_file(ref));
    const FaceLattice lattice = face_lattice(c);
    const auto names = default_vertex_names(c);
    json faces = json::array();
    for (const auto& f : lattice.faces())
        faces.push_back({{"label", face_label(f.vertices, names)}, {"vertices", members(f.vertices)},
                         {"dimension", f.dimension}});
    if (!a.dot.empty()) write_text(a.dot, to_dot(lattice.as_semilattice(names), "faces"));
    emit({{"ambient_dim", c.ambient_dim()},
          {"affine_dim", c.affine_dim()},
          {"vertex_count", c.size()},
          {"counts", lattice.counts_by_dimension()},
          {"faces", faces}},
         a.common.out);
    return kPass;
}

// ----------------------------------------------------------------- plonka

struct PlonkaArgs {
    Common common;
    std::string file;
    std::string p, x, y;
    bool text = false;
    std::size_t samples = 200;
};

PlonkaSum load_sum(const std::string& ref) {
    if (ref.rfind("builtin:", 0) == 0 || ref.find(':') == std::string::npos || ref.rfind("plonka:", 0) == 0) {
        const LoadedModel m = load_model(ref);
        if (!m.sum) throw ParseError("'" + ref + "' is not a Plonka sum");
        return *m.sum;
    }
    throw ParseError("'" + ref + "' is not a Plonka sum");
}

int run_plonka_validate(const PlonkaArgs& a) {
    try {
        const PlonkaSum sum = load_sum(a.file);
        std::size_t comparable = 0;
        for (std::size_t s = 0; s < sum.size(); ++s)
            for (std::size_t t = 0; t < sum.size(); ++t) comparable += sum.index().leq(s, t);
        emit({{"file", a.file}, {"fibers", sum.size()}, {"transitions", comparable}, {"result", "pass"}},
             a.common.out);
        return kPass;
    } catch (const PlonkaError& e) {
        emit({{"file", a.file}, {"result", "fail"}, {"kind", e.kind()}, {"witness", e.what()}}, a.common.out);
        return kFail;
    }
}

int run_plonka_eval(const PlonkaArgs& a) {
    const PlonkaSum sum = load_sum(a.file);
    const Weight p = Weight::parse(a.p);
    const Element x = sum.parse_element(a.x), y = sum.parse_element(a.y);
    const Element z = sum.eval(p, x, y);
    if (a.text) {
        std::cout << sum.format(z) << "\n";
        return kPass;
    }
    emit({{"p", p.value().str()}, {"x", sum.format(x)}, {"y", sum.format(y)}, {"value", sum.format(z)},
          {"element", sum.element_to_json(z)}},
         a.common.out);
    return kPass;
}

int run_plonka_as(const PlonkaArgs& a) {
    std::string ref = a.file;
    if (ref.rfind("polytope:", 0) == 0) ref = ref.substr(9);
    const Polytope c = Polytope::from_json(read_json_file(ref));
    const std::uint64_t seed = resolve_seed(a.common.seed);
    const PolytopePlonka pp = polytope_as_plonka(c, a.samples, seed);
    json out = pp.report.to_json();
    out["seed"] = seed;
    out["fibers"] = pp.sum.size();
    out["sum"] = pp.sum.to_json();
    emit(out, a.common.out);
    return pp.report.pass() ? kPass : kFail;
}

// ----------------------------------------------------------------- affine

struct AffineArgs {
    Common common;
    std::string space;
    std::int64_t k = 2;
    std::vector<std::int64_t> weights;
    std::size_t samples = 500;
};

int run_affine_subspaces(const AffineArgs& a) {
    const FiniteVectorSpace v = load_space(a.space);
    const CosetAlgebra alg(v);
    json subs = json::array();
    for (std::size_t s = 0; s < alg.subspaces().size(); ++s)
        subs.push_back({{"label", alg.lattice().label(s)}, {"dimension", alg.subspaces()[s].dim()},
                        {"cosets", alg.fiber(s).size()}});
    emit({{"space", v.to_json()},
          {"subspace_count", alg.subspaces().size()},
          {"coset_count", alg.elements().size()},
          {"subspaces", subs},
          {"lattice", alg.lattice().to_json()}},
         a.common.out);
    return kPass;
}

int run_affine_identities(const AffineArgs& a) {
    const FiniteVectorSpace v = load_space(a.space);
    const AffineSpaceModel model(v);
    json reports = json::array();
    bool pass = true;
    for (const auto& law : resolve_laws({"affine"})) {
        const auto r = check_identity(model, law, Strategy::exhaustive(), a.common.exec());
        pass = pass && r.pass;
        reports.push_back(r.to_json());
    }
    const auto par = verify_parallelogram_identity(v, a.common.exec());
    const auto lift = verify_lifted_operations(CosetAlgebra(v), a.common.exec());
    pass = pass && par.pass() && lift.pass();
    emit({{"space", v.to_json()},
          {"reports", reports},
          {"parallelogram", par.to_json()},
          {"lifted_operations", lift.to_json()},
          {"result", pass ? "pass" : "fail"}},
         a.common.out);
    return pass ? kPass : kFail;
}

int run_affine_structure(const AffineArgs& a) {
    const CosetAlgebra alg(load_space(a.space));
    const auto r = verify_plonka_structure(alg, a.k, a.common.exec());
    const auto pi = verify_pi_homomorphism(alg, a.k, a.common.exec());
    json out = r.to_json();
    out["pi_homomorphism"] = pi.to_json();
    const bool pass = r.pass() && pi.pass();
    out["result"] = pass ? "pass" : "fail";
    emit(out, a.common.out);
    return pass ? kPass : kFail;
}

int run_affine_replica(const AffineArgs& a) {
    const CosetAlgebra alg(load_space(a.space));
    const auto r = verify_replica_is_projective(alg, a.weights, a.common.exec());
    emit(r.to_json(), a.common.out);
    return r.pass() ? kPass : kFail;
}

int run_affine_demo(const AffineArgs& a) {
    std::string ref = a.space;
    if (ref.rfind("affine-q-family:", 0) == 0) ref = ref.substr(16);
    const RationalFamily family = RationalFamily::from_json(read_json_file(ref));
    const std::uint64_t seed = resolve_seed(a.common.seed);
    try {
        const auto r = rational_coset_demo(family, a.samples, seed);
        json out = r.to_json();
        out["seed"] = seed;
        emit(out, a.common.out);
        return r.pass() ? kPass : kFail;
    } catch (const FamilyError& e) {
        emit({{"result", "fail"}, {"witness", e.what()}}, a.common.out);
        return kFail;
    }
}

int run_list_builtins(const Common& c) {
    json list = json::array();
    for (const auto& name : builtin_names()) list.push_back({{"name", name}, {"description", builtin(name).description}});
    emit({{"builtins", list}}, c.out);
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact barycentric algebras, polytope face lattices, Plonka sums and finite affine spaces"};
    app.require_subcommand(1);
    int status = kPass;
    std::function<int()> action;

    CheckArgs check;
    auto* c = app.add_subcommand("check", "check catalogued laws on a model");
    check.common.attach(c);
    c->add_option("model", check.model, "model reference")->required();
    c->add_option("--laws", check.laws, "law or group names, comma separated (default: barycentric)");
    auto* ex = c->add_flag("--exhaustive", check.exhaustive, "enumerate the whole carrier");
    c->add_option("--sampled", check.sampled, "number of seeded samples")->excludes(ex);
    c->callback([&] { action = [&] { return run_check(check); }; });

    ReplicaArgs replica;
    auto* r = app.add_subcommand("replica", "compute the semilattice replica of a model");
    replica.common.attach(r);
    r->add_option("model", replica.model, "model reference")->required();
    r->add_option("--dot", replica.dot, "write the Hasse diagram as DOT");
    r->add_option("--samples", replica.samples, "validation samples");
    r->callback([&] { action = [&] { return run_replica(replica); }; });

    FacesArgs faces;
    auto* f = app.add_subcommand("faces", "face lattice of a polytope");
    faces.common.attach(f);
    f->add_option("polytope", faces.polytope, "polytope JSON file")->required();
    f->add_option("--dot", faces.dot, "write the Hasse diagram as DOT");
    f->callback([&] { action = [&] { return run_faces(faces); }; });

    PlonkaArgs plonka;
    auto* pl = app.add_subcommand("plonka", "Plonka sums");
    pl->require_subcommand(1);
    auto* pv = pl->add_subcommand("validate", "check order, images and functoriality");
    plonka.common.attach(pv);
    pv->add_option("file", plonka.file, "Plonka sum JSON or builtin:NAME")->required();
    pv->callback([&] { action = [&] { return run_plonka_validate(plonka); }; });
    auto* pe = pl->add_subcommand("eval", "evaluate p(x, y)");
    pe->add_option("file", plonka.file, "Plonka sum JSON or builtin:NAME")->required();
    pe->add_option("--p", plonka.p, "weight in ]0,1[")->required();
    pe->add_option("--x", plonka.x, "element label:point")->required();
    pe->add_option("--y", plonka.y, "element label:point")->required();
    pe->add_option("--out", plonka.common.out, "write the JSON result here");
    pe->add_flag("--text", plonka.text, "print only the resulting element");
    pe->callback([&] { action = [&] { return run_plonka_eval(plonka); }; });
    auto* pa = pl->add_subcommand("as-plonka", "rebuild a polytope as the sum of its faces");
    plonka.common.attach(pa);
    pa->add_option("polytope", plonka.file, "polytope JSON file")->required();
    pa->add_option("--samples", plonka.samples, "seeded evaluation pairs");
    pa->callback([&] { action = [&] { return run_plonka_as(plonka); }; });

    AffineArgs affine;
    auto* af = app.add_subcommand("affine", "affine spaces over GF(p) and coset algebras");
    af->require_subcommand(1);
    auto add_space = [&](CLI::App* cmd) {
        affine.common.attach(cmd);
        cmd->add_option("space", affine.space, "{p:3,n:2}, affine-gf:{...} or a JSON file")->required();
    };
    auto* as = af->add_subcommand("subspaces", "enumerate the subspace lattice and cosets");
    add_space(as);
    as->callback([&] { action = [&] { return run_affine_subspaces(affine); }; });
    auto* ai = af->add_subcommand("identities", "exhaustive affine laws and the parallelogram identity");
    add_space(ai);
    ai->callback([&] { action = [&] { return run_affine_identities(affine); }; });
    auto* at = af->add_subcommand("structure", "coset algebra as a Plonka sum over the subspace lattice");
    add_space(at);
    at->add_option("--k", affine.k, "scalar outside {0,1}");
    at->callback([&] { action = [&] { return run_affine_structure(affine); }; });
    auto* ar = af->add_subcommand("replica", "replica of the coset algebra with openness certificates");
    add_space(ar);
    ar->add_option("--weights", affine.weights, "scalars outside {0,1} (default: all)")->delimiter(',');
    ar->callback([&] { action = [&] { return run_affine_replica(affine); }; });
    auto* ad = af->add_subcommand("demo", "rational coset sum over a join-closed family");
    affine.common.attach(ad);
    ad->add_option("family", affine.space, "family JSON file")->required();
    ad->add_option("--samples", affine.samples, "seeded agreement samples");
    ad->callback([&] { action = [&] { return run_affine_demo(affine); }; });

    Common list;
    auto* lb = app.add_subcommand("list-builtins", "names of the built-in models");
    lb->add_option("--out", list.out, "write the JSON here");
    lb->callback([&] { action = [&] { return run_list_builtins(list); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kPass : kInputError;
    }
    try {
        status = action();
    } catch (const ReplicaError& e) {
        std::cout << dump_json({{"result", "fail"}, {"witness", e.what()}});
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return status;
}
