#include "barycentra/builtins.hpp"

#include "barycentra/parallel.hpp"

namespace barycentra {

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"extended-line", "homomorphism-example", "t-algebra",
                                                "toy-biology"};
    return names;
}

FiniteSemilattice t_replica_semilattice() {
    return FiniteSemilattice::from_covers({"a", "b", "c", "d", "e"},
                                          {{"a", "c"}, {"b", "c"}, {"c", "e"}, {"d", "e"}});
}

FiniteSemilattice fork_semilattice() {
    return FiniteSemilattice::from_covers({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
}

PlonkaSum t_presentation(const std::vector<std::string>& names, const std::vector<std::string>& index) {
    const Vec alpha{0, 1}, beta{0, -1}, m{0, 0}, gamma{1, 0};
    std::vector<Fiber> fibers{Fiber::polytope(Polytope({alpha, beta}), {names[0], names[1]}),
                              Fiber::polytope(Polytope({m, gamma}), {names[2], names[3]})};
    // the lower fiber collapses onto its midpoint m
    std::vector<TransitionMap> transitions{{index[0], index[1], AffineMap::constant(2, m)}};
    return PlonkaSum::build(FiniteSemilattice::chain(index), std::move(fibers), std::move(transitions));
}

ElementPredicate t_member() {
    return [](const Element& e) { return !(e.tag == 1 && e.point == Vec{0, 0}); };
}

PlonkaSum extended_line_sum() {
    std::vector<Fiber> fibers{Fiber::affine_subspace({0}, {{1}}, "ℚ"), Fiber::singleton({}, "∞")};
    std::vector<TransitionMap> transitions{{"a", "b", AffineMap::constant(1, {})}};
    return PlonkaSum::build(FiniteSemilattice::chain({"a", "b"}), std::move(fibers), std::move(transitions));
}

namespace {

BuiltinBundle t_bundle(std::string name, std::string description, const std::vector<std::string>& names,
                       const std::vector<std::string>& index) {
    BuiltinBundle b;
    b.name = std::move(name);
    b.description = std::move(description);
    b.sum = t_presentation(names, index);
    b.member = t_member();
    b.model = std::make_shared<PlonkaSubalgebraModel>(*b.sum, b.member, b.name);
    b.expected_replica = t_replica_semilattice();
    b.expected_descriptors = {"{" + names[0] + "}", "{" + names[1] + "}", "]" + names[0] + "," + names[1] + "[",
                              "{" + names[3] + "}", "]" + names[2] + "," + names[3] + "["};
    return b;
}

}  // namespace

BuiltinBundle builtin(const std::string& name) {
    if (name == "t-algebra")
        return t_bundle(name, "segment [α,β] with the segment [m,γ] attached at its midpoint m",
                        {"α", "β", "m", "γ"}, {"0", "1"});
    if (name == "toy-biology")
        return t_bundle(name, "stages A1, A2 of one species mixed uniformly against a second species B",
                        {"A1", "A2", "mix", "B"}, {"demography", "ecology"});
    if (name == "extended-line") {
        BuiltinBundle b;
        b.name = name;
        b.description = "the rational line with an absorbing point ∞";
        b.sum = extended_line_sum();
        b.model = std::make_shared<PlonkaModel>(*b.sum, name);
        b.expected_replica = FiniteSemilattice::chain({"a", "b"});
        b.expected_descriptors = {"ℚ", "{∞}"};
        return b;
    }
    if (name == "homomorphism-example") {
        BuiltinBundle b;
        b.name = name;
        b.description = "the unit segment mapped onto a three-element semilattice";
        b.polytope = Polytope(std::vector<Point>{Point{0}, Point{1}});
        b.model = std::make_shared<PolytopeModel>(*b.polytope, name);
        b.expected_replica = fork_semilattice();
        b.expected_descriptors = {"{0}", "{1}", "]0,1["};
        b.target = fork_semilattice();
        b.hom = [](const Element& e) -> std::size_t {
            if (e.point == Vec{0}) return 0;
            if (e.point == Vec{1}) return 1;
            return 2;
        };
        return b;
    }
    throw Error("unknown builtin '" + name + "'");
}

ReplicaResult builtin_replica(const BuiltinBundle& b, std::uint64_t seed, std::size_t samples) {
    if (b.sum) {
        ReplicaResult full = refined_replica(*b.sum, seed, samples);
        return b.member ? restrict_replica(*b.sum, b.member, full, seed, samples) : full;
    }
    if (b.polytope) return refined_replica(single_fiber_sum(*b.polytope), seed, samples);
    throw Error("builtin '" + b.name + "' has no replica construction");
}

nlohmann::json HomCheckReport::to_json() const {
    nlohmann::json j{{"samples", samples}, {"result", pass() ? "pass" : "fail"}};
    if (violation) j["violation"] = *violation;
    return j;
}

HomCheckReport check_homomorphism(const BuiltinBundle& b, std::size_t samples, std::uint64_t seed,
                                  Execution exec) {
    if (!b.hom || !b.target) throw Error("builtin '" + b.name + "' carries no homomorphism");
    const Model& model = *b.model;
    const FiniteSemilattice& target = *b.target;
    auto draw = [&](std::size_t i) {
        auto rng = trial_rng(seed, i);
        Element x = model.sample(rng), y = model.sample(rng);
        Rational p = random_weight(rng);
        return std::make_tuple(std::move(x), std::move(y), std::move(p));
    };
    auto fails = [&](std::size_t i) {
        const auto [x, y, p] = draw(i);
        return b.hom(model.apply(p, x, y)) != target.join(b.hom(x), b.hom(y));
    };
    HomCheckReport report;
    report.samples = samples;
    if (const auto bad = find_first(samples, fails, exec)) {
        const auto [x, y, p] = draw(*bad);
        const Element z = model.apply(p, x, y);
        report.violation = "h(" + p.str() + "(" + model.format(x) + ", " + model.format(y) + ")) = " +
                           target.label(b.hom(z)) + " but h(x) v h(y) = " +
                           target.label(target.join(b.hom(x), b.hom(y)));
    }
    return report;
}

}  // namespace barycentra
