// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "barycentra/affine.hpp"
#include "barycentra/builtins.hpp"
#include "barycentra/convex.hpp"
#include "barycentra/laws.hpp"
#include "barycentra/plonka.hpp"
#include "oracles.hpp"

using namespace barycentra;

namespace {

// Collects the reasons a criterion fails; empty means pass.
struct Outcome {
    std::vector<std::string> problems;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
};

using Seconds = std::chrono::duration<double>;

Polytope segment() { return Polytope(std::vector<Point>{{0}, {1}}); }
Polytope triangle() { return Polytope(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}}); }
Polytope square() { return Polytope(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }
Polytope cube() {
    std::vector<Point> v;
    for (int i = 0; i < 8; ++i) v.push_back({i & 1, (i >> 1) & 1, (i >> 2) & 1});
    return Polytope(v);
}

std::multiset<std::string> descriptor_set(const ReplicaResult& r) {
    std::multiset<std::string> out;
    for (const auto& c : r.classes) out.insert(c.descriptor);
    return out;
}

void axiom_suite(Outcome& o) {
    std::vector<std::shared_ptr<const Model>> models{
        std::make_shared<PolytopeModel>(segment(), "segment"),
        std::make_shared<PolytopeModel>(triangle(), "triangle"),
        std::make_shared<PolytopeModel>(square(), "square"),
        builtin("t-algebra").model,
        builtin("extended-line").model,
        builtin("toy-biology").model,
    };
    std::size_t lattices = 0;
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& s : oracle::semilattices_of_size(n)) {
            models.push_back(as_iterated_barycentric(s, "semilattice-" + std::to_string(n) + "-" + std::to_string(lattices)));
            ++lattices;
        }
    o.require(lattices == 1 + 1 + 2 + 5 + 15, "semilattice census " + std::to_string(lattices));
    const auto laws = resolve_laws({"barycentric"});
    std::size_t checks = 0;
    for (const auto& m : models)
        for (const auto& law : laws) {
            const auto r = check_identity(*m, law, Strategy::sampled(1000, 7));
            ++checks;
            o.require(r.pass && r.trials == 1000, law.name + " on " + m->name());
        }
    o.detail = std::to_string(checks) + " checks on " + std::to_string(models.size()) + " models";
}

void t_replica(Outcome& o) {
    const auto b = builtin("t-algebra");
    const auto r = builtin_replica(b, 7, 1000);
    o.require(r.semilattice.size() == 5, "class count " + std::to_string(r.semilattice.size()));
    o.require(is_isomorphic(r.semilattice, t_replica_semilattice()), "replica shape");
    o.require(descriptor_set(r) == std::multiset<std::string>{"{α}", "{β}", "]α,β[", "{γ}", "]m,γ["}, "descriptors");
    o.detail = "5 classes";
}

void extended_line(Outcome& o) {
    const auto r = builtin_replica(builtin("extended-line"), 7, 1000);
    o.require(r.semilattice.size() == 2, "class count");
    o.require(is_isomorphic(r.semilattice, FiniteSemilattice::chain({"x", "y"})), "2-chain");
    o.require(descriptor_set(r) == std::multiset<std::string>{"ℚ", "{∞}"}, "descriptors");
}

void segment_plonka(Outcome& o) {
    const auto r = refined_replica(single_fiber_sum(segment()), 7, 1000);
    o.require(descriptor_set(r) == std::multiset<std::string>{"{0}", "{1}", "]0,1["}, "segment replica");
    const auto pp = polytope_as_plonka(segment(), 200, 7);
    o.require(pp.report.samples == 200 && pp.report.pass(), "reconstruction");
    o.detail = "agree=" + std::to_string(pp.report.agree) + "/200";
}

void face_lattices(Outcome& o) {
    const std::vector<std::tuple<std::string, Polytope, std::vector<std::size_t>>> cases{
        {"segment", segment(), {2, 1}},
        {"triangle", triangle(), {3, 3, 1}},
        {"square", square(), {4, 4, 1}},
        {"cube", cube(), {8, 12, 6, 1}}};
    for (const auto& [name, c, counts] : cases) {
        const auto start = std::chrono::steady_clock::now();
        const auto lat = face_lattice(c);
        const Seconds took = std::chrono::steady_clock::now() - start;
        std::set<VertexSet> got;
        for (const auto& f : lat.faces()) got.insert(f.vertices);
        const auto oracle_faces = oracle::exposed_faces(c);
        o.require(lat.counts_by_dimension() == counts, name + " counts");
        o.require(got == oracle_faces, name + " oracle");
        o.require(oracle::counts_by_dimension(c, oracle_faces) == counts, name + " oracle counts");
        o.require(took.count() < 10, name + " time");
    }
}

void walls_are_faces(Outcome& o) {
    for (const auto& c : {triangle(), square()}) {
        const auto lat = face_lattice(c);
        for (VertexSet s = 1; s <= c.all(); ++s) {
            const bool wall = is_wall(c, {points_of(c, s), true});
            const bool face = lat.find(s).has_value();
            o.require(wall == face, "candidate " + face_label(s) + " of a " + std::to_string(c.size()) + "-gon");
        }
    }
}

void fork_example(Outcome& o) {
    const auto h = builtin("homomorphism-example");
    const auto rep = check_homomorphism(h, 1000, 7);
    o.require(rep.pass() && rep.samples == 1000, "homomorphism");
    const auto table = FiniteSemilattice::from_json(
        nlohmann::json::parse(std::ifstream(BARYCENTRA_DATA_DIR "/fork-semilattice.json")));
    const auto image = as_iterated_barycentric(table, "fork");
    const auto w = find_cancellation_witness(*image, Rational(1, 2), Strategy::exhaustive());
    o.require(w.has_value(), "witness exists");
    if (w) {
        o.detail = "witness (" + image->format(w->x) + "," + image->format(w->y) + "," + image->format(w->z) + ")";
        o.require(image->format(w->x) == "a" && image->format(w->y) == "b" && image->format(w->z) == "c", "witness");
    }
}

void cancellation_transfer(Outcome& o) {
    const auto& weights = default_weight_sample();
    std::vector<Rational> sample(weights.begin(), weights.end());
    for (std::uint64_t i = 0; sample.size() < 20; ++i) {
        auto rng = trial_rng(7, i);
        const Rational r = random_open_unit(rng, 50);
        if (std::find(sample.begin(), sample.end(), r) == sample.end()) sample.push_back(r);
    }
    sample.resize(20);
    for (const auto* name : {"t-algebra", "extended-line"}) {
        const auto b = builtin(name);
        for (const auto& p : sample)
            o.require(find_cancellation_witness(*b.model, p, Strategy::sampled(2000, 7)).has_value(),
                      std::string(name) + " at p=" + to_string(p));
    }
    o.detail = "20 weights";
}

void affine_identities(Outcome& o) {
    const auto laws = resolve_laws({"affine"});
    for (auto [p, n] : {std::pair{3, 1}, {3, 2}, {5, 1}}) {
        const FiniteVectorSpace v(p, static_cast<std::size_t>(n));
        const AffineSpaceModel m(v);
        for (const auto& law : laws) o.require(check_identity(m, law, Strategy::exhaustive()).pass, law.name + " on " + v.name());
        o.require(verify_parallelogram_identity(v).pass(), "parallelogram on " + v.name());
    }
}

void coset_structure(Outcome& o) {
    const CosetAlgebra alg(FiniteVectorSpace(3, 2));
    const auto pi = verify_pi_homomorphism(alg, 2);
    o.require(pi.pass() && pi.checked == 22 * 22, "pi homomorphism");
    const auto s = verify_plonka_structure(alg, 2);
    o.require(s.functoriality.pass() && s.agreement.pass(), "plonka structure");
    o.require(alg.subspaces().size() == 6 && oracle::subspaces(alg.space()).size() == 6, "|L(V)|");
    o.require(alg.elements().size() == 22 && oracle::coset_count(alg.space()) == 22, "|S(V)|");
    auto sizes = s.fiber_sizes;
    std::sort(sizes.rbegin(), sizes.rend());
    o.require(sizes == std::vector<std::size_t>{9, 3, 3, 3, 3, 1}, "fiber sizes");
}

void coset_replica(Outcome& o) {
    const CosetAlgebra alg(FiniteVectorSpace(3, 2));
    const auto r = verify_replica_is_projective(alg, {2});
    o.require(r.isomorphic_to_subspace_lattice, "isomorphism");
    o.require(r.certificates.size() == 6, "certificate count");
    for (const auto& c : r.certificates) o.require(c.open && c.cancellative, "fiber " + c.subspace);
    o.require(r.pass(), "report");
}

void rational_demo(Outcome& o) {
    const auto fam = RationalFamily::from_json(
        nlohmann::json::parse(std::ifstream(BARYCENTRA_DATA_DIR "/q2-axis-family.json")));
    const auto d = rational_coset_demo(fam, 500, 7);
    o.require(d.functoriality, "functoriality");
    o.require(d.samples == 500 && d.agree == 500, "agreement");
    o.detail = "agree=" + std::to_string(d.agree) + "/" + std::to_string(d.samples);
}

void regularity(Outcome& o) {
    for (const auto& law : resolve_laws({"barycentric"}))
        o.require(is_regular(std::get<Identity>(law.law)), law.name);
    for (const auto* name : {"projection-left", "projection-right"})
        o.require(!is_regular(std::get<Identity>(find_law(name).law)), name);
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"barycentric axioms on the model zoo", axiom_suite},
        {"T-algebra replica", t_replica},
        {"extended line replica", extended_line},
        {"segment replica and face reconstruction", segment_plonka},
        {"face lattices", face_lattices},
        {"walls are exactly faces", walls_are_faces},
        {"fork homomorphism and cancellation witness", fork_example},
        {"cancellation witnesses for every sampled weight", cancellation_transfer},
        {"affine identities over small prime fields", affine_identities},
        {"coset algebra Plonka structure over GF(3)^2", coset_structure},
        {"coset algebra replica over GF(3)^2", coset_replica},
        {"rational coset family", rational_demo},
        {"regularity of the catalogue", regularity},
    };
    int failures = 0;
    const auto total_start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.problems.push_back(std::string("exception: ") + e.what());
        }
        const Seconds took = std::chrono::steady_clock::now() - start;
        if (i == 0 && took.count() >= 30) o.problems.push_back("runtime over 30 s");
        if (i == 8 && took.count() >= 60) o.problems.push_back("runtime over 60 s");
        const bool pass = o.problems.empty();
        failures += !pass;
        std::ostringstream line;
        line << (pass ? "[PASS] " : "[FAIL] ") << (i + 1) << ". " << criteria[i].first;
        if (!o.detail.empty()) line << " (" << o.detail << ")";
        std::printf("%s [%.2fs]\n", line.str().c_str(), took.count());
        for (const auto& p : o.problems) std::printf("       - %s\n", p.c_str());
    }
    const Seconds total = std::chrono::steady_clock::now() - total_start;
    std::printf("%zu/%zu criteria passed in %.2fs\n", criteria.size() - failures, criteria.size(), total.count());
    return failures ? 1 : 0;
}
