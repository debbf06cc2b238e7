#include "doctest.h"

#include <fstream>

#include "barycentra/builtins.hpp"
#include "barycentra/laws.hpp"
#include "barycentra/plonka.hpp"

using namespace barycentra;

namespace {

FiniteSemilattice two_chain() { return FiniteSemilattice::chain({"0", "1"}); }

Fiber seg(Point a, Point b, std::vector<std::string> names = {}) {
    return Fiber::polytope(Polytope(std::vector<Point>{std::move(a), std::move(b)}), std::move(names));
}

std::string kind_of_failure(FiniteSemilattice index, std::vector<Fiber> fibers, std::vector<TransitionMap> maps) {
    try {
        PlonkaSum::build(std::move(index), std::move(fibers), std::move(maps));
    } catch (const PlonkaError& e) {
        return e.kind();
    }
    return "none";
}

std::multiset<std::string> descriptors(const ReplicaResult& r) {
    std::multiset<std::string> out;
    for (const auto& c : r.classes) out.insert(c.descriptor);
    return out;
}

}  // namespace

TEST_CASE("affine maps") {
    const AffineMap id = AffineMap::identity(2);
    CHECK(id(Vec{1, 2}) == Vec{1, 2});
    const AffineMap k = AffineMap::constant(2, Vec{5});
    CHECK(k(Vec{1, 2}) == Vec{5});
    const AffineMap shift{{{1, 0}, {0, 1}}, {1, 1}, 2};
    CHECK(shift.after(shift)(Vec{0, 0}) == Vec{2, 2});
    CHECK(k.after(shift)(Vec{3, 3}) == Vec{5});
}

TEST_CASE("build rejects malformed sums") {
    CHECK(kind_of_failure(two_chain(), {seg({0, 1}, {0, -1}), seg({0, 0}, {1, 0})},
                          {{"0", "1", AffineMap::constant(2, Vec{2, 0})}}) == "image");
    CHECK(kind_of_failure(two_chain(), {seg({0, 1}, {0, -1}), seg({0, 0}, {1, 0})}, {}) == "missing-transition");
    CHECK(kind_of_failure(two_chain(), {seg({0, 1}, {0, -1}), seg({0, 0}, {1, 0})},
                          {{"1", "0", AffineMap::constant(2, Vec{0, 1})}}) == "order");

    // a < b < c with a -> c given directly but disagreeing with the composite
    const auto chain3 = FiniteSemilattice::chain({"a", "b", "c"});
    std::vector<Fiber> fibers{Fiber::singleton({0}), Fiber::singleton({1}), seg({0}, {1})};
    CHECK(kind_of_failure(chain3, fibers,
                          {{"a", "b", AffineMap::constant(1, Vec{1})},
                           {"b", "c", AffineMap::identity(1)},
                           {"a", "c", AffineMap::constant(1, Vec{0})}}) == "functoriality");
    CHECK(kind_of_failure(chain3, fibers,
                          {{"a", "b", AffineMap::constant(1, Vec{1})},
                           {"b", "c", AffineMap::identity(1)},
                           {"a", "c", AffineMap::constant(1, Vec{1})}}) == "none");
}

TEST_CASE("evaluation in the T presentation") {
    const auto t = t_presentation();
    const Element alpha = t.parse_element("0:α"), beta = t.parse_element("0:β");
    const Element gamma = t.parse_element("1:γ"), m = t.parse_element("1:m");
    CHECK(t.format(t.eval(Rational(1, 2), alpha, gamma)) == "1:(m+γ)/2");
    CHECK(t.format(t.eval(Rational(1, 2), alpha, beta)) == "0:(α+β)/2");
    CHECK(t.eval(Rational(1, 3), beta, gamma) == t.eval(Rational(1, 3), m, gamma));
    CHECK(t.transport(alpha, 1) == m);
    CHECK_THROWS_AS(t.transport(gamma, 0), Error);
    CHECK_THROWS_AS(t.parse_element("2:α"), Error);
    CHECK_THROWS_AS(t.parse_element("0:γ"), Error);
    CHECK(t.element_to_json(m).at("fiber") == "1");
}

TEST_CASE("Plonka sums satisfy the barycentric laws") {
    for (const auto& sum : {t_presentation(), extended_line_sum()}) {
        const PlonkaModel model(sum, "sum");
        for (const auto& law : resolve_laws({"barycentric"})) {
            CAPTURE(law.name);
            CHECK(check_identity(model, law, Strategy::sampled(500, 7)).pass);
        }
    }
}

TEST_CASE("eval follows the brute-force definition") {
    const auto t = t_presentation();
    for (std::uint64_t i = 0; i < 300; ++i) {
        auto rng = trial_rng(11, i);
        const Element x = t.sample(rng), y = t.sample(rng);
        const Rational p = random_open_unit(rng, 20);
        const std::size_t top = std::max(x.tag, y.tag);
        const Vec tx = x.tag == top ? x.point : Vec{0, 0};
        const Vec ty = y.tag == top ? y.point : Vec{0, 0};
        const Element r = t.eval(p, x, y);
        CHECK(r.tag == top);
        CHECK(r.point == add(scale(1 - p, tx), scale(p, ty)));
    }
}

TEST_CASE("JSON round trip") {
    const auto t = PlonkaSum::from_json(nlohmann::json::parse(std::ifstream(BARYCENTRA_DATA_DIR "/t-presentation.json")));
    const auto back = PlonkaSum::from_json(t.to_json());
    CHECK(back.to_json() == t.to_json());
    CHECK(t.format(t.eval(Rational(1, 2), t.parse_element("0:α"), t.parse_element("1:γ"))) == "1:(m+γ)/2");
    CHECK_THROWS_AS(PlonkaSum::from_json(nlohmann::json::parse(std::ifstream(BARYCENTRA_DATA_DIR "/t-broken-image.json"))),
                    PlonkaError);
}

TEST_CASE("replica of T and its restriction") {
    const auto sum = t_presentation();
    const auto full = refined_replica(sum, 7, 1000);
    CHECK(full.semilattice.size() == 6);
    const auto r = restrict_replica(sum, t_member(), full, 7, 1000);
    CHECK(r.semilattice.size() == 5);
    CHECK(is_isomorphic(r.semilattice, t_replica_semilattice()));
    CHECK(descriptors(r) == std::multiset<std::string>{"{α}", "{β}", "]α,β[", "{γ}", "]m,γ["});
    for (const auto& c : r.classes) CHECK_FALSE(c.open_certificate.empty());

    // the classifier is a homomorphism on fresh samples
    const PlonkaSubalgebraModel t(sum, t_member(), "T");
    for (std::uint64_t i = 0; i < 300; ++i) {
        auto rng = trial_rng(99, i);
        const Element x = t.sample(rng), y = t.sample(rng);
        CHECK(t.contains(x));
        const Rational p = random_open_unit(rng, 50);
        CHECK(r.classify(sum.eval(p, x, y)) == r.semilattice.join(r.classify(x), r.classify(y)));
    }
}

TEST_CASE("restriction to a non-subalgebra is rejected") {
    const auto sum = t_presentation();
    const auto full = refined_replica(sum, 7, 500);
    // the two endpoints of the lower segment without anything between them
    const ElementPredicate ends = [](const Element& e) { return e.tag == 0 && e.point[1] != 0 && e.point[1] * e.point[1] == 1; };
    CHECK_THROWS_AS(restrict_replica(sum, ends, full, 7, 500), ReplicaError);
}

TEST_CASE("replica of a polytope is its open-cell lattice") {
    const Polytope square(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    const auto r = refined_replica(single_fiber_sum(square), 7, 500);
    CHECK(r.semilattice.size() == 9);
    CHECK(is_isomorphic(r.semilattice, face_lattice(square).as_semilattice()));
    const Polytope seg(std::vector<Point>{{0}, {1}});
    CHECK(descriptors(refined_replica(single_fiber_sum(seg), 7, 200)) ==
          std::multiset<std::string>{"{0}", "{1}", "]0,1["});
}

TEST_CASE("polytope as a Plonka sum of its faces") {
    const Polytope triangle(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}});
    const auto pp = polytope_as_plonka(triangle, 300, 7);
    CHECK(pp.sum.size() == 7);
    CHECK(pp.report.samples == 300);
    CHECK(pp.report.pass());
    CHECK(pp.report.to_json().at("summary") == "agree=300/300");
    CHECK_FALSE(pp.sum.find_functoriality_violation());
}

TEST_CASE("builtins") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        const auto b = builtin(name);
        CHECK(b.name == name);
        REQUIRE(b.model);
        const auto r = builtin_replica(b, 7, 500);
        if (b.expected_replica) CHECK(is_isomorphic(r.semilattice, *b.expected_replica));
        if (!b.expected_descriptors.empty()) {
            std::vector<std::string> got;
            for (const auto& c : r.classes) got.push_back(c.descriptor);
            CHECK(std::multiset<std::string>(got.begin(), got.end()) ==
                  std::multiset<std::string>(b.expected_descriptors.begin(), b.expected_descriptors.end()));
        }
    }
    CHECK_THROWS_AS(builtin("nope"), Error);
    const auto h = builtin("homomorphism-example");
    CHECK(check_homomorphism(h, 500, 7, Execution::Serial).pass());
    const auto line = builtin("extended-line");
    CHECK(builtin_replica(line).semilattice.size() == 2);
}

TEST_CASE("toy-biology mirrors T under renaming") {
    const auto bio = builtin("toy-biology");
    const auto r = builtin_replica(bio);
    CHECK(is_isomorphic(r.semilattice, t_replica_semilattice()));
}
