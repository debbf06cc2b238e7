#include "doctest.h"

#include "barycentra/affine.hpp"
#include "barycentra/laws.hpp"
#include "oracles.hpp"

using namespace barycentra;

namespace {

// Setwise image {(1-k)a + kb : a in A, b in B} as a sorted index list.
std::vector<std::size_t> setwise(const CosetAlgebra& alg, std::int64_t k, const Element& x, const Element& y) {
    const auto& v = alg.space();
    std::set<std::size_t> out;
    for (auto a : alg.points(x))
        for (auto b : alg.points(y)) out.insert(v.index_of(field_mean(k, v.point(a), v.point(b), v.modulus())));
    return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("vector space enumeration") {
    const FiniteVectorSpace v(3, 2);
    CHECK(v.size() == 9);
    CHECK(v.name() == "GF(3)^2");
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v.index_of(v.point(i)) == i);
    CHECK(v.point(1) == FieldVec{0, 1});
    CHECK_THROWS_AS(FiniteVectorSpace(4, 1), DomainError);
    CHECK_THROWS_AS(FiniteVectorSpace(2, 1), DomainError);
    CHECK_THROWS_AS(FiniteVectorSpace(3, 0), Error);
    CHECK_THROWS_AS(FiniteVectorSpace(101, 2), Error);
    CHECK(FiniteVectorSpace::from_json(nlohmann::json::parse(R"({"p":5,"n":1})")) == FiniteVectorSpace(5, 1));
}

TEST_CASE("subspace counts match the span-closure oracle") {
    for (auto [p, n, subs, cosets] : {std::tuple{3, 1, 2, 4}, {3, 2, 6, 22}, {5, 1, 2, 6}, {5, 2, 8, 56}, {3, 3, 28, 0}}) {
        const FiniteVectorSpace v(p, static_cast<std::size_t>(n));
        CAPTURE(v.name());
        const auto all = enumerate_subspaces(v);
        CHECK(all.size() == static_cast<std::size_t>(subs));
        CHECK(oracle::subspaces(v).size() == all.size());
        std::set<std::vector<FieldVec>> distinct;
        for (const auto& u : all) distinct.insert(u.basis);
        CHECK(distinct.size() == all.size());
        if (cosets) {
            CHECK(oracle::coset_count(v) == static_cast<std::size_t>(cosets));
            CHECK(CosetAlgebra(v).elements().size() == static_cast<std::size_t>(cosets));
        }
    }
}

TEST_CASE("subspace joins and labels") {
    const std::int64_t p = 3;
    const auto x = make_subspace({{1, 0}}, p), y = make_subspace({{0, 1}}, p), d = make_subspace({{2, 2}}, p);
    CHECK(subspace_join(x, y, p).dim() == 2);
    CHECK(subspace_join(x, x, p) == x);
    CHECK(d.basis == std::vector<FieldVec>{{1, 1}});
    CHECK(subspace_label(d, 2) == "span{(1,1)}");
    CHECK(subspace_label(make_subspace({}, p), 2) == "0");
    CHECK(subspace_label(subspace_join(x, d, p), 2) == "V");
    CHECK(d.reduce({2, 0}, p) == FieldVec{0, 1});
    CHECK(d.contains({2, 2}, p));
    CHECK_FALSE(d.contains({1, 2}, p));
}

TEST_CASE("affine space model satisfies the affine laws") {
    const AffineSpaceModel m(FiniteVectorSpace(3, 2));
    for (const auto& law : resolve_laws({"affine"})) CHECK(check_identity(m, law, Strategy::exhaustive()).pass);
}

TEST_CASE("coset operations agree with the setwise image") {
    for (auto [p, n] : {std::pair{3, 1}, {3, 2}, {5, 1}}) {
        const CosetAlgebra alg(FiniteVectorSpace(p, static_cast<std::size_t>(n)));
        for (std::int64_t k = 0; k < p; ++k)
            for (const auto& x : alg.elements())
                for (const auto& y : alg.elements()) {
                    const Element r = alg.apply(k, x, y);
                    CHECK(alg.points(r) == setwise(alg, k, x, y));
                }
        CHECK(verify_lifted_operations(alg).pass());
    }
}

TEST_CASE("parallelogram identity and the projection") {
    for (auto [p, n] : {std::pair{3, 1}, {3, 2}, {5, 1}, {5, 2}}) {
        const FiniteVectorSpace v(p, static_cast<std::size_t>(n));
        CHECK(verify_parallelogram_identity(v).pass());
        const CosetAlgebra alg(v);
        for (std::int64_t k = 2; k < p; ++k) CHECK(verify_pi_homomorphism(alg, k).pass());
    }
    const FiniteVectorSpace v(3, 2);
    CHECK(parallelogram({1, 0}, {0, 0}, {0, 1}, 3) == FieldVec{1, 1});
}

TEST_CASE("coset algebra is a Plonka sum of affine spaces") {
    const CosetAlgebra alg(FiniteVectorSpace(3, 2));
    for (std::int64_t k = 2; k < 3; ++k) {
        const auto r = verify_plonka_structure(alg, k);
        CHECK(r.pass());
        CHECK(r.subspaces == 6);
        CHECK(r.cosets == 22);
    }
    std::size_t total = 0;
    for (std::size_t u = 0; u < alg.subspaces().size(); ++u) {
        const auto f = alg.fiber(u);
        total += f.size();
        CHECK(f.size() * static_cast<std::size_t>(std::pow(3, alg.subspaces()[u].dim())) == 9);
        for (auto c : f) CHECK(projection_pi(alg.elements()[c]) == u);
    }
    CHECK(total == 22);
    CHECK_THROWS_AS(verify_plonka_structure(alg, 1), DomainError);
    CHECK_THROWS_AS(verify_replica_is_projective(alg, {0}), DomainError);
}

TEST_CASE("replica of the coset algebra is the subspace lattice") {
    for (auto [p, n] : {std::pair{3, 1}, {3, 2}, {5, 1}, {5, 2}}) {
        const CosetAlgebra alg(FiniteVectorSpace(p, static_cast<std::size_t>(n)));
        std::vector<std::int64_t> weights;
        for (std::int64_t k = 2; k < p; ++k) weights.push_back(k);
        const auto r = verify_replica_is_projective(alg, weights);
        CHECK(r.pass());
        CHECK(r.quotient_is_semilattice);
        CHECK(r.isomorphic_to_subspace_lattice);
        CHECK(is_isomorphic(r.replica, alg.lattice()));
        for (const auto& c : r.certificates) {
            CHECK(c.cancellative);
            CHECK(c.open);
        }
    }
}

TEST_CASE("rational coset family") {
    const auto fam = RationalFamily::from_json(nlohmann::json::parse(R"({
        "ambient_dim": 2,
        "subspaces": [{"basis": []}, {"basis": [[1, 0]]}, {"basis": [[0, 1]]}, {"basis": [[1, 0], [0, 1]]}]})"));
    const auto demo = rational_coset_demo(fam, 300, 7);
    CHECK(demo.pass());
    CHECK(demo.agree == 300);

    const auto open = RationalFamily::from_json(nlohmann::json::parse(R"({
        "ambient_dim": 2, "subspaces": [{"basis": [[1, 0]]}, {"basis": [[0, 1]]}]})"));
    CHECK_THROWS_AS(rational_coset_demo(open), FamilyError);
    CHECK_THROWS_AS(RationalFamily::from_json(nlohmann::json::parse(R"({"ambient_dim": 9, "subspaces": []})")), Error);
}
