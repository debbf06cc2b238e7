#include "doctest.h"

#include "barycentra/affine.hpp"
#include "barycentra/builtins.hpp"
#include "barycentra/convex.hpp"
#include "barycentra/laws.hpp"

using namespace barycentra;

namespace {

const Identity& identity_of(const std::string& name) { return std::get<Identity>(find_law(name).law); }

PolytopeModel segment() { return PolytopeModel(Polytope(std::vector<Point>{{0}, {1}}), "segment"); }

Identity p_equals_r(const char* p, const char* r) {
    auto x = Term::variable("x"), y = Term::variable("y");
    return make_identity(Term::apply(WeightExpr::constant(parse_rational(p)), x, y),
                         Term::apply(WeightExpr::constant(parse_rational(r)), x, y), {}, {"x", "y"});
}

}  // namespace

TEST_CASE("regularity") {
    CHECK(is_regular(identity_of("idempotence")));
    CHECK(is_regular(identity_of("skew-commutativity")));
    CHECK_FALSE(is_regular(identity_of("projection-left")));
    CHECK_FALSE(is_regular(identity_of("projection-right")));
    for (const auto& law : resolve_laws({"barycentric"})) CHECK(is_regular(std::get<Identity>(law.law)));
    auto x = Term::variable("x"), y = Term::variable("y");
    CHECK_FALSE(is_regular(make_identity(Term::apply(WeightExpr::variable("p"), x, y), x, {"p"}, {"x", "y"})));
}

TEST_CASE("catalogue shape") {
    const auto& all = builtin_identities();
    CHECK(std::count_if(all.begin(), all.end(), [](const NamedLaw& l) { return l.is_quasi(); }) == 1);
    CHECK(find_law("cancellativity").is_quasi());
    CHECK(find_law("projection-left").applies == Applicability::Field);
    CHECK(find_law("projection-right").applies == Applicability::Field);
    CHECK_THROWS_AS(find_law("no-such-law"), Error);
    CHECK_THROWS_AS(resolve_laws({"nothing"}), Error);
    const auto bary = resolve_laws({"barycentric", "idempotence"});
    CHECK(bary.size() == 4);
    CHECK(bary.front().name == "idempotence");
}

TEST_CASE("undeclared variables are rejected") {
    auto x = Term::variable("x"), y = Term::variable("y");
    CHECK_THROWS_AS(make_identity(Term::apply(WeightExpr::variable("p"), x, y), x, {}, {"x", "y"}), Error);
    CHECK_THROWS_AS(make_identity(Term::apply(WeightExpr::variable("p"), x, y), x, {"p"}, {"x"}), Error);
}

TEST_CASE("term evaluation") {
    const auto seg = segment();
    auto t = Term::apply(WeightExpr::variable("p"), Term::variable("x"), Term::variable("y"));
    const Element mid = eval_term(t, seg, {{"x", point_element({0})}, {"y", point_element({1})}}, {{"p", Rational(1, 2)}});
    CHECK(mid.point == Vec{Rational(1, 2)});

    const auto fork = as_iterated_barycentric(fork_semilattice(), "fork");
    const Element j = eval_term(t, *fork, {{"x", label_element(0)}, {"y", label_element(1)}}, {{"p", Rational(1, 3)}});
    CHECK(fork->format(j) == "c");

    CHECK_THROWS_AS(eval_term(t, seg, {{"x", point_element({2})}, {"y", point_element({1})}}, {{"p", Rational(1, 2)}}),
                    Error);
    auto bad = Term::apply(WeightExpr::complement(WeightExpr::variable("p")), Term::variable("x"), Term::variable("y"));
    CHECK_THROWS_AS(eval_term(bad, seg, {{"x", point_element({0})}, {"y", point_element({1})}}, {{"p", Rational(1)}}),
                    DomainError);
}

TEST_CASE("composite weights agree with the composed term over GF(5), brute force") {
    const AffineSpaceModel gf5(FiniteVectorSpace(5, 1));
    const auto& id = identity_of("affine-composition");
    for (std::int64_t r = 0; r < 5; ++r)
        for (std::int64_t p = 0; p < 5; ++p)
            for (std::int64_t q = 0; q < 5; ++q)
                for (const auto& x : gf5.elements())
                    for (const auto& y : gf5.elements()) {
                        const WeightAssignment w{{"r", Rational(r)}, {"p", Rational(p)}, {"q", Rational(q)}};
                        const Assignment a{{"x", x}, {"y", y}};
                        const Element lhs = eval_term(id.lhs, gf5, a, w);
                        // (1-r)((1-p)x + py) + r((1-q)x + qy), by hand
                        const std::int64_t direct =
                            mod_reduce((1 - r) * ((1 - p) * x.residues[0] + p * y.residues[0]) +
                                           r * ((1 - q) * x.residues[0] + q * y.residues[0]),
                                       5);
                        CHECK(lhs.residues[0] == direct);
                        CHECK(eval_term(id.rhs, gf5, a, w) == lhs);
                    }
}

TEST_CASE("checks on the segment") {
    const auto seg = segment();
    const auto r = check_identity(seg, find_law("skew-associativity"), Strategy::sampled(1000, 7));
    CHECK(r.pass);
    CHECK(r.trials == 1000);

    const auto fail = check_identity(seg, "p=r", p_equals_r("1/2", "1/3"), Strategy::sampled(200, 7));
    CHECK_FALSE(fail.pass);
    REQUIRE(fail.counterexample);
    CHECK(fail.counterexample->lhs != fail.counterexample->rhs);
    // the endpoints separate the two operations
    const auto direct = eval_term(p_equals_r("1/2", "1/3").lhs, seg, {{"x", point_element({0})}, {"y", point_element({1})}}, {});
    CHECK(direct.point == Vec{Rational(1, 2)});

    CHECK_FALSE(check_identity(seg, find_law("iterated-semilattice"), Strategy::sampled(200, 7)).pass);
    CHECK_THROWS_AS(check_identity(seg, find_law("idempotence"), Strategy::exhaustive()), Error);
}

TEST_CASE("affine laws hold exhaustively on small prime fields") {
    for (auto [p, n] : {std::pair{3, 1}, {3, 2}, {5, 1}}) {
        const AffineSpaceModel m(FiniteVectorSpace(p, n));
        for (const auto& law : resolve_laws({"affine"})) {
            CAPTURE(law.name);
            CAPTURE(m.name());
            CHECK(check_identity(m, law, Strategy::exhaustive()).pass);
        }
        CHECK(check_identity(m, find_law("skew-commutativity"), Strategy::exhaustive()).pass);
    }
}

TEST_CASE("affine laws on GF(5)^2") {
    const AffineSpaceModel m(FiniteVectorSpace(5, 2));
    for (const auto& law : resolve_laws({"affine"})) {
        CAPTURE(law.name);
        const bool big = law.name == "entropicity";
        CHECK(check_identity(m, law, big ? Strategy::sampled(20000, 7) : Strategy::exhaustive()).pass);
    }
}

TEST_CASE("report JSON") {
    const auto seg = segment();
    const auto ok = check_identity(seg, find_law("idempotence"), Strategy::sampled(10, 7)).to_json();
    CHECK(ok.at("law") == "idempotence");
    CHECK(ok.at("model") == "segment");
    CHECK(ok.at("result") == "pass");
    CHECK(ok.at("strategy") == "sampled(10, seed 7)");
    CHECK_FALSE(ok.contains("counterexample"));
    const auto bad = check_identity(seg, "p=r", p_equals_r("1/2", "1/3"), Strategy::sampled(10, 7)).to_json();
    CHECK(bad.at("result") == "fail");
    CHECK(bad.at("counterexample").contains("elements"));
}

TEST_CASE("cancellation witnesses") {
    CHECK_FALSE(find_cancellation_witness(segment(), Rational(1, 2), Strategy::sampled(2000, 7)));

    const auto fork = as_iterated_barycentric(fork_semilattice(), "fork");
    const auto w = find_cancellation_witness(*fork, Rational(1, 2), Strategy::exhaustive());
    REQUIRE(w);
    CHECK(fork->format(w->x) == "a");
    CHECK(fork->format(w->y) == "b");
    CHECK(fork->format(w->z) == "c");

    const auto t = builtin("t-algebra");
    const auto tw = find_cancellation_witness(*t.model, Rational(1, 2), Strategy::sampled(1000, 7));
    REQUIRE(tw);
    CHECK(tw->y != tw->z);
    CHECK(t.model->apply(Rational(1, 2), tw->x, tw->y) == t.model->apply(Rational(1, 2), tw->x, tw->z));
    // the lower segment collapses once it meets the upper one
    CHECK(tw->x.tag == 1);
    CHECK(tw->y.tag == 0);
    CHECK(tw->z.tag == 0);
}

TEST_CASE("quasi-identity check reports the failing conclusion") {
    const auto fork = as_iterated_barycentric(fork_semilattice(), "fork");
    const auto r = check_identity(*fork, find_law("cancellativity"), Strategy::exhaustive());
    CHECK_FALSE(r.pass);
    const auto seg = segment();
    CHECK(check_identity(seg, find_law("cancellativity"), Strategy::sampled(500, 7)).pass);
}
