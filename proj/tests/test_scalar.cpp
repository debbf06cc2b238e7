#include "doctest.h"

#include "barycentra/random.hpp"
#include "barycentra/scalar.hpp"

using namespace barycentra;

namespace {
Rational q(const char* s) { return parse_rational(s); }
Vec vec(std::initializer_list<const char*> xs) {
    Vec v;
    for (auto x : xs) v.push_back(q(x));
    return v;
}
}  // namespace

TEST_CASE("rationals parse to canonical form") {
    CHECK(to_string(q("6/8")) == "3/4");
    CHECK(to_string(q("-4/6")) == "-2/3");
    CHECK(to_string(q("4/-6")) == "-2/3");
    CHECK(to_string(q("-2")) == "-2");
    CHECK(to_string(q("+10/5")) == "2");
    CHECK(to_string(q("0/7")) == "0");
    CHECK_THROWS_AS(q("1/0"), ParseError);
    CHECK_THROWS_AS(q("abc"), ParseError);
    CHECK_THROWS_AS(q(""), ParseError);
    CHECK_THROWS_AS(q("1.5"), ParseError);
}

TEST_CASE("parse then print reproduces the reduced form") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        auto rng = trial_rng(11, i);
        const auto num = uniform_int(rng, -500, 500);
        const auto den = uniform_int(rng, 1, 500);
        const Rational expected{Integer(num), Integer(den)};
        const std::string text = std::to_string(num) + "/" + std::to_string(den);
        CHECK(to_string(q(text.c_str())) == to_string(expected));
        CHECK(q(to_string(expected).c_str()) == expected);
    }
}

TEST_CASE("weights lie strictly inside the unit interval") {
    CHECK_THROWS_AS(Weight(Rational(0)), DomainError);
    CHECK_THROWS_AS(Weight(Rational(1)), DomainError);
    CHECK_THROWS_AS(Weight(Rational(3, 2)), DomainError);
    CHECK_THROWS_AS(Weight(Rational(-1, 2)), DomainError);
    CHECK(Weight::parse("1/3").complement().value() == Rational(2, 3));
}

TEST_CASE("weighted mean") {
    CHECK(weighted_mean(Weight::parse("1/2"), vec({"0"}), vec({"1"})) == vec({"1/2"}));
    CHECK(weighted_mean(Weight::parse("1/3"), vec({"0", "0"}), vec({"3", "6"})) == vec({"1", "2"}));
    CHECK(weighted_mean(Weight::parse("1/4"), vec({"1"}), vec({"1"})) == vec({"1"}));
    CHECK_THROWS_AS(weighted_mean(Weight::parse("1/2"), vec({"0"}), vec({"1", "2"})), DimensionMismatch);
}

TEST_CASE("dual product") {
    CHECK(dual_product(Weight::parse("1/2"), Weight::parse("1/3")).value() == Rational(2, 3));
    CHECK(dual_product(Weight::parse("1/2"), Weight::parse("1/2")).value() == Rational(3, 4));
    const Rational r(1, 5), p(1, 5);
    const Rational oracle = 1 - (1 - r) * (1 - p);
    CHECK(oracle == Rational(9, 25));
    CHECK(dual_product(Weight(r), Weight(p)).value() == oracle);
}

TEST_CASE("skew-associativity inner weight") {
    CHECK(skew_assoc_inner_weight(Weight::parse("1/2"), Weight::parse("1/2")).value() == Rational(2, 3));
    CHECK(skew_assoc_inner_weight(Weight::parse("1/3"), Weight::parse("1/2")).value() == Rational(3, 4));
    CHECK(skew_assoc_inner_weight(Weight::parse("2/3"), Weight::parse("1/4")).value() == Rational(1, 3));
}

TEST_CASE("field mean") {
    const FieldElement k(2, 3);
    std::vector<FieldElement> u{{1, 3}, {0, 3}}, v{{0, 3}, {1, 3}};
    const auto r = field_mean(k, u, v);
    CHECK(r[0].residue() == 2);
    CHECK(r[1].residue() == 2);
    CHECK(field_mean(0, FieldVec{4, 1}, FieldVec{2, 2}, 5) == FieldVec{4, 1});
    CHECK(field_mean(1, FieldVec{4, 1}, FieldVec{2, 2}, 5) == FieldVec{2, 2});
    std::vector<FieldElement> w{{1, 5}, {0, 5}};
    CHECK_THROWS_AS(field_mean(k, u, w), DomainError);
    CHECK_THROWS_AS(FieldElement(1, 4), DomainError);
    CHECK(FieldElement(3, 7).inverse() * FieldElement(3, 7) == FieldElement(1, 7));
    CHECK(rational_to_residue(Rational(1, 2), 5) == 3);
    CHECK_THROWS_AS(rational_to_residue(Rational(1, 5), 5), DomainError);
}

TEST_CASE("weight-level identities on random weights") {
    for (std::uint64_t i = 0; i < 500; ++i) {
        auto rng = trial_rng(3, i);
        const Weight r(random_weight(rng)), p(random_weight(rng)), s(random_weight(rng));
        CAPTURE(r.value());
        CAPTURE(p.value());
        CHECK(dual_product(r, p).value() == 1 - (1 - r.value()) * (1 - p.value()));
        CHECK(dual_product(r, p) == dual_product(p, r));
        CHECK(dual_product(dual_product(r, p), s) == dual_product(r, dual_product(p, s)));
        CHECK(skew_assoc_inner_weight(r, p).value() < 1);

        Vec x(2), y(2), z(2);
        for (auto* v : {&x, &y, &z})
            for (auto& c : *v) c = random_rational(rng, 10);
        CHECK(weighted_mean(p, x, y) == weighted_mean(p.complement(), y, x));
        const Vec lhs = weighted_mean(p, weighted_mean(r, x, y), z);
        const Vec rhs = weighted_mean(dual_product(r, p), x, weighted_mean(skew_assoc_inner_weight(r, p), y, z));
        CHECK(lhs == rhs);
    }
}
