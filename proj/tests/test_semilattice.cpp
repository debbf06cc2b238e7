#include "doctest.h"

#include "barycentra/builtins.hpp"
#include "barycentra/laws.hpp"
#include "barycentra/semilattice.hpp"
#include "oracles.hpp"

using namespace barycentra;

namespace {
FiniteSemilattice fork_lattice() {
    return FiniteSemilattice::from_join_table(
        {"a", "b", "c"}, {{"a", "a", "a"}, {"a", "b", "c"}, {"a", "c", "c"}, {"b", "a", "c"}, {"b", "b", "b"},
                          {"b", "c", "c"}, {"c", "a", "c"}, {"c", "b", "c"}, {"c", "c", "c"}});
}
}  // namespace

TEST_CASE("join tables are validated") {
    const auto s = fork_lattice();
    CHECK(s.label(s.join(0, 1)) == "c");
    CHECK(s.leq(0, 2));
    CHECK_FALSE(s.leq(0, 1));
    CHECK(FiniteSemilattice::chain({"0", "1"}).join(0, 1) == 1);

    try {
        FiniteSemilattice::from_join_table({"a", "b"}, {{"a", "a", "a"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "b"}});
        FAIL("expected a commutativity error");
    } catch (const SemilatticeAxiomError& e) {
        CHECK(e.axiom() == "commutativity");
        CHECK(e.witness() == std::vector<std::string>{"a", "b"});
    }
    CHECK_THROWS_AS(FiniteSemilattice::from_join_table({"a", "b"}, {{"a", "a", "a"}}), Error);
    CHECK_THROWS_AS(FiniteSemilattice::from_join_table({"a"}, {{"a", "a", "z"}}), Error);
    // a v a = b breaks idempotence
    CHECK_THROWS_AS(FiniteSemilattice::from_table({"a", "b"}, {{1, 1}, {1, 1}}), SemilatticeAxiomError);
}

TEST_CASE("associativity failures are caught") {
    // a v b = c, b v c = a: a v (b v c) = a but (a v b) v c = c
    std::vector<std::vector<std::size_t>> t{{0, 2, 2}, {2, 1, 0}, {2, 0, 2}};
    try {
        FiniteSemilattice::from_table({"a", "b", "c"}, t);
        FAIL("expected an associativity error");
    } catch (const SemilatticeAxiomError& e) {
        CHECK(e.axiom() == "associativity");
        CHECK(e.witness().size() == 3);
    }
}

TEST_CASE("cover relations generate the order") {
    const auto t = t_replica_semilattice();
    CHECK(t.size() == 5);
    CHECK(t.label(t.join(t.index_of("a"), t.index_of("d"))) == "e");
    CHECK(t.label(t.join(t.index_of("a"), t.index_of("b"))) == "c");
    CHECK_THROWS_AS(FiniteSemilattice::from_covers({"a", "b"}, {}), Error);
    CHECK(is_isomorphic(fork_lattice(), fork_semilattice()));
}

TEST_CASE("iterated semilattice model evaluates every weight to the join") {
    const auto m = as_iterated_barycentric(fork_lattice(), "fork");
    for (const auto& w : default_weight_sample())
        CHECK(m->format(m->apply(w, label_element(0), label_element(1))) == "c");
    const auto r = check_identity(*m, find_law("idempotence"), Strategy::exhaustive());
    CHECK(r.pass);
    const auto chain = as_iterated_barycentric(FiniteSemilattice::chain({"0", "1"}), "chain");
    for (std::uint64_t i = 0; i < 50; ++i) {
        auto rng = trial_rng(1, i);
        CHECK(chain->apply(random_weight(rng), label_element(0), label_element(1)).tag == 1);
    }
}

TEST_CASE("isomorphism search") {
    const auto t = t_replica_semilattice();
    const auto relabelled =
        FiniteSemilattice::from_covers({"p", "q", "r", "s", "u"}, {{"u", "s"}, {"r", "s"}, {"s", "q"}, {"p", "q"}});
    const auto iso = find_isomorphism(t, relabelled);
    REQUIRE(iso);
    CHECK(!find_hom_violation(t, relabelled, *iso));
    CHECK_FALSE(is_isomorphic(t, FiniteSemilattice::chain({"0", "1", "2", "3", "4"})));
    CHECK_FALSE(is_isomorphic(t, fork_lattice()));
}

TEST_CASE("semilattice homomorphisms are validated") {
    const auto chain = FiniteSemilattice::chain({"0", "1"});
    CHECK_NOTHROW(SemilatticeHom(fork_lattice(), chain, {0, 1, 1}));
    CHECK_FALSE(find_hom_violation(fork_lattice(), chain, {0, 1, 1}).has_value());
    // a, b -> 0 forces c = a v b -> 0
    CHECK(find_hom_violation(fork_lattice(), chain, {0, 0, 1}).has_value());
    CHECK(find_hom_violation(fork_lattice(), chain, {1, 0, 0}).has_value());
    CHECK_THROWS_AS(SemilatticeHom(fork_lattice(), chain, {1, 0, 0}), Error);
}

TEST_CASE("DOT export is sorted and stable") {
    const auto dot = to_dot(fork_lattice(), "g");
    CHECK(dot == "digraph \"g\" {\n  rankdir=BT;\n  \"a\";\n  \"b\";\n  \"c\";\n  \"a\" -> \"c\";\n  \"b\" -> \"c\";\n}\n");
}

TEST_CASE("JSON round trip") {
    const auto s = t_replica_semilattice();
    const auto back = FiniteSemilattice::from_json(s.to_json());
    CHECK(back.labels() == s.labels());
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b) CHECK(back.join(a, b) == s.join(a, b));
    CHECK_THROWS_AS(FiniteSemilattice::from_json(nlohmann::json::parse(R"({"elements":["a"]})")), ParseError);
}

TEST_CASE("semilattice counts by size") {
    // unlabelled join-semilattices with n elements
    const std::vector<std::size_t> expected{1, 1, 2, 5, 15};
    for (std::size_t n = 1; n <= 5; ++n) CHECK(oracle::semilattices_of_size(n).size() == expected[n - 1]);
}
